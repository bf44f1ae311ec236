#include "evalues/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace evalues {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Maps data values into pixel coordinates of one plot panel.
struct Scale {
  double lo = 0.0, hi = 1.0;
  double px_lo = 0.0, px_hi = 1.0;

  double operator()(double v) const {
    double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return px_lo + t * (px_hi - px_lo);
  }
};

Scale make_scale(double lo, double hi, double px_lo, double px_hi) {
  if (hi <= lo) {
    double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  return Scale{lo, hi, px_lo, px_hi};
}

void draw_frame(std::ostringstream& svg, double x0, double y0, double x1,
                double y1, const Scale& sx, const Scale& sy,
                const std::string& x_label, const std::string& y_label) {
  svg << "<rect x='" << fmt(x0) << "' y='" << fmt(y1) << "' width='"
      << fmt(x1 - x0) << "' height='" << fmt(y0 - y1)
      << "' fill='none' stroke='#333' stroke-width='1'/>\n";
  for (int i = 0; i <= 4; ++i) {
    double t = i / 4.0;
    double vx = sx.lo + t * (sx.hi - sx.lo);
    double px = sx(vx);
    svg << "<line x1='" << fmt(px) << "' y1='" << fmt(y0) << "' x2='"
        << fmt(px) << "' y2='" << fmt(y0 + 4) << "' stroke='#333'/>\n"
        << "<text x='" << fmt(px) << "' y='" << fmt(y0 + 16)
        << "' font-size='10' text-anchor='middle' fill='#333'>" << fmt(vx)
        << "</text>\n";
    double vy = sy.lo + t * (sy.hi - sy.lo);
    double py = sy(vy);
    svg << "<line x1='" << fmt(x0 - 4) << "' y1='" << fmt(py) << "' x2='"
        << fmt(x0) << "' y2='" << fmt(py) << "' stroke='#333'/>\n"
        << "<text x='" << fmt(x0 - 6) << "' y='" << fmt(py + 3)
        << "' font-size='10' text-anchor='end' fill='#333'>" << fmt(vy)
        << "</text>\n";
  }
  svg << "<text x='" << fmt((x0 + x1) / 2) << "' y='" << fmt(y0 + 32)
      << "' font-size='12' text-anchor='middle' fill='#333'>" << x_label
      << "</text>\n";
  svg << "<text x='" << fmt(x0 - 44) << "' y='" << fmt((y0 + y1) / 2)
      << "' font-size='12' text-anchor='middle' fill='#333' transform='rotate(-90 "
      << fmt(x0 - 44) << " " << fmt((y0 + y1) / 2) << ")'>" << y_label
      << "</text>\n";
}

std::string svg_header(int width, int height) {
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "' viewBox='0 0 " << width << " " << height
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  return svg.str();
}

void require_rows(const CsvTable& table) {
  if (table.rows.empty()) {
    throw std::runtime_error("csv has a header but no data rows");
  }
}

std::string render_curves(std::span<const CsvTable> tables,
                          const PlotOptions& opts) {
  // agent -> series of (episode, mean_metric), insertion-ordered.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& table : tables) {
    require_rows(table);
    std::size_t ce = table.column("episode");
    std::size_t ca = table.column("agent");
    std::size_t cm = table.column("mean_metric");
    for (const auto& row : table.rows) {
      const std::string& agent = row[ca];
      if (!series.count(agent)) order.push_back(agent);
      double x = parse_double(row[ce]);
      if (opts.log_abscissa) x = std::log10(1.0 + x);
      series[agent].emplace_back(x, parse_double(row[cm]));
    }
  }

  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool first = true;
  for (const auto& [agent, pts] : series) {
    for (const auto& [x, y] : pts) {
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }

  double left = 64, right = opts.width - 16, top = 20, bottom = opts.height - 44;
  Scale sx = make_scale(x_lo, x_hi, left, right);
  Scale sy = make_scale(y_lo, y_hi, bottom, top);

  std::ostringstream svg;
  svg << svg_header(opts.width, opts.height);
  draw_frame(svg, left, bottom, right, top, sx, sy,
             opts.log_abscissa ? "log10(1 + episode)" : "episode",
             "mean metric");
  int color = 0;
  for (const auto& agent : order) {
    const auto& pts = series[agent];
    svg << "<polyline fill='none' stroke='" << kPalette[color % kPaletteSize]
        << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : pts) svg << fmt(sx(x)) << "," << fmt(sy(y)) << " ";
    svg << "'/>\n";
    double ly = top + 14 + 14 * color;
    svg << "<rect x='" << fmt(left + 8) << "' y='" << fmt(ly - 8)
        << "' width='10' height='10' fill='" << kPalette[color % kPaletteSize]
        << "'/>\n<text x='" << fmt(left + 22) << "' y='" << fmt(ly + 1)
        << "' font-size='11' fill='#333'>" << agent << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_fig6(std::span<const CsvTable> tables,
                        const PlotOptions& opts) {
  std::vector<double> c, gc, err;
  for (const auto& table : tables) {
    require_rows(table);
    std::size_t cc = table.column("c");
    std::size_t cg = table.column("gc");
    std::size_t cr = table.column("rel_err");
    table.column("pair");
    table.column("episode");
    for (const auto& row : table.rows) {
      c.push_back(std::log10(1.0 + parse_double(row[cc])));
      gc.push_back(std::log10(1.0 + parse_double(row[cg])));
      err.push_back(parse_double(row[cr]));
    }
  }

  auto minmax = [](const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::pair<double, double>(*lo, *hi);
  };
  auto [e_lo, e_hi] = minmax(err);

  std::ostringstream svg;
  svg << svg_header(opts.width, opts.height);
  double mid = opts.width / 2.0;
  double panels[2][2] = {{64, mid - 16}, {mid + 56, opts.width - 16.0}};
  const std::vector<double>* keys[2] = {&c, &gc};
  const char* labels[2] = {"log10(1 + raw counter)",
                           "log10(1 + generalized counter)"};
  for (int p = 0; p < 2; ++p) {
    auto [k_lo, k_hi] = minmax(*keys[p]);
    double top = 20, bottom = opts.height - 44;
    Scale sx = make_scale(k_lo, k_hi, panels[p][0], panels[p][1]);
    Scale sy = make_scale(e_lo, e_hi, bottom, top);
    draw_frame(svg, panels[p][0], bottom, panels[p][1], top, sx, sy, labels[p],
               p == 0 ? "relative error" : "");
    const auto& key = *keys[p];
    for (std::size_t i = 0; i < key.size(); ++i) {
      svg << "<circle cx='" << fmt(sx(key[i])) << "' cy='" << fmt(sy(err[i]))
          << "' r='1.5' fill='" << kPalette[p] << "' fill-opacity='0.5'/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_histogram(std::span<const CsvTable> tables,
                             const PlotOptions& opts) {
  std::vector<double> coeffs;
  for (const auto& table : tables) {
    require_rows(table);
    std::size_t cc = table.column("coefficient");
    table.column("state_bin");
    for (const auto& row : table.rows) {
      coeffs.push_back(parse_double(row[cc]));
    }
  }

  constexpr int kBins = 20;
  std::vector<int> bins(kBins, 0);
  for (double v : coeffs) {
    int b = static_cast<int>(std::floor((v + 1.0) / 2.0 * kBins));
    ++bins[std::clamp(b, 0, kBins - 1)];
  }
  int peak = *std::max_element(bins.begin(), bins.end());

  double left = 64, right = opts.width - 16, top = 20, bottom = opts.height - 44;
  Scale sx = make_scale(-1.0, 1.0, left, right);
  Scale sy = make_scale(0.0, static_cast<double>(peak), bottom, top);

  std::ostringstream svg;
  svg << svg_header(opts.width, opts.height);
  draw_frame(svg, left, bottom, right, top, sx, sy, "correlation coefficient",
             "state bins");
  double bar = (right - left) / kBins;
  for (int b = 0; b < kBins; ++b) {
    double h = bottom - sy(bins[b]);
    svg << "<rect x='" << fmt(left + b * bar + 1) << "' y='" << fmt(sy(bins[b]))
        << "' width='" << fmt(bar - 2) << "' height='" << fmt(h)
        << "' fill='" << kPalette[0] << "'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "curves") return PlotKind::kCurves;
  if (name == "fig6") return PlotKind::kFig6Scatter;
  if (name == "histogram") return PlotKind::kHistogram;
  throw std::invalid_argument(
      "unknown plot kind '" + name + "'; valid kinds are: curves fig6 histogram");
}

std::string render_plot(PlotKind kind, std::span<const CsvTable> tables,
                        const PlotOptions& opts) {
  if (tables.empty()) {
    throw std::runtime_error("no csv inputs to plot");
  }
  switch (kind) {
    case PlotKind::kCurves:
      return render_curves(tables, opts);
    case PlotKind::kFig6Scatter:
      return render_fig6(tables, opts);
    case PlotKind::kHistogram:
      return render_histogram(tables, opts);
  }
  throw std::logic_error("unknown plot kind");
}

void plot_files(PlotKind kind, std::span<const std::string> csv_paths,
                const std::string& out_path, const PlotOptions& opts) {
  std::vector<CsvTable> tables;
  tables.reserve(csv_paths.size());
  for (const auto& path : csv_paths) tables.push_back(read_csv_file(path));
  std::string svg = render_plot(kind, tables, opts);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write svg file: " + out_path);
  out << svg;
}

}  // namespace evalues
