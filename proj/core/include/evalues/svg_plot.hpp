#pragma once

#include <span>
#include <string>

#include "evalues/csv.hpp"

namespace evalues {

enum class PlotKind {
  kCurves,       // learning curves from aggregated rows (episode,agent,mean_metric)
  kFig6Scatter,  // two-panel relative-error scatter from (pair,episode,c,gc,rel_err)
  kHistogram,    // coefficient histogram from (state_bin,coefficient)
};

/// Maps "curves", "fig6", "histogram"; throws std::invalid_argument
/// listing the valid names otherwise.
PlotKind parse_plot_kind(const std::string& name);

struct PlotOptions {
  bool log_abscissa = false;  // curves only: x = log10(1 + episode)
  int width = 880;
  int height = 520;
};

/// Renders the tables into one self-contained SVG document. Multiple
/// tables are concatenated row-wise (curves may span several files).
/// Throws std::runtime_error naming any missing column, and on inputs
/// with no data rows.
std::string render_plot(PlotKind kind, std::span<const CsvTable> tables,
                        const PlotOptions& opts);

/// Reads the CSVs and writes the rendered SVG to `out_path`.
void plot_files(PlotKind kind, std::span<const std::string> csv_paths,
                const std::string& out_path, const PlotOptions& opts);

}  // namespace evalues
