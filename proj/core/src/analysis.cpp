#include "evalues/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace evalues {
namespace {

int bin_of(double v, double lo, double hi, int bins) {
  double width = (hi - lo) / bins;
  int idx = static_cast<int>(std::floor((v - lo) / width));
  return std::clamp(idx, 0, bins - 1);
}

}  // namespace

long long VisitHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0LL);
}

VisitHistogram visit_histogram(std::span<const ContinuousState> states,
                               int bins_x, int bins_y, double lo_x,
                               double hi_x, double lo_y, double hi_y) {
  if (bins_x < 1 || bins_y < 1) {
    throw std::invalid_argument("histogram needs at least one bin per axis");
  }
  VisitHistogram hist;
  hist.bins_x = bins_x;
  hist.bins_y = bins_y;
  hist.counts.assign(static_cast<std::size_t>(bins_x) * bins_y, 0);
  accumulate_histogram(hist, states, lo_x, hi_x, lo_y, hi_y);
  return hist;
}

void accumulate_histogram(VisitHistogram& hist,
                          std::span<const ContinuousState> states, double lo_x,
                          double hi_x, double lo_y, double hi_y) {
  for (const auto& s : states) {
    int ix = bin_of(s.position, lo_x, hi_x, hist.bins_x);
    int iy = bin_of(s.velocity, lo_y, hi_y, hist.bins_y);
    ++hist.counts[hist.index(ix, iy)];
  }
}

std::vector<double> ce_map(const LogisticEHead& head, const TileCoder& coder,
                           int bins_x, int bins_y, double alpha, double lo_x,
                           double hi_x, double lo_y, double hi_y) {
  if (bins_x < 1 || bins_y < 1) {
    throw std::invalid_argument("map needs at least one bin per axis");
  }
  std::vector<double> grid(static_cast<std::size_t>(bins_x) * bins_y, 0.0);
  double width_x = (hi_x - lo_x) / bins_x;
  double width_y = (hi_y - lo_y) / bins_y;
  for (int ix = 0; ix < bins_x; ++ix) {
    for (int iy = 0; iy < bins_y; ++iy) {
      ContinuousState center{lo_x + (ix + 0.5) * width_x,
                             lo_y + (iy + 0.5) * width_y};
      double sum = 0.0;
      for (int a = 0; a < coder.num_actions(); ++a) {
        double e = e_predict(head, coder.features(center, ActionId{a}));
        sum += generalized_counter_value(e, alpha);
      }
      grid[static_cast<std::size_t>(ix) * bins_y + iy] = sum;
    }
  }
  return grid;
}

std::optional<double> pearson_correlation(std::span<const double> x,
                                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("correlation inputs differ in length");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("correlation needs at least two points");
  }
  double n = static_cast<double>(x.size());
  double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mean_x;
    double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

void append_convergence_rows(std::vector<PairTraceRow>& rows,
                             const TabularMdp& mdp, const OptimalSolution& sol,
                             const ValueTable& q, const ExplorationTable& e,
                             const VisitCounter& c, int episode) {
  for (int s = 0; s < mdp.num_states(); ++s) {
    StateId sid{s};
    if (mdp.is_terminal(sid)) continue;
    for (int a = 0; a < mdp.valid_actions(sid); ++a) {
      ActionId aid{a};
      double q_star = sol.q_star_at(sid, aid);
      if (q_star == 0.0) continue;
      PairTraceRow row;
      row.pair = mdp.pair_index(sid, aid);
      row.episode = episode;
      row.c = c.at(sid, aid);
      row.gc = generalized_counter(e, sid, aid);
      row.rel_err = std::abs(q.at(sid, aid) - q_star) / std::abs(q_star);
      rows.push_back(row);
    }
  }
}

std::vector<int> zero_qstar_pairs(const TabularMdp& mdp,
                                  const OptimalSolution& sol) {
  std::vector<int> out;
  for (int s = 0; s < mdp.num_states(); ++s) {
    StateId sid{s};
    if (mdp.is_terminal(sid)) continue;
    for (int a = 0; a < mdp.valid_actions(sid); ++a) {
      if (sol.q_star_at(sid, ActionId{a}) == 0.0) {
        out.push_back(mdp.pair_index(sid, ActionId{a}));
      }
    }
  }
  return out;
}

BinnedDispersion binned_cv(std::span<const double> key,
                           std::span<const double> values,
                           std::span<const int> pair_ids, int num_bins) {
  if (key.size() != values.size() || key.size() != pair_ids.size()) {
    throw std::invalid_argument("dispersion inputs differ in length");
  }
  if (num_bins < 1) throw std::invalid_argument("need at least one bin");
  BinnedDispersion out;
  if (key.empty()) return out;

  std::vector<double> t(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) t[i] = std::log10(1.0 + key[i]);
  double lo = *std::min_element(t.begin(), t.end());
  double hi = *std::max_element(t.begin(), t.end());
  if (hi <= lo) hi = lo + 1.0;

  std::vector<std::vector<std::size_t>> members(
      static_cast<std::size_t>(num_bins));
  for (std::size_t i = 0; i < t.size(); ++i) {
    members[static_cast<std::size_t>(bin_of(t[i], lo, hi, num_bins))]
        .push_back(i);
  }

  double cv_sum = 0.0;
  int used = 0;
  for (const auto& idxs : members) {
    if (idxs.size() < 5) continue;
    std::set<int> pairs;
    double mean = 0.0;
    for (std::size_t i : idxs) {
      pairs.insert(pair_ids[i]);
      mean += values[i];
    }
    if (pairs.size() < 2) continue;
    mean /= static_cast<double>(idxs.size());
    if (!(mean > 1e-9)) continue;
    double var = 0.0;
    for (std::size_t i : idxs) {
      double d = values[i] - mean;
      var += d * d;
    }
    var /= static_cast<double>(idxs.size());
    cv_sum += std::sqrt(var) / mean;
    ++used;
  }
  if (used > 0) out.mean_cv = cv_sum / used;
  out.bins_used = used;
  return out;
}

}  // namespace evalues
