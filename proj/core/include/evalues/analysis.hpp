#pragma once

#include <optional>
#include <span>
#include <vector>

#include "evalues/environments.hpp"
#include "evalues/linear_heads.hpp"
#include "evalues/mdp.hpp"
#include "evalues/oracle.hpp"
#include "evalues/tables.hpp"
#include "evalues/tile_coding.hpp"

namespace evalues {

/// 2-D state-visit counts over a bounded box. Bin edges are uniform;
/// values on an interior edge fall into the higher bin, the top edge into
/// the last bin.
struct VisitHistogram {
  int bins_x = 0;
  int bins_y = 0;
  std::vector<long long> counts;  // row-major [ix * bins_y + iy]

  long long at(int ix, int iy) const { return counts[index(ix, iy)]; }
  long long total() const;
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * bins_y + iy;
  }
};

VisitHistogram visit_histogram(std::span<const ContinuousState> states,
                               int bins_x, int bins_y, double lo_x,
                               double hi_x, double lo_y, double hi_y);

/// Adds states into an existing histogram (same binning rules).
void accumulate_histogram(VisitHistogram& hist,
                          std::span<const ContinuousState> states, double lo_x,
                          double hi_x, double lo_y, double hi_y);

/// Per-bin aggregated generalized counter read off the E head: for each
/// bin-center state, sum of log_{1-alpha} e(s, a) over all actions.
/// Row-major [ix * bins_y + iy], same layout as VisitHistogram.
std::vector<double> ce_map(const LogisticEHead& head, const TileCoder& coder,
                           int bins_x, int bins_y, double alpha, double lo_x,
                           double hi_x, double lo_y, double hi_y);

/// Pearson coefficient; std::nullopt when either series has zero variance.
/// Throws std::invalid_argument on length mismatch or length < 2.
std::optional<double> pearson_correlation(std::span<const double> x,
                                          std::span<const double> y);

/// One record of learning progress for a tracked pair: raw and generalized
/// visit counters against relative Q error, at an episode boundary.
struct PairTraceRow {
  int pair = 0;
  int episode = 0;
  long long c = 0;
  double gc = 0.0;
  double rel_err = 0.0;
};

/// Appends one row per tracked pair (non-terminal, valid, q_star != 0) for
/// this episode. Pairs with q_star = 0 are skipped; collect them once with
/// zero_qstar_pairs for reporting.
void append_convergence_rows(std::vector<PairTraceRow>& rows,
                             const TabularMdp& mdp, const OptimalSolution& sol,
                             const ValueTable& q, const ExplorationTable& e,
                             const VisitCounter& c, int episode);

std::vector<int> zero_qstar_pairs(const TabularMdp& mdp,
                                  const OptimalSolution& sol);

/// Mean per-bin coefficient of variation of `values`, binned by
/// log10(1 + key) into `num_bins` uniform bins. A bin contributes only
/// with >= 5 rows from >= 2 distinct pairs and mean > 1e-9, so that the
/// dispersion compares pairs rather than noise.
struct BinnedDispersion {
  double mean_cv = 0.0;
  int bins_used = 0;
};

BinnedDispersion binned_cv(std::span<const double> key,
                           std::span<const double> values,
                           std::span<const int> pair_ids, int num_bins);

}  // namespace evalues
