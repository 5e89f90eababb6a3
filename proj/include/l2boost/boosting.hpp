#pragma once

#include <utility>
#include <vector>

#include "l2boost/design.hpp"
#include "l2boost/numerics.hpp"

namespace l2boost {

enum class BoostVariant { classic, orthogonal };
enum class StopReason { threshold, max_iter };

struct BoostConfig {
  BoostVariant variant = BoostVariant::classic;
  // 0 means auto: min(n, p, 200).
  Index max_iter = 0;
  // Relative-improvement threshold tau: stop once
  //   rss_prev - rss_new <= tau * rss_prev.
  // tau = 0 disables early stopping (run to max_iter).
  double stop_threshold = 1e-3;
  // Noise gate: stop once max_j |<U, x_j>_n| falls to or below
  //   gate_scale * sigma_hat * sqrt(log(2p / alpha_k) / n),
  // sigma_hat taken from the current residuals. Active only when
  // stop_threshold > 0. The gate may fire before the first step, leaving the
  // selection empty. The level follows an alpha-investing schedule,
  //   alpha_k = min(gate_alpha * (1 + k), 0.5)  with k = |support| so far:
  // every discovery buys later candidates a slightly easier test, which lets
  // long selection paths on correlated designs run to completion while an
  // empty path keeps the strict initial level.
  double gate_scale = 1.4;
  double gate_alpha = 0.05;
  // Greedy paths on correlated designs dip under the gate transiently while
  // real signal remains. A tripped gate therefore allows up to gate_patience
  // further steps; if the correlation never climbs back above the gate the
  // tentative steps are rolled back to the trip point.
  Index gate_patience = 40;
  // Take at least this many steps before any stopping rule applies (used by
  // consumers that cannot work with an empty selection).
  Index min_select = 0;
  // Fraction of the componentwise update applied per step (1 = full step).
  double step_scale = 1.0;

  Index effective_max_iter(Index n, Index p) const;
};

struct BoostPath {
  // Column index chosen at each iteration.
  std::vector<int> selected;
  // Update coefficient at each iteration: the componentwise least-squares
  // coefficient (classic) or the residual covariance with the chosen column
  // at selection time (orthogonal).
  std::vector<double> steps;
  // rss[0] is the squared norm of the centered response; rss[m] the residual
  // sum of squares after iteration m. Non-increasing.
  std::vector<double> rss;
  // Final coefficients on the standardized scale.
  Vector beta;
  // Distinct selected columns, ascending.
  std::vector<int> support;
  StopReason stopped_reason = StopReason::max_iter;
  double y_mean = 0.0;

  Index iterations() const { return static_cast<Index>(selected.size()); }
};

// True once the relative fit improvement is at or below cfg.stop_threshold.
bool should_stop(double rss_prev, double rss_new, const BoostConfig& cfg);

// Componentwise least-squares boosting of y on the standardized columns of X.
// classic: repeated single-coordinate updates toward the residual's best
// column. orthogonal: fitted values are the exact least-squares projection
// onto everything selected so far and no column is selected twice.
// y is centered internally; the mean is recorded in the path.
BoostPath fit_boost(const DesignMatrix& X, const Vector& y, const BoostConfig& cfg);

// Least-squares refit restricted to `support`; zero outside it.
// Coefficients are on the standardized scale of X.
Vector refit_post_boost(const DesignMatrix& X, const Vector& y,
                        const std::vector<int>& support);

// Map standardized-scale coefficients back to the original units of X.
// Returns (coefficients, intercept).
std::pair<Vector, double> destandardize(const Vector& beta_std,
                                        const DesignMatrix& X, double y_mean);

}  // namespace l2boost
