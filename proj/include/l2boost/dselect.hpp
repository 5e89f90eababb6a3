#pragma once

#include <vector>

#include "l2boost/boosting.hpp"
#include "l2boost/design.hpp"

namespace l2boost {

struct DSConfig {
  // Shared by both selection regressions.
  BoostConfig boost;
  // Controls forced into the final regression regardless of selection.
  std::vector<int> amend;
  double ci_level = 0.95;
  // If false, the auxiliary residual nu uses the raw boosted coefficients
  // instead of the least-squares refit on the selected set.
  bool refit_selection = true;
};

struct DoubleSelectionResult {
  double alpha_hat = 0.0;
  double se = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double p_value = 1.0;
  std::vector<int> set_d;  // selected in the treatment equation
  std::vector<int> set_y;  // selected in the outcome equation
  Index union_size = 0;    // controls entering the final regression
  Vector xi_hat;           // df-corrected outcome residuals
  Vector nu_hat;           // treatment residuals
  double sigma2_hat = 0.0;
};

// Plug-in sandwich [E nu^2]^-1 E[nu^2 xi^2] [E nu^2]^-1.
double robust_variance(const Vector& nu_hat, const Vector& xi_hat);

// Treatment-effect estimate that is robust to moderate selection mistakes:
// select controls for the treatment equation and for the outcome equation,
// then regress y on (intercept, d, union of both selections plus `amend`).
DoubleSelectionResult double_select(const Vector& y, const Vector& d,
                                    const DesignMatrix& X, const DSConfig& cfg);

// Single-selection baseline: controls chosen from the outcome equation only.
// Kept for comparison; its inference is not protected against selection error.
DoubleSelectionResult naive_select_estimate(const Vector& y, const Vector& d,
                                            const DesignMatrix& X,
                                            const DSConfig& cfg);

// OLS of y on (intercept, d, the given controls) with sandwich inference,
// no selection. The treatment residual is taken against the same controls.
DoubleSelectionResult fixed_controls_estimate(const Vector& y, const Vector& d,
                                              const DesignMatrix& X,
                                              const std::vector<int>& controls,
                                              double ci_level = 0.95);

}  // namespace l2boost
