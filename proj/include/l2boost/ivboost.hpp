#pragma once

#include <optional>
#include <vector>

#include "l2boost/boosting.hpp"
#include "l2boost/design.hpp"

namespace l2boost {

struct IVConfig {
  BoostConfig boost;
  // Always-included exogenous regressors, projected out of y, d and every
  // instrument column before either stage (equivalent to entering them
  // unpenalized). Absent means intercept-only partialling (demeaning).
  std::optional<Matrix> exog_controls;
  double ci_level = 0.95;
  // If false, first-stage predictions use the raw boosted coefficients
  // rather than the least-squares refit on the selected instruments.
  bool refit_first_stage = true;
};

struct IVResult {
  double alpha_hat = 0.0;
  double se = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double p_value = 1.0;
  std::vector<int> first_stage_support;
  Vector d_hat;            // predicted instrument, partialled scale
  double omega_hat = 0.0;  // E_n[eps^2 d_hat^2]
  double q_hat = 0.0;      // E_n[d_hat^2]
};

// Two-stage least squares with a boosted first stage: the optimal instrument
// is estimated by regressing d on the instrument set with componentwise
// boosting, then alpha solves sum(d_hat * y~) = alpha * sum(d_hat * d~).
IVResult fit_iv(const Vector& y, const Vector& d, const DesignMatrix& Z,
                const IVConfig& cfg);

// Same second stage but with the first-stage instrument set given instead of
// selected; the predicted instrument is the least-squares fit of d on those
// columns. No exogenous controls beyond the intercept.
IVResult fit_iv_fixed(const Vector& y, const Vector& d, const DesignMatrix& Z,
                      const std::vector<int>& instruments,
                      double ci_level = 0.95);

}  // namespace l2boost
