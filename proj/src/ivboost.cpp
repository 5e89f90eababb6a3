#include "l2boost/ivboost.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "l2boost/errors.hpp"
#include "l2boost/stats.hpp"

namespace l2boost {

namespace {

// Residual after projecting out an intercept and, when present, the centered
// exogenous controls.
Vector partial_out(const Vector& v, const std::optional<Matrix>& controls) {
  Vector r = v.array() - v.mean();
  if (controls && controls->cols() > 0) {
    const Matrix wc = controls->rowwise() - controls->colwise().mean();
    r -= wc * ols_solve(wc, r);
  }
  return r;
}

// Second stage shared by the boosted and fixed-instrument paths. y_t and d_t
// are already partialled; d_hat is the predicted instrument on that scale.
IVResult second_stage(const Vector& y_t, const Vector& d_t, Vector d_hat,
                      std::vector<int> support, double ci_level) {
  if (support.empty())
    throw EstimationError("weak instruments: first-stage selection is empty");

  IVResult r;
  r.first_stage_support = std::move(support);

  const double nn = static_cast<double>(y_t.size());
  r.q_hat = d_hat.squaredNorm() / nn;
  if (r.q_hat < 1e-12)
    throw EstimationError("degenerate instrument: predicted first stage is numerically zero");

  const double denom = d_hat.dot(d_t);
  if (std::abs(denom) < 1e-12 * nn * std::max(1.0, r.q_hat))
    throw EstimationError("degenerate instrument: predicted and observed treatment are orthogonal");

  r.alpha_hat = d_hat.dot(y_t) / denom;
  const Vector eps = y_t - d_t * r.alpha_hat;
  r.omega_hat = eps.array().square().cwiseProduct(d_hat.array().square()).sum() / nn;
  r.se = std::sqrt(r.omega_hat / (r.q_hat * r.q_hat) / nn);
  const double z = normal_quantile(1.0 - (1.0 - ci_level) / 2.0);
  r.ci_lower = r.alpha_hat - z * r.se;
  r.ci_upper = r.alpha_hat + z * r.se;
  r.p_value = r.se > 0.0 ? two_sided_p_value(r.alpha_hat / r.se) : 0.0;
  r.d_hat = std::move(d_hat);
  return r;
}

}  // namespace

IVResult fit_iv(const Vector& y, const Vector& d, const DesignMatrix& Z,
                const IVConfig& cfg) {
  const Index n = Z.rows();
  if (y.size() != n || d.size() != n)
    throw InvalidInputError("fit_iv: y, d and Z must have matching rows");
  require_finite(y, "outcome");
  require_finite(d, "endogenous variable");
  if (cfg.exog_controls && cfg.exog_controls->rows() != n)
    throw InvalidInputError("fit_iv: exogenous controls row count mismatch");
  if (cfg.ci_level <= 0.0 || cfg.ci_level >= 1.0)
    throw InvalidInputError("ci_level must lie strictly between 0 and 1");

  const Vector y_t = partial_out(y, cfg.exog_controls);
  const Vector d_t = partial_out(d, cfg.exog_controls);

  // Instrument relevance requires a non-empty first stage, so the selection
  // always takes at least one step.
  BoostConfig stage1 = cfg.boost;
  stage1.min_select = std::max<Index>(stage1.min_select, 1);

  const bool has_controls = cfg.exog_controls && cfg.exog_controls->cols() > 0;
  if (!has_controls) {
    const BoostPath path = fit_boost(Z, d, stage1);
    const Vector gamma = cfg.refit_first_stage
                             ? refit_post_boost(Z, d, path.support)
                             : path.beta;
    return second_stage(y_t, d_t, Z.standardized() * gamma, path.support,
                        cfg.ci_level);
  }

  Matrix z_res(n, Z.cols());
  for (Index j = 0; j < Z.cols(); ++j)
    z_res.col(j) = partial_out(Z.raw().col(j), cfg.exog_controls);
  const DesignMatrix Zp(std::move(z_res));
  const BoostPath path = fit_boost(Zp, d_t, stage1);
  const Vector gamma = cfg.refit_first_stage
                           ? refit_post_boost(Zp, d_t, path.support)
                           : path.beta;
  return second_stage(y_t, d_t, Zp.standardized() * gamma, path.support,
                      cfg.ci_level);
}

IVResult fit_iv_fixed(const Vector& y, const Vector& d, const DesignMatrix& Z,
                      const std::vector<int>& instruments, double ci_level) {
  const Index n = Z.rows();
  if (y.size() != n || d.size() != n)
    throw InvalidInputError("fit_iv_fixed: y, d and Z must have matching rows");
  require_finite(y, "outcome");
  require_finite(d, "endogenous variable");

  const Vector y_t = y.array() - y.mean();
  const Vector d_t = d.array() - d.mean();
  const Vector gamma = refit_post_boost(Z, d, instruments);
  return second_stage(y_t, d_t, Z.standardized() * gamma, instruments, ci_level);
}

}  // namespace l2boost
