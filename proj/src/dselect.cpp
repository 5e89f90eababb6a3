#include "l2boost/dselect.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "l2boost/errors.hpp"
#include "l2boost/stats.hpp"

namespace l2boost {

double robust_variance(const Vector& nu_hat, const Vector& xi_hat) {
  if (nu_hat.size() != xi_hat.size() || nu_hat.size() == 0)
    throw InvalidInputError("robust_variance: residual vectors must have equal, positive length");
  const double n = static_cast<double>(nu_hat.size());
  const double e_nu2 = nu_hat.squaredNorm() / n;
  if (e_nu2 <= 0.0)
    throw EstimationError("robust_variance: treatment residuals are identically zero");
  const double meat = nu_hat.array().square().cwiseProduct(xi_hat.array().square()).sum() / n;
  return meat / (e_nu2 * e_nu2);
}

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& c, Index p) {
  std::set<int> u(a.begin(), a.end());
  u.insert(b.begin(), b.end());
  u.insert(c.begin(), c.end());
  for (int j : u)
    if (j < 0 || j >= p)
      throw InvalidInputError("control index " + std::to_string(j) + " out of range");
  return {u.begin(), u.end()};
}

Matrix gather_columns(const DesignMatrix& X, const std::vector<int>& cols) {
  Matrix sub(X.rows(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    sub.col(static_cast<Index>(i)) = X.standardized().col(cols[i]);
  return sub;
}

// Final regression of y on (intercept, d, selected controls), intercept
// handled by centering, plus sandwich inference from the supplied treatment
// residuals. xi is df-corrected by sqrt(n / (n - s - 1)).
DoubleSelectionResult final_inference(const Vector& y, const Vector& d,
                                      const DesignMatrix& X,
                                      const std::vector<int>& union_cols,
                                      Vector nu_hat, double ci_level) {
  const Index n = y.size();
  const Index s_hat = static_cast<Index>(union_cols.size());
  if (s_hat + 2 >= n)
    throw EstimationError("too many selected controls: " + std::to_string(s_hat) +
                          " for " + std::to_string(n) + " observations");

  Matrix regressors(n, 1 + s_hat);
  regressors.col(0) = d.array() - d.mean();
  regressors.rightCols(s_hat) = gather_columns(X, union_cols);
  const Vector yc = y.array() - y.mean();
  const Vector coef = ols_solve(regressors, yc);

  DoubleSelectionResult r;
  r.alpha_hat = coef(0);
  r.union_size = s_hat;

  const double df_factor =
      std::sqrt(static_cast<double>(n) / static_cast<double>(n - s_hat - 1));
  r.xi_hat = (yc - regressors * coef) * df_factor;
  r.nu_hat = std::move(nu_hat);

  const double d_scale = regressors.col(0).squaredNorm() / static_cast<double>(n);
  if (r.nu_hat.squaredNorm() / static_cast<double>(n) <=
      1e-12 * std::max(d_scale, 1e-300))
    throw EstimationError(
        "identification failure: treatment is fully explained by the controls");

  r.sigma2_hat = robust_variance(r.nu_hat, r.xi_hat);
  r.se = std::sqrt(r.sigma2_hat / static_cast<double>(n));
  const double z = normal_quantile(1.0 - (1.0 - ci_level) / 2.0);
  r.ci_lower = r.alpha_hat - z * r.se;
  r.ci_upper = r.alpha_hat + z * r.se;
  r.p_value = r.se > 0.0 ? two_sided_p_value(r.alpha_hat / r.se) : 0.0;
  return r;
}

void check_inputs(const Vector& y, const Vector& d, const DesignMatrix& X,
                  const DSConfig& cfg) {
  if (y.size() != X.rows() || d.size() != X.rows())
    throw InvalidInputError("double_select: y, d and X must have matching rows");
  require_finite(y, "outcome");
  require_finite(d, "treatment");
  if (cfg.ci_level <= 0.0 || cfg.ci_level >= 1.0)
    throw InvalidInputError("ci_level must lie strictly between 0 and 1");
}

// Selection coefficients for the auxiliary residual: the refit on the support
// unless the raw boosted fit was requested.
Vector selection_coefficients(const DesignMatrix& X, const Vector& response,
                              const BoostPath& path, bool refit) {
  if (!refit) return path.beta;
  return refit_post_boost(X, response, path.support);
}

}  // namespace

DoubleSelectionResult double_select(const Vector& y, const Vector& d,
                                    const DesignMatrix& X, const DSConfig& cfg) {
  check_inputs(y, d, X, cfg);
  const Index n = y.size();
  const Index p = X.cols();

  std::vector<int> set_d, set_y;
  Vector nu = d.array() - d.mean();
  if (p > 0) {
    const BoostPath path_d = fit_boost(X, d, cfg.boost);
    const BoostPath path_y = fit_boost(X, y, cfg.boost);
    set_d = path_d.support;
    set_y = path_y.support;
    const Vector gamma = selection_coefficients(X, d, path_d, cfg.refit_selection);
    nu -= X.standardized() * gamma;
  }

  const std::vector<int> union_cols = sorted_union(set_d, set_y, cfg.amend, p);
  DoubleSelectionResult r =
      final_inference(y, d, X, union_cols, std::move(nu), cfg.ci_level);
  r.set_d = std::move(set_d);
  r.set_y = std::move(set_y);
  (void)n;
  return r;
}

DoubleSelectionResult naive_select_estimate(const Vector& y, const Vector& d,
                                            const DesignMatrix& X,
                                            const DSConfig& cfg) {
  check_inputs(y, d, X, cfg);
  const Index p = X.cols();

  std::vector<int> set_y;
  if (p > 0) set_y = fit_boost(X, y, cfg.boost).support;
  const std::vector<int> union_cols = sorted_union({}, set_y, cfg.amend, p);

  DoubleSelectionResult r =
      fixed_controls_estimate(y, d, X, union_cols, cfg.ci_level);
  r.set_y = std::move(set_y);
  return r;
}

DoubleSelectionResult fixed_controls_estimate(const Vector& y, const Vector& d,
                                              const DesignMatrix& X,
                                              const std::vector<int>& controls,
                                              double ci_level) {
  if (y.size() != X.rows() || d.size() != X.rows())
    throw InvalidInputError("fixed_controls_estimate: y, d and X must have matching rows");
  require_finite(y, "outcome");
  require_finite(d, "treatment");
  const std::vector<int> cols = sorted_union({}, controls, {}, X.cols());

  // nu is the least-squares residual of d on the same controls, so the
  // sandwich matches textbook robust inference for this regression.
  Vector nu = d.array() - d.mean();
  if (!cols.empty()) {
    const Matrix sub = gather_columns(X, cols);
    nu -= sub * ols_solve(sub, nu);
  }
  return final_inference(y, d, X, cols, std::move(nu), ci_level);
}

}  // namespace l2boost
