#include "l2boost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "l2boost/errors.hpp"

namespace l2boost {

Index BoostConfig::effective_max_iter(Index n, Index p) const {
  if (max_iter > 0) return max_iter;
  return std::min({n, p, Index{200}});
}

bool should_stop(double rss_prev, double rss_new, const BoostConfig& cfg) {
  return (rss_prev - rss_new) <= cfg.stop_threshold * rss_prev;
}

namespace {

// argmax_j |cov_j| over candidates, lowest index on ties.
Index argmax_abs(const Vector& cov, const std::vector<bool>* excluded) {
  Index best = -1;
  double best_val = -1.0;
  for (Index j = 0; j < cov.size(); ++j) {
    if (excluded && (*excluded)[static_cast<std::size_t>(j)]) continue;
    const double a = std::abs(cov(j));
    if (a > best_val) {
      best_val = a;
      best = j;
    }
  }
  return best;
}

}  // namespace

BoostPath fit_boost(const DesignMatrix& X, const Vector& y, const BoostConfig& cfg) {
  const Index n = X.rows();
  const Index p = X.cols();
  if (p == 0) throw InvalidInputError("fit_boost: design has no columns");
  if (y.size() != n)
    throw InvalidInputError("fit_boost: response length does not match design");
  require_finite(y, "fit_boost response");
  if (cfg.step_scale <= 0.0 || cfg.step_scale > 1.0)
    throw InvalidInputError("fit_boost: step_scale must lie in (0, 1]");

  const Matrix& Xs = X.standardized();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Empirical second moments are 1 by construction; keep the exact values so
  // the componentwise coefficient is a true univariate least-squares fit.
  Vector second_moment(p);
  for (Index j = 0; j < p; ++j)
    second_moment(j) = Xs.col(j).squaredNorm() * inv_n;

  BoostPath path;
  path.y_mean = y.mean();
  Vector u = y.array() - path.y_mean;
  const double rss0 = u.squaredNorm();
  path.rss.push_back(rss0);
  path.beta = Vector::Zero(p);

  const Index m_stop = cfg.effective_max_iter(n, p);
  const bool orthogonal = cfg.variant == BoostVariant::orthogonal;
  const bool gate_active = cfg.stop_threshold > 0.0 && cfg.gate_scale > 0.0;
  const double gate_base =
      std::sqrt(std::log(2.0 * static_cast<double>(p) / cfg.gate_alpha) * inv_n);

  std::vector<bool> taken(static_cast<std::size_t>(p), false);
  Matrix ortho_basis;  // orthonormal columns spanning the selected set
  if (orthogonal) ortho_basis.resize(n, std::min(m_stop, p));

  // Gate-trip bookkeeping: steps taken after a trip are tentative and are
  // rolled back unless the correlation climbs back above the gate.
  Index pending_len = -1;
  Vector u_snapshot;
  Vector beta_snapshot;
  const auto rollback = [&]() {
    if (pending_len < 0) return;
    path.selected.resize(static_cast<std::size_t>(pending_len));
    path.steps.resize(static_cast<std::size_t>(pending_len));
    path.rss.resize(static_cast<std::size_t>(pending_len) + 1);
    u = u_snapshot;
    if (!orthogonal) path.beta = beta_snapshot;
    std::fill(taken.begin(), taken.end(), false);
    for (int j : path.selected) taken[static_cast<std::size_t>(j)] = true;
  };

  path.stopped_reason = StopReason::max_iter;
  for (Index m = 0; m < m_stop; ++m) {
    if (orthogonal && static_cast<Index>(path.selected.size()) == p) {
      path.stopped_reason = StopReason::threshold;
      break;
    }

    Vector cov = (Xs.transpose() * u) * inv_n;
    const Index jm = argmax_abs(cov, orthogonal ? &taken : nullptr);
    if (jm < 0 || cov(jm) == 0.0) {
      // No candidate can move the fit.
      rollback();
      path.stopped_reason = StopReason::threshold;
      break;
    }

    const bool forced = m < cfg.min_select;

    if (gate_active && !forced) {
      const double sigma_hat = std::sqrt(path.rss.back() * inv_n);
      const bool tripped =
          std::abs(cov(jm)) <= cfg.gate_scale * sigma_hat * gate_base;
      if (tripped && pending_len < 0) {
        pending_len = static_cast<Index>(path.selected.size());
        u_snapshot = u;
        if (!orthogonal) beta_snapshot = path.beta;
      } else if (!tripped) {
        pending_len = -1;
      }
      if (pending_len >= 0 &&
          static_cast<Index>(path.selected.size()) - pending_len >=
              cfg.gate_patience) {
        rollback();
        path.stopped_reason = StopReason::threshold;
        break;
      }
    }

    const double rss_prev = path.rss.back();
    double rss_new = rss_prev;
    if (!orthogonal) {
      const double gamma = cfg.step_scale * cov(jm) / second_moment(jm);
      path.beta(jm) += gamma;
      u -= gamma * Xs.col(jm);
      rss_new = u.squaredNorm();
      path.steps.push_back(gamma);
    } else {
      // Gram-Schmidt against the selected span, one re-orthogonalization pass.
      const Index k = static_cast<Index>(path.selected.size());
      Vector v = Xs.col(jm);
      if (k > 0) {
        auto Q = ortho_basis.leftCols(k);
        v -= Q * (Q.transpose() * v);
        v -= Q * (Q.transpose() * v);
      }
      const double norm2 = v.squaredNorm();
      if (norm2 <= 1e-20 * static_cast<double>(n)) {
        // Candidate is numerically inside the selected span.
        rollback();
        path.stopped_reason = StopReason::threshold;
        break;
      }
      v /= std::sqrt(norm2);
      ortho_basis.col(k) = v;
      u -= v * v.dot(u);
      rss_new = u.squaredNorm();
      path.steps.push_back(cov(jm));
    }

    // The exact update cannot increase the objective; trim rounding noise.
    rss_new = std::min(rss_new, rss_prev);
    path.selected.push_back(static_cast<int>(jm));
    taken[static_cast<std::size_t>(jm)] = true;
    path.rss.push_back(rss_new);

    if (rss_new <= 1e-28 * rss0) {
      path.stopped_reason = StopReason::threshold;
      break;
    }
    if (!forced && should_stop(rss_prev, rss_new, cfg)) {
      // A pending gate trip means the tail never recovered; discard it.
      rollback();
      path.stopped_reason = StopReason::threshold;
      break;
    }
  }
  if (path.stopped_reason == StopReason::max_iter) rollback();

  std::set<int> distinct(path.selected.begin(), path.selected.end());
  path.support.assign(distinct.begin(), distinct.end());

  if (orthogonal && !path.support.empty())
    path.beta = refit_post_boost(X, y, path.support);

  return path;
}

Vector refit_post_boost(const DesignMatrix& X, const Vector& y,
                        const std::vector<int>& support) {
  const Index n = X.rows();
  if (y.size() != n)
    throw InvalidInputError("refit_post_boost: response length mismatch");
  const Index k = static_cast<Index>(support.size());
  Vector beta = Vector::Zero(X.cols());
  if (k == 0) return beta;
  if (k > n)
    throw InvalidInputError("refit_post_boost: support larger than sample");

  Matrix sub(n, k);
  for (Index i = 0; i < k; ++i) {
    const int j = support[static_cast<std::size_t>(i)];
    if (j < 0 || j >= X.cols())
      throw InvalidInputError("refit_post_boost: support index out of range");
    sub.col(i) = X.standardized().col(j);
  }
  const Vector yc = y.array() - y.mean();
  const Vector coef = ols_solve(sub, yc);
  for (Index i = 0; i < k; ++i)
    beta(support[static_cast<std::size_t>(i)]) = coef(i);
  return beta;
}

std::pair<Vector, double> destandardize(const Vector& beta_std,
                                        const DesignMatrix& X, double y_mean) {
  if (beta_std.size() != X.cols())
    throw InvalidInputError("destandardize: coefficient length mismatch");
  Vector beta_raw = beta_std.cwiseQuotient(X.col_scale());
  const double intercept = y_mean - beta_raw.dot(X.col_mean());
  return {std::move(beta_raw), intercept};
}

}  // namespace l2boost
