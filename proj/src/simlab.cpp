#include "l2boost/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "l2boost/dselect.hpp"
#include "l2boost/errors.hpp"
#include "l2boost/ivboost.hpp"
#include "l2boost/stats.hpp"

namespace l2boost {

namespace {

Vector standard_normal_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

std::vector<int> nonzero_support(const Vector& theta) {
  std::vector<int> s;
  for (Index j = 0; j < theta.size(); ++j)
    if (theta(j) != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

SimulatedDataset controls_from_theta(Index n, Index p, double alpha0,
                                     Vector theta, Rng& rng) {
  if (n < 2 || p < 1)
    throw InvalidInputError("controls design: need n >= 2 and p >= 1");
  SimulatedDataset ds;
  ds.x = sample_mvn(n, ToeplitzAr1Cov{p, 0.5}, rng);
  const Vector xi = standard_normal_vector(n, rng);
  const Vector nu = standard_normal_vector(n, rng);
  const Vector signal = ds.x * theta;
  ds.d = signal + nu;
  ds.y = ds.d * alpha0 + signal + xi;
  ds.truth.target = alpha0;
  ds.truth.support = nonzero_support(theta);
  ds.truth.theta = std::move(theta);
  return ds;
}

// ones' Sigma ones over the leading s-block of the AR(1) correlation matrix.
double block_quadratic(Index s, double rho) {
  double total = static_cast<double>(s);
  for (Index k = 1; k < s; ++k)
    total += 2.0 * static_cast<double>(s - k) * std::pow(rho, static_cast<double>(k));
  return total;
}

}  // namespace

SimulatedDataset gen_controls(const ControlsSparseSpec& spec, Rng& rng) {
  if (spec.s < 0 || spec.s > spec.p)
    throw InvalidInputError("controls design: need 0 <= s <= p");
  Vector theta = Vector::Zero(spec.p);
  theta.head(spec.s).setOnes();
  return controls_from_theta(spec.n, spec.p, spec.alpha0, std::move(theta), rng);
}

SimulatedDataset gen_controls(const ControlsApproxSpec& spec, Rng& rng) {
  if (spec.p < 1)
    throw InvalidInputError("controls design: need p >= 1");
  Vector theta = Vector::Zero(spec.p);
  theta(0) = 1.0;
  for (Index j = 1; j < spec.p - 1; ++j)
    theta(j) = std::pow(0.49, static_cast<double>(j + 1));
  return controls_from_theta(spec.n, spec.p, spec.alpha0, std::move(theta), rng);
}

SimulatedDataset gen_iv(const IvSparseSpec& spec, Rng& rng) {
  if (spec.n < 2 || spec.p < 1 || spec.s < 1 || spec.s > spec.p)
    throw InvalidInputError("instrument design: need n >= 2 and 1 <= s <= p");
  if (spec.mu <= 0.0)
    throw InvalidInputError("instrument design: concentration target must be positive");
  if (!(std::abs(spec.rho_ev) < 1.0))
    throw InvalidInputError("instrument design: |rho_ev| must be below 1");

  // C targets the first-stage signal-to-noise ratio mu = pi' Sigma pi /
  // sigma_v^2 (per-observation form; the simulation tables are generated this
  // way). With A the block quadratic form, pi' Sigma pi = mu / (1 + mu), so
  // var(d) = 1 unconditionally.
  const double a = block_quadratic(spec.s, 0.5);
  const double c = std::sqrt(spec.mu / (a * (1.0 + spec.mu)));
  const double signal_var = c * c * a;
  const double sigma_v2 = 1.0 - signal_var;
  if (sigma_v2 <= 0.0)
    throw EstimationError("instrument design: infeasible concentration target");

  SimulatedDataset ds;
  ds.x = sample_mvn(spec.n, ToeplitzAr1Cov{spec.p, 0.5}, rng);
  Vector pi = Vector::Zero(spec.p);
  pi.head(spec.s).setConstant(c);

  const Vector e = standard_normal_vector(spec.n, rng);
  const Vector eta = standard_normal_vector(spec.n, rng);
  const double sigma_v = std::sqrt(sigma_v2);
  const Vector v = spec.rho_ev * sigma_v * e +
                   std::sqrt(1.0 - spec.rho_ev * spec.rho_ev) * sigma_v * eta;

  ds.d = ds.x * pi + v;
  ds.y = ds.d + e;  // structural coefficient is 1
  ds.truth.target = 1.0;
  ds.truth.support = nonzero_support(pi);
  ds.truth.theta = std::move(pi);
  ds.truth.coef_scale = c;
  ds.truth.sigma_v2 = sigma_v2;
  return ds;
}

SimulatedDataset gen_naive_demo(const NaiveDemoSpec& spec, Rng& rng) {
  if (spec.n < 2) throw InvalidInputError("demo design: need n >= 2");
  if (!(std::abs(spec.rho_dx) < 1.0))
    throw InvalidInputError("demo design: |rho_dx| must be below 1");

  SimulatedDataset ds;
  ds.x.resize(spec.n, 1);
  ds.d.resize(spec.n);
  const bool confounded = spec.rho_dx != 0.0 && spec.gamma != 0.0;
  // var(v) chosen so corr(d, x) = rho_dx given d = gamma x + v; with the
  // default gamma = rho_dx this makes var(d) = 1.
  const double sigma_v =
      confounded ? std::abs(spec.gamma) *
                       std::sqrt(1.0 / (spec.rho_dx * spec.rho_dx) - 1.0)
                 : 1.0;
  for (Index i = 0; i < spec.n; ++i) {
    const double x = rng.normal();
    ds.x(i, 0) = x;
    ds.d(i) = (confounded ? spec.gamma * x : 0.0) + sigma_v * rng.normal();
  }
  const Vector eps = standard_normal_vector(spec.n, rng);
  ds.y = ds.d * spec.alpha + ds.x.col(0) * spec.beta + eps;
  ds.truth.target = spec.alpha;
  ds.truth.theta = Vector::Constant(1, spec.beta);
  ds.truth.support = spec.beta != 0.0 ? std::vector<int>{0} : std::vector<int>{};
  return ds;
}

SimulatedDataset generate(const DgpSpec& spec, Rng& rng) {
  if (const auto* s = std::get_if<ControlsSparseSpec>(&spec))
    return gen_controls(*s, rng);
  if (const auto* s = std::get_if<ControlsApproxSpec>(&spec))
    return gen_controls(*s, rng);
  if (const auto* s = std::get_if<IvSparseSpec>(&spec)) return gen_iv(*s, rng);
  return gen_naive_demo(std::get<NaiveDemoSpec>(spec), rng);
}

std::string estimator_label(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::post_ba: return "post-BA";
    case EstimatorKind::oba: return "oBA";
    case EstimatorKind::classic_ba: return "classic-BA";
    case EstimatorKind::naive: return "naive";
    case EstimatorKind::oracle_ols: return "oracle-OLS";
  }
  return "unknown";
}

EstimatorKind parse_estimator(const std::string& label) {
  if (label == "post-BA") return EstimatorKind::post_ba;
  if (label == "oBA") return EstimatorKind::oba;
  if (label == "classic-BA") return EstimatorKind::classic_ba;
  if (label == "naive") return EstimatorKind::naive;
  if (label == "oracle-OLS") return EstimatorKind::oracle_ols;
  throw InvalidInputError("unknown estimator label: " + label);
}

std::string table_name(const DgpSpec& spec) {
  struct Visitor {
    std::string operator()(const ControlsSparseSpec&) const { return "controls-sparse"; }
    std::string operator()(const ControlsApproxSpec&) const { return "controls-approx"; }
    std::string operator()(const IvSparseSpec&) const { return "iv-sparse"; }
    std::string operator()(const NaiveDemoSpec&) const { return "naive-demo"; }
  };
  return std::visit(Visitor{}, spec);
}

namespace {

BoostConfig variant_config(BoostConfig base, BoostVariant v) {
  base.variant = v;
  return base;
}

// One replication: simulate, estimate, test against the truth.
ReplicationOutcome run_one(const DgpSpec& spec, EstimatorKind estimator,
                           const McOptions& options, Rng& rng) {
  ReplicationOutcome out;
  const SimulatedDataset ds = generate(spec, rng);
  const bool iv_design = std::holds_alternative<IvSparseSpec>(spec);

  double alpha_hat = 0.0, se = 0.0, lo = 0.0, hi = 0.0;
  try {
    const DesignMatrix X(ds.x);
    if (iv_design) {
      IVResult r;
      switch (estimator) {
        case EstimatorKind::post_ba:
        case EstimatorKind::oba:
        case EstimatorKind::classic_ba: {
          IVConfig cfg;
          cfg.boost = variant_config(options.boost,
                                     estimator == EstimatorKind::oba
                                         ? BoostVariant::orthogonal
                                         : BoostVariant::classic);
          cfg.refit_first_stage = estimator != EstimatorKind::classic_ba;
          cfg.ci_level = options.ci_level;
          r = fit_iv(ds.y, ds.d, X, cfg);
          break;
        }
        case EstimatorKind::oracle_ols:
          // Two-stage fit on the true instrument set.
          r = fit_iv_fixed(ds.y, ds.d, X, ds.truth.support, options.ci_level);
          break;
        case EstimatorKind::naive: {
          // Ignores endogeneity: straight regression of y on d.
          const DoubleSelectionResult f = fixed_controls_estimate(
              ds.y, ds.d, X, {}, options.ci_level);
          alpha_hat = f.alpha_hat; se = f.se; lo = f.ci_lower; hi = f.ci_upper;
          out.ok = true;
          break;
        }
      }
      if (estimator != EstimatorKind::naive) {
        alpha_hat = r.alpha_hat; se = r.se; lo = r.ci_lower; hi = r.ci_upper;
        out.ok = true;
      }
    } else {
      DoubleSelectionResult r;
      switch (estimator) {
        case EstimatorKind::post_ba:
        case EstimatorKind::oba:
        case EstimatorKind::classic_ba: {
          DSConfig cfg;
          cfg.boost = variant_config(options.boost,
                                     estimator == EstimatorKind::oba
                                         ? BoostVariant::orthogonal
                                         : BoostVariant::classic);
          cfg.refit_selection = estimator != EstimatorKind::classic_ba;
          cfg.ci_level = options.ci_level;
          r = double_select(ds.y, ds.d, X, cfg);
          break;
        }
        case EstimatorKind::naive: {
          DSConfig cfg;
          cfg.boost = variant_config(options.boost, BoostVariant::classic);
          cfg.ci_level = options.ci_level;
          r = naive_select_estimate(ds.y, ds.d, X, cfg);
          break;
        }
        case EstimatorKind::oracle_ols:
          r = fixed_controls_estimate(ds.y, ds.d, X, ds.truth.support,
                                      options.ci_level);
          break;
      }
      alpha_hat = r.alpha_hat; se = r.se; lo = r.ci_lower; hi = r.ci_upper;
      out.ok = true;
    }
  } catch (const Error&) {
    out.ok = false;
    return out;
  }

  out.alpha_hat = alpha_hat;
  out.se = se;
  const double t = se > 0.0 ? (alpha_hat - ds.truth.target) / se
                            : std::numeric_limits<double>::infinity();
  out.reject = std::abs(t) > normal_quantile(0.975);
  out.cover = lo <= ds.truth.target && ds.truth.target <= hi;
  return out;
}

double truth_of(const DgpSpec& spec) {
  struct Visitor {
    double operator()(const ControlsSparseSpec& s) const { return s.alpha0; }
    double operator()(const ControlsApproxSpec& s) const { return s.alpha0; }
    double operator()(const IvSparseSpec&) const { return 1.0; }
    double operator()(const NaiveDemoSpec& s) const { return s.alpha; }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace

MonteCarloReport run_monte_carlo(const DgpSpec& spec, EstimatorKind estimator,
                                 int reps, std::uint64_t master_seed,
                                 const McOptions& options) {
  if (reps < 1) throw InvalidInputError("run_monte_carlo: need at least one replication");

  MonteCarloReport report;
  report.spec = spec;
  report.estimator = estimator_label(estimator);
  report.reps = reps;
  report.master_seed = master_seed;
  report.truth = truth_of(spec);
  report.outcomes.resize(static_cast<std::size_t>(reps));

  int workers = options.threads;
  if (workers <= 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, reps);

  auto worker = [&](int first) {
    for (int r = first; r < reps; r += workers) {
      Rng rng = Rng::for_stream(master_seed, static_cast<std::uint64_t>(r));
      report.outcomes[static_cast<std::size_t>(r)] =
          run_one(spec, estimator, options, rng);
    }
  };
  if (workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  // Deterministic fold in replication order.
  std::vector<double> alphas;
  alphas.reserve(report.outcomes.size());
  int rejected = 0, covered = 0, failures = 0;
  for (const ReplicationOutcome& o : report.outcomes) {
    if (!o.ok) {
      ++failures;
      continue;
    }
    alphas.push_back(o.alpha_hat);
    if (o.reject) ++rejected;
    if (o.cover) ++covered;
  }
  report.failures = failures;
  const auto n_ok = static_cast<double>(alphas.size());
  if (!alphas.empty()) {
    double sum = 0.0;
    for (double a : alphas) sum += a;
    report.mean_bias = sum / n_ok - report.truth;
    std::vector<double> sorted = alphas;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = (m % 2 == 1)
                              ? sorted[m / 2]
                              : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    report.median_bias = median - report.truth;
    report.rejection_rate = rejected / n_ok;
    report.coverage = covered / n_ok;
  } else {
    report.mean_bias = std::numeric_limits<double>::quiet_NaN();
    report.median_bias = std::numeric_limits<double>::quiet_NaN();
    report.rejection_rate = std::numeric_limits<double>::quiet_NaN();
    report.coverage = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

}  // namespace l2boost
