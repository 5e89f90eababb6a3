#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "l2boost/boosting.hpp"
#include "l2boost/numerics.hpp"
#include "l2boost/rng.hpp"

namespace l2boost {

// Linear outcome/treatment design with AR(1)-correlated controls:
//   y = d * alpha0 + x' theta + xi,   d = x' theta + nu,
// theta has s leading ones, the rest zero.
struct ControlsSparseSpec {
  Index n = 0;
  Index p = 0;
  Index s = 0;
  double alpha0 = 0.5;
};

// Same design with geometrically decaying coefficients instead of a sparse
// block: theta_1 = 1, theta_j = 0.49^j for j = 2..p-1, theta_p = 0.
struct ControlsApproxSpec {
  Index n = 0;
  Index p = 0;
  double alpha0 = 0.5;
};

// Endogenous-treatment design with many instruments:
//   y = d * beta + e,   d = z' pi + v,   corr(e, v) = rho_ev,
// pi = C on the first s coordinates with C solving the target concentration
// parameter mu = n pi' Sigma pi / sigma_v^2 and var(d) = 1.
struct IvSparseSpec {
  Index n = 0;
  Index p = 0;
  Index s = 0;
  double mu = 180.0;
  double rho_ev = 0.6;
};

// Single-covariate confounding demonstration:
//   y = d * alpha + x * beta + eps,   d = gamma * x + v,
// with var(x) = var(d) = 1 and corr(d, x) = rho_dx.
struct NaiveDemoSpec {
  Index n = 100;
  double alpha = 0.5;
  double beta = 0.2;
  double gamma = 0.8;
  double rho_dx = 0.8;
};

using DgpSpec =
    std::variant<ControlsSparseSpec, ControlsApproxSpec, IvSparseSpec, NaiveDemoSpec>;

struct DatasetTruth {
  double target = 0.0;             // the coefficient inference is judged against
  Vector theta;                    // generating coefficient vector
  std::vector<int> support;        // nonzero coordinates of theta
  double coef_scale = 0.0;         // C in the instrument design, 0 elsewhere
  double sigma_v2 = 1.0;           // treatment-noise variance
};

struct SimulatedDataset {
  Vector y;
  Vector d;
  Matrix x;  // controls or instruments
  DatasetTruth truth;
};

SimulatedDataset gen_controls(const ControlsSparseSpec& spec, Rng& rng);
SimulatedDataset gen_controls(const ControlsApproxSpec& spec, Rng& rng);
SimulatedDataset gen_iv(const IvSparseSpec& spec, Rng& rng);
SimulatedDataset gen_naive_demo(const NaiveDemoSpec& spec, Rng& rng);
SimulatedDataset generate(const DgpSpec& spec, Rng& rng);

enum class EstimatorKind { post_ba, oba, classic_ba, naive, oracle_ols };

std::string estimator_label(EstimatorKind kind);
EstimatorKind parse_estimator(const std::string& label);

struct ReplicationOutcome {
  double alpha_hat = 0.0;
  double se = 0.0;
  bool ok = false;
  bool reject = false;  // two-sided 5% test of the true value
  bool cover = false;   // 95% confidence interval covers the truth
};

struct MonteCarloReport {
  DgpSpec spec;
  std::string estimator;
  int reps = 0;
  double truth = 0.0;
  double mean_bias = 0.0;
  double median_bias = 0.0;
  double rejection_rate = 0.0;
  double coverage = 0.0;
  int failures = 0;
  std::uint64_t master_seed = 0;
  std::vector<ReplicationOutcome> outcomes;
};

struct McOptions {
  // <= 0 means one worker per hardware thread.
  int threads = 1;
  BoostConfig boost;
  double ci_level = 0.95;
};

// R independent replications; replication r draws its stream from
// (master_seed, r), so the report does not depend on the thread count.
// Estimator failures are counted, never silently dropped.
MonteCarloReport run_monte_carlo(const DgpSpec& spec, EstimatorKind estimator,
                                 int reps, std::uint64_t master_seed,
                                 const McOptions& options = {});

// Table identifier used by the CLI and in machine-readable reports.
std::string table_name(const DgpSpec& spec);

}  // namespace l2boost
