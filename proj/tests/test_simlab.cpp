#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "l2boost/errors.hpp"
#include "l2boost/simlab.hpp"

using namespace l2boost;

namespace {

// ones' Sigma ones computed entry by entry from the closed-form AR(1)
// correlations, independent of the library's helper.
double block_sum(Index s, double rho) {
  double total = 0.0;
  for (Index j = 0; j < s; ++j)
    for (Index k = 0; k < s; ++k)
      total += std::pow(rho, std::abs(double(j - k)));
  return total;
}

double sample_var(const Vector& v) {
  return (v.array() - v.mean()).square().sum() / double(v.size());
}

}  // namespace

TEST_CASE("sparse controls: s = 0 leaves treatment unrelated to the design") {
  Rng rng(41);
  const SimulatedDataset ds = gen_controls(ControlsSparseSpec{20000, 5, 0, 0.5}, rng);
  CHECK(ds.truth.support.empty());
  for (Index j = 0; j < 5; ++j) {
    const Vector xc = ds.x.col(j).array() - ds.x.col(j).mean();
    const Vector dc = ds.d.array() - ds.d.mean();
    const double corr = xc.dot(dc) / std::sqrt(xc.squaredNorm() * dc.squaredNorm());
    CHECK(std::abs(corr) < 0.03);
  }
  CHECK(std::abs(sample_var(ds.d) - 1.0) < 0.05);
}

TEST_CASE("sparse controls: treatment variance matches the closed form") {
  Rng rng(42);
  const SimulatedDataset ds = gen_controls(ControlsSparseSpec{100000, 10, 5, 0.5}, rng);
  const double expected = 1.0 + block_sum(5, 0.5);
  CHECK(std::abs(sample_var(ds.d) - expected) / expected < 0.03);
}

TEST_CASE("approximate-sparse coefficients follow the decaying rule") {
  Rng rng(43);
  const SimulatedDataset ds = gen_controls(ControlsApproxSpec{50, 6, 0.5}, rng);
  const Vector& theta = ds.truth.theta;
  CHECK(theta(0) == 1.0);
  for (Index j = 1; j < 5; ++j)
    CHECK(theta(j) == doctest::Approx(std::pow(0.49, double(j + 1))).epsilon(1e-14));
  CHECK(theta(5) == 0.0);
}

TEST_CASE("instrument design: closed-form strength scale for s = 1") {
  Rng rng(44);
  const SimulatedDataset ds = gen_iv(IvSparseSpec{800, 10, 1, 180.0, 0.6}, rng);
  // With a single unit coordinate the block quadratic form is 1, so
  // C^2 = mu / (1 + mu) and sigma_v^2 = 1 / (1 + mu).
  CHECK(ds.truth.coef_scale * ds.truth.coef_scale ==
        doctest::Approx(180.0 / 181.0).epsilon(1e-12));
  CHECK(ds.truth.sigma_v2 == doctest::Approx(1.0 / 181.0).epsilon(1e-12));
}

TEST_CASE("instrument design: unit treatment variance and target concentration") {
  Rng rng(45);
  const IvSparseSpec spec{100000, 30, 10, 180.0, 0.6};
  const SimulatedDataset ds = gen_iv(spec, rng);
  CHECK(std::abs(sample_var(ds.d) - 1.0) < 0.05);

  // Plug-in signal-to-noise: var(z'pi) / sigma_v^2 with the empirical
  // variance of the generated first-stage signal.
  const Vector signal = ds.x * ds.truth.theta;
  const double mu_hat = sample_var(signal) / ds.truth.sigma_v2;
  CHECK(std::abs(mu_hat - 180.0) / 180.0 < 0.05);
}

TEST_CASE("demo design: regression of d on x recovers the confounding slope") {
  Rng rng(46);
  const SimulatedDataset ds = gen_naive_demo(NaiveDemoSpec{200000, 0.5, 0.2, 0.8, 0.8}, rng);
  const Vector xc = ds.x.col(0).array() - ds.x.col(0).mean();
  const Vector dc = ds.d.array() - ds.d.mean();
  CHECK(std::abs(dc.dot(xc) / xc.squaredNorm() - 0.8) < 0.01);
  CHECK(std::abs(sample_var(ds.d) - 1.0) < 0.02);
}

TEST_CASE("demo design: zero correlation decouples treatment and covariate") {
  Rng rng(47);
  const SimulatedDataset ds =
      gen_naive_demo(NaiveDemoSpec{100000, 0.5, 0.2, 0.8, 0.0}, rng);
  const Vector xc = ds.x.col(0).array() - ds.x.col(0).mean();
  const Vector dc = ds.d.array() - ds.d.mean();
  const double corr = xc.dot(dc) / std::sqrt(xc.squaredNorm() * dc.squaredNorm());
  CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("oracle estimator is unbiased with near-nominal rejection") {
  const DgpSpec spec = ControlsSparseSpec{400, 10, 5, 0.5};
  McOptions opt;
  opt.threads = 4;
  const MonteCarloReport report =
      run_monte_carlo(spec, EstimatorKind::oracle_ols, 500, 99, opt);
  CHECK(report.failures == 0);
  CHECK(std::abs(report.mean_bias) < 0.02);
  CHECK(report.rejection_rate >= 0.02);
  CHECK(report.rejection_rate <= 0.09);
}

TEST_CASE("a single replication yields indicator rates") {
  const DgpSpec spec = ControlsSparseSpec{100, 10, 2, 0.5};
  const MonteCarloReport report =
      run_monte_carlo(spec, EstimatorKind::post_ba, 1, 7);
  CHECK(report.reps == 1);
  CHECK(report.outcomes.size() == 1);
  CHECK((report.rejection_rate == 0.0 || report.rejection_rate == 1.0));
  CHECK((report.coverage == 0.0 || report.coverage == 1.0));
}

TEST_CASE("reports are identical across thread counts") {
  const DgpSpec spec = ControlsSparseSpec{120, 30, 3, 0.5};
  McOptions serial;
  serial.threads = 1;
  McOptions parallel;
  parallel.threads = 8;
  const MonteCarloReport a =
      run_monte_carlo(spec, EstimatorKind::post_ba, 60, 31, serial);
  const MonteCarloReport b =
      run_monte_carlo(spec, EstimatorKind::post_ba, 60, 31, parallel);
  CHECK(a.mean_bias == b.mean_bias);
  CHECK(a.median_bias == b.median_bias);
  CHECK(a.rejection_rate == b.rejection_rate);
  CHECK(a.coverage == b.coverage);
  for (std::size_t r = 0; r < a.outcomes.size(); ++r) {
    CHECK(a.outcomes[r].alpha_hat == b.outcomes[r].alpha_hat);
    CHECK(a.outcomes[r].se == b.outcomes[r].se);
  }
}

TEST_CASE("rejection rate equals the frozen critical-value count") {
  const DgpSpec spec = ControlsSparseSpec{150, 20, 3, 0.5};
  const MonteCarloReport report =
      run_monte_carlo(spec, EstimatorKind::post_ba, 100, 5);
  int rejected = 0, ok = 0;
  for (const ReplicationOutcome& o : report.outcomes) {
    if (!o.ok) continue;
    ++ok;
    if (std::abs((o.alpha_hat - 0.5) / o.se) > 1.9599639845400545) ++rejected;
  }
  CHECK(report.rejection_rate == doctest::Approx(double(rejected) / double(ok)));
}

TEST_CASE("estimator labels round-trip") {
  for (EstimatorKind k :
       {EstimatorKind::post_ba, EstimatorKind::oba, EstimatorKind::classic_ba,
        EstimatorKind::naive, EstimatorKind::oracle_ols})
    CHECK(parse_estimator(estimator_label(k)) == k);
  CHECK_THROWS_AS(parse_estimator("nope"), InvalidInputError);
}

TEST_CASE("table names identify the design variants") {
  CHECK(table_name(ControlsSparseSpec{}) == "controls-sparse");
  CHECK(table_name(ControlsApproxSpec{}) == "controls-approx");
  CHECK(table_name(IvSparseSpec{}) == "iv-sparse");
  CHECK(table_name(NaiveDemoSpec{}) == "naive-demo");
}
