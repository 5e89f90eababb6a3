#include <doctest.h>

#include <cmath>

#include "l2boost/errors.hpp"
#include "l2boost/numerics.hpp"
#include "l2boost/stats.hpp"

using namespace l2boost;

namespace {

// Independent 3x3 solve via explicit cofactor inversion, for use as an oracle
// against the QR-based path.
Vector normal_equations_3x3(const Matrix& X, const Vector& y) {
  const Matrix a = X.transpose() * X;
  const Vector b = X.transpose() * y;
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  Matrix inv(3, 3);
  inv(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  inv(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  inv(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  inv(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  inv(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  inv(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  inv(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  inv(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  inv(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return (inv / det) * b;
}

Matrix random_matrix(Index n, Index p, Rng& rng) {
  Matrix m(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) m(i, j) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
  const Matrix id = Matrix::Identity(3, 3);
  CHECK((cholesky_lower(id) - id).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("cholesky of a 1x1 matrix is the scalar square root") {
  Matrix m(1, 1);
  m(0, 0) = 4.0;
  CHECK(cholesky_lower(m)(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("cholesky reconstructs an AR(1) covariance entrywise") {
  const ToeplitzAr1Cov cov{5, 0.5};
  const Matrix sigma = cov.materialize();
  // Oracle: rebuild Sigma from the closed-form entries and compare L L'.
  for (Index k = 0; k < 5; ++k)
    for (Index j = 0; j < 5; ++j)
      CHECK(sigma(k, j) ==
            doctest::Approx(std::pow(0.5, std::abs(double(j - k)))).epsilon(1e-14));
  const Matrix L = cholesky_lower(sigma);
  const Matrix rebuilt = L * L.transpose();
  CHECK((rebuilt - sigma).norm() / sigma.norm() < 1e-10);
  for (Index i = 0; i < 5; ++i)
    for (Index j = i + 1; j < 5; ++j) CHECK(L(i, j) == 0.0);
}

TEST_CASE("cholesky rejects non-positive-definite input naming the pivot") {
  Matrix m = Matrix::Identity(3, 3);
  m(2, 2) = -1.0;
  try {
    cholesky_lower(m);
    FAIL("expected FactorizationError");
  } catch (const FactorizationError& e) {
    CHECK(e.pivot() == 2);
  }
}

TEST_CASE("ols_solve fits a constant column exactly") {
  Matrix X = Matrix::Ones(3, 1);
  Vector y(3);
  y << 2.0, 2.0, 2.0;
  CHECK(ols_solve(X, y)(0) == doctest::Approx(2.0));
}

TEST_CASE("ols_solve on orthonormal columns returns X'y") {
  Matrix X = Matrix::Zero(4, 2);
  X(0, 0) = 1.0;
  X(2, 1) = 1.0;
  Vector y(4);
  y << 3.0, -1.0, 7.0, 2.0;
  const Vector beta = ols_solve(X, y);
  CHECK(beta(0) == doctest::Approx(3.0));
  CHECK(beta(1) == doctest::Approx(7.0));
}

TEST_CASE("ols_solve matches an explicit normal-equations oracle") {
  Rng rng(42);
  const Matrix X = random_matrix(20, 3, rng);
  Vector y(20);
  for (Index i = 0; i < 20; ++i) y(i) = rng.normal();
  const Vector qr = ols_solve(X, y);
  const Vector oracle = normal_equations_3x3(X, y);
  CHECK((qr - oracle).cwiseAbs().maxCoeff() < 1e-10);
  // Residual orthogonality.
  const Vector grad = X.transpose() * (y - X * qr);
  CHECK(grad.cwiseAbs().maxCoeff() <
        1e-8 * (X.transpose() * y).cwiseAbs().maxCoeff());
}

TEST_CASE("ols_solve reports the rank of a deficient design") {
  Matrix X(5, 3);
  Rng rng(7);
  for (Index i = 0; i < 5; ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = 2.0 * X(i, 0);
    X(i, 2) = rng.normal();
  }
  Vector y(5);
  for (Index i = 0; i < 5; ++i) y(i) = rng.normal();
  try {
    ols_solve(X, y);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.rank() == 2);
  }
}

TEST_CASE("sample_mvn with rho = 0 has near-identity column covariance") {
  Rng rng(1);
  const Index n = 20000;
  const Matrix draws = sample_mvn(n, ToeplitzAr1Cov{4, 0.0}, rng);
  const Matrix centered = draws.rowwise() - draws.colwise().mean();
  const Matrix cov = centered.transpose() * centered / double(n);
  const double tol = 4.0 / std::sqrt(double(n));
  CHECK((cov - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("sample_mvn one dimension has unit variance") {
  Rng rng(2);
  const Index n = 20000;
  const Matrix draws = sample_mvn(n, ToeplitzAr1Cov{1, 0.0}, rng);
  const double var =
      (draws.col(0).array() - draws.col(0).mean()).square().sum() / double(n);
  CHECK(std::abs(var - 1.0) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("sample_mvn empirical correlations follow rho^|j-k|") {
  Rng rng(3);
  const Index n = 50000;
  const Matrix draws = sample_mvn(n, ToeplitzAr1Cov{10, 0.5}, rng);
  const Matrix centered = draws.rowwise() - draws.colwise().mean();
  Matrix corr = centered.transpose() * centered / double(n);
  Vector sd = corr.diagonal().cwiseSqrt();
  for (Index j = 0; j < 10; ++j)
    for (Index k = 0; k < 10; ++k)
      CHECK(std::abs(corr(j, k) / (sd(j) * sd(k)) -
                     std::pow(0.5, std::abs(double(j - k)))) < 0.02);
}

TEST_CASE("sample_mvn is reproducible for a fixed seed") {
  Rng a(99), b(99);
  const Matrix m1 = sample_mvn(50, ToeplitzAr1Cov{3, 0.5}, a);
  const Matrix m2 = sample_mvn(50, ToeplitzAr1Cov{3, 0.5}, b);
  CHECK((m1 - m2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stream derivation is independent of draw order") {
  Rng first = Rng::for_stream(123, 0);
  first.normal();
  Rng second = Rng::for_stream(123, 1);
  Rng second_fresh = Rng::for_stream(123, 1);
  CHECK(second.normal() == second_fresh.normal());
}

TEST_CASE("normal quantile and cdf are consistent") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(normal_quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(two_sided_p_value(1.959963985) == doctest::Approx(0.05).epsilon(1e-8));
}
