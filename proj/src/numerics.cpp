#include "l2boost/numerics.hpp"

#include <cmath>
#include <string>

#include "l2boost/errors.hpp"

namespace l2boost {

Matrix ToeplitzAr1Cov::materialize() const {
  if (dim < 1)
    throw InvalidInputError("ToeplitzAr1Cov: dim must be positive");
  if (!(std::abs(rho) < 1.0))
    throw InvalidInputError("ToeplitzAr1Cov: rho must lie in (-1, 1)");
  Matrix sigma(dim, dim);
  for (Index k = 0; k < dim; ++k)
    for (Index j = 0; j < dim; ++j)
      sigma(k, j) = std::pow(rho, static_cast<double>(std::abs(j - k)));
  return sigma;
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw InvalidInputError(std::string(what) + " contains non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw InvalidInputError(std::string(what) + " contains non-finite entries");
}

Matrix cholesky_lower(const Matrix& cov) {
  const Index n = cov.rows();
  if (n == 0 || cov.cols() != n)
    throw InvalidInputError("cholesky_lower: matrix must be square and non-empty");
  require_finite(cov, "cholesky_lower input");
  const double scale = cov.diagonal().cwiseAbs().maxCoeff();
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0))
    throw InvalidInputError("cholesky_lower: matrix is not symmetric");

  Matrix L = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double diag = cov(j, j) - L.row(j).head(j).squaredNorm();
    if (diag <= 0.0 || !std::isfinite(diag))
      throw FactorizationError(
          "cholesky_lower: non-positive pivot at index " + std::to_string(j),
          static_cast<int>(j));
    diag = std::sqrt(diag);
    L(j, j) = diag;
    for (Index i = j + 1; i < n; ++i)
      L(i, j) = (cov(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / diag;
  }
  return L;
}

Vector ols_solve(const Matrix& X, const Vector& y) {
  const Index n = X.rows();
  const Index k = X.cols();
  if (y.size() != n)
    throw InvalidInputError("ols_solve: response length does not match rows");
  if (k > n)
    throw InvalidInputError("ols_solve: more columns than observations");
  if (k == 0) return Vector(0);
  require_finite(X, "ols_solve design");
  require_finite(y, "ols_solve response");

  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-10);
  const Index rank = qr.rank();
  if (rank < k)
    throw SingularMatrixError(
        "ols_solve: rank-deficient design (rank " + std::to_string(rank) +
            " of " + std::to_string(k) + " columns)",
        static_cast<int>(rank));
  return qr.solve(y);
}

Matrix sample_mvn(Index n, const ToeplitzAr1Cov& cov, Rng& rng) {
  const Matrix L = cholesky_lower(cov.materialize());
  Matrix z(n, cov.dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < cov.dim; ++j) z(i, j) = rng.normal();
  return z * L.transpose();
}

}  // namespace l2boost
