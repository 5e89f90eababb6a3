#pragma once

#include <Eigen/Dense>

#include "l2boost/rng.hpp"

namespace l2boost {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// AR(1) correlation structure: Sigma(k, j) = rho^|j-k|, |rho| < 1.
struct ToeplitzAr1Cov {
  Index dim = 0;
  double rho = 0.0;

  Matrix materialize() const;
};

// Throws if any entry is NaN/Inf; `what` names the offending object.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
// Throws FactorizationError naming the failing pivot on non-PD input.
Matrix cholesky_lower(const Matrix& cov);

// Least-squares coefficients of y on the columns of X via column-pivoted QR.
// Rank tolerance is 1e-10 relative to the largest diagonal of R; a deficient
// design throws SingularMatrixError carrying the estimated rank.
Vector ols_solve(const Matrix& X, const Vector& y);

// n i.i.d. rows from N(0, Sigma) with Sigma given by `cov`.
Matrix sample_mvn(Index n, const ToeplitzAr1Cov& cov, Rng& rng);

}  // namespace l2boost
