#pragma once

#include <string>
#include <vector>

#include "l2boost/numerics.hpp"

namespace l2boost {

// Regressor matrix standardized column by column: each standardized column
// has empirical mean 0 and empirical second moment 1 (1/n convention).
// Column means and scales are kept so fitted coefficients can be mapped back
// to the original units. Constant columns are rejected at construction.
class DesignMatrix {
public:
  explicit DesignMatrix(Matrix raw, std::vector<std::string> names = {});

  Index rows() const { return raw_.rows(); }
  Index cols() const { return raw_.cols(); }

  const Matrix& raw() const { return raw_; }
  const Matrix& standardized() const { return standardized_; }
  const Vector& col_mean() const { return mean_; }
  const Vector& col_scale() const { return scale_; }

  // Empty name list means columns are unnamed; otherwise one name per column.
  const std::vector<std::string>& names() const { return names_; }
  std::string name_of(Index j) const;

private:
  Matrix raw_;
  Matrix standardized_;
  Vector mean_;
  Vector scale_;
  std::vector<std::string> names_;
};

}  // namespace l2boost
