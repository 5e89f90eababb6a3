#include "l2boost/design.hpp"

#include <cmath>
#include <utility>

#include "l2boost/errors.hpp"

namespace l2boost {

DesignMatrix::DesignMatrix(Matrix raw, std::vector<std::string> names)
    : raw_(std::move(raw)), names_(std::move(names)) {
  require_finite(raw_, "design matrix");
  const Index n = raw_.rows();
  const Index p = raw_.cols();
  if (n < 2) throw InvalidInputError("design matrix needs at least 2 rows");
  if (!names_.empty() && static_cast<Index>(names_.size()) != p)
    throw InvalidInputError("design matrix: one name per column required");

  mean_ = raw_.colwise().mean();
  standardized_ = raw_.rowwise() - mean_.transpose();
  scale_.resize(p);
  for (Index j = 0; j < p; ++j) {
    const double var = standardized_.col(j).squaredNorm() / static_cast<double>(n);
    if (var <= 1e-24)
      throw InvalidInputError("design matrix: column " + name_of(j) +
                              " is constant");
    scale_(j) = std::sqrt(var);
    standardized_.col(j) /= scale_(j);
  }
}

std::string DesignMatrix::name_of(Index j) const {
  if (!names_.empty() && j >= 0 && j < static_cast<Index>(names_.size()))
    return names_[static_cast<std::size_t>(j)];
  return "x" + std::to_string(j);
}

}  // namespace l2boost
