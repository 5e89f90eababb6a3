#pragma once

#include <stdexcept>
#include <string>

namespace l2boost {

// Base class for everything thrown by this library. `category()` is the
// single-word tag the CLI prints and maps to an exit code.
class Error : public std::runtime_error {
public:
  explicit Error(std::string category, const std::string& msg)
      : std::runtime_error(msg), category_(std::move(category)) {}
  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

// Malformed or unusable inputs (files, columns, argument shapes). Exit code 2.
class DataError : public Error {
public:
  explicit DataError(const std::string& msg) : Error("data", msg) {}
};

class InvalidInputError : public DataError {
public:
  explicit InvalidInputError(const std::string& msg) : DataError(msg) {}
};

// Numerical or statistical failure during estimation. Exit code 3.
class EstimationError : public Error {
public:
  explicit EstimationError(const std::string& msg) : Error("estimation", msg) {}
};

// Cholesky factorization hit a non-positive pivot.
class FactorizationError : public EstimationError {
public:
  FactorizationError(const std::string& msg, int pivot)
      : EstimationError(msg), pivot_(pivot) {}
  int pivot() const noexcept { return pivot_; }

private:
  int pivot_;
};

// Rank-deficient regressor matrix.
class SingularMatrixError : public EstimationError {
public:
  SingularMatrixError(const std::string& msg, int rank)
      : EstimationError(msg), rank_(rank) {}
  int rank() const noexcept { return rank_; }

private:
  int rank_;
};

}  // namespace l2boost
