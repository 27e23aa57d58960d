#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace womp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Hard failures: violated preconditions that a caller must fix.
// Soft conditions (rank deficiency, non-convergence) are reported through
// result flags instead, so parameter sweeps keep running over bad draws.

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument("dimension mismatch: " + what) {}
};

struct ZeroColumn : std::invalid_argument {
  explicit ZeroColumn(Index j)
      : std::invalid_argument("column " + std::to_string(j + 1) + " is exactly zero"),
        column(j) {}
  Index column;
};

struct ZeroVector : std::invalid_argument {
  explicit ZeroVector(const std::string& what) : std::invalid_argument("zero vector: " + what) {}
};

struct IndexOutOfRange : std::out_of_range {
  IndexOutOfRange(Index j, Index n)
      : std::out_of_range("index " + std::to_string(j + 1) + " outside [1.." +
                          std::to_string(n) + "]") {}
};

struct NotNormalized : std::invalid_argument {
  explicit NotNormalized(Index j)
      : std::invalid_argument("column " + std::to_string(j + 1) +
                              " does not have unit Euclidean norm") {}
};

struct ZeroTruth : std::invalid_argument {
  ZeroTruth() : std::invalid_argument("reference signal has zero norm") {}
};

struct ZeroFunction : std::invalid_argument {
  ZeroFunction() : std::invalid_argument("target function vanishes on all sample points") {}
};

struct NonPositiveSample : std::invalid_argument {
  explicit NonPositiveSample(double v)
      : std::invalid_argument("log statistics need positive samples, got " + std::to_string(v)) {}
};

struct EmptyTable : std::invalid_argument {
  explicit EmptyTable(const std::string& what) : std::invalid_argument("empty table: " + what) {}
};

struct EmptySupport : std::invalid_argument {
  explicit EmptySupport(const std::string& what)
      : std::invalid_argument("empty support: " + what) {}
};

struct OutOfDomain : std::invalid_argument {
  explicit OutOfDomain(const std::string& what) : std::invalid_argument("out of domain: " + what) {}
};

struct InvalidParameter : std::invalid_argument {
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace womp
