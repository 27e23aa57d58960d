#include "womp/linalg.hpp"

#include <algorithm>

namespace womp {

DenseMatrix::DenseMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw InvalidParameter("matrix must have at least one row and one column");
  }
  if (!entries_.allFinite()) {
    throw InvalidParameter("matrix entries must be finite");
  }
}

SupportSet::SupportSet(std::vector<Index> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) {
    throw IndexOutOfRange(indices_.front(), 0);
  }
}

SupportSet::SupportSet(std::initializer_list<Index> indices)
    : SupportSet(std::vector<Index>(indices)) {}

bool SupportSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

bool SupportSet::insert(Index j) {
  auto pos = std::lower_bound(indices_.begin(), indices_.end(), j);
  if (pos != indices_.end() && *pos == j) return false;
  indices_.insert(pos, j);
  return true;
}

NormalizeResult normalize_columns(const DenseMatrix& a) {
  Matrix out = a.m();
  Vector scales(out.cols());
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm == 0.0) throw ZeroColumn(j);
    out.col(j) /= norm;
    scales[j] = norm;
  }
  return NormalizeResult{DenseMatrix(std::move(out)), std::move(scales)};
}

Vector residual(const DenseMatrix& a, const Vector& x, const Vector& y) {
  if (x.size() != a.cols()) {
    throw DimensionMismatch("x has length " + std::to_string(x.size()) + ", matrix has " +
                            std::to_string(a.cols()) + " columns");
  }
  if (y.size() != a.rows()) {
    throw DimensionMismatch("y has length " + std::to_string(y.size()) + ", matrix has " +
                            std::to_string(a.rows()) + " rows");
  }
  return y - a.m() * x;
}

LeastSquaresResult least_squares_restricted(const DenseMatrix& a, const Vector& y,
                                            const SupportSet& s) {
  if (y.size() != a.rows()) {
    throw DimensionMismatch("y has length " + std::to_string(y.size()) + ", matrix has " +
                            std::to_string(a.rows()) + " rows");
  }
  LeastSquaresResult result{Vector::Zero(a.cols()), false, 0};
  if (s.empty()) return result;
  if (s.indices().back() >= a.cols()) {
    throw IndexOutOfRange(s.indices().back(), a.cols());
  }

  const Index k = s.size();
  Matrix sub(a.rows(), k);
  for (Index i = 0; i < k; ++i) sub.col(i) = a.m().col(s.indices()[static_cast<size_t>(i)]);

  // Rank-revealing orthogonal decomposition; below the relative threshold the
  // submatrix counts as rank deficient and the minimum-norm solution is kept.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a.rows(), k);
  cod.setThreshold(1e-10);
  cod.compute(sub);
  result.rank = cod.rank();
  result.rank_deficient = result.rank < k;

  const Vector coef = cod.solve(y);
  for (Index i = 0; i < k; ++i) result.x[s.indices()[static_cast<size_t>(i)]] = coef[i];
  return result;
}

}  // namespace womp
