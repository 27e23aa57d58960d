#pragma once

#include "womp/types.hpp"

#include <initializer_list>
#include <vector>

namespace womp {

/// Dense real matrix with constructor-checked invariants: at least one row
/// and one column, all entries finite. Column-major storage, so column
/// extraction is contiguous.
class DenseMatrix {
 public:
  explicit DenseMatrix(Matrix entries);

  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  const Matrix& m() const { return entries_; }

 private:
  Matrix entries_;
};

/// Strictly increasing set of column indices, stored 0-based. All file and
/// CLI interfaces are 1-based; conversion happens at those boundaries only.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<Index> indices);  // sorted + deduplicated
  SupportSet(std::initializer_list<Index> indices);

  bool contains(Index j) const;
  /// Inserts j, returns true if it was new.
  bool insert(Index j);

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool operator==(const SupportSet&) const = default;

 private:
  std::vector<Index> indices_;
};

struct NormalizeResult {
  DenseMatrix matrix;  // unit-norm columns
  Vector scales;       // original column norms; matrix * diag(scales) == input
};

/// Rescales every column to unit Euclidean norm. Throws ZeroColumn if a
/// column vanishes exactly.
NormalizeResult normalize_columns(const DenseMatrix& a);

/// y - A x, the residual convention used throughout.
Vector residual(const DenseMatrix& a, const Vector& x, const Vector& y);

struct LeastSquaresResult {
  Vector x;             // length N, supported on s
  bool rank_deficient;  // numerical rank < |s|; x is then the minimum-norm solution
  Index rank;
};

/// Minimizes ||y - A z||_2 over vectors supported on s, via a rank-revealing
/// QR of the column submatrix. Rank deficiency is flagged, not thrown, and
/// the minimum-norm solution is returned so sweeps survive degenerate draws.
LeastSquaresResult least_squares_restricted(const DenseMatrix& a, const Vector& y,
                                            const SupportSet& s);

}  // namespace womp
