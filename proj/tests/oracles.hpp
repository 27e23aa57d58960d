#pragma once

// Brute-force reference computations the implementation is checked against.
// Everything here deliberately takes a different route than the library:
// dense grids instead of closed forms, normal equations instead of QR,
// exhaustive vertex enumeration instead of descent.

#include "womp/linalg.hpp"
#include "womp/losses.hpp"
#include "womp/rng.hpp"
#include "womp/types.hpp"

#include <vector>

namespace womp::testing {

/// G(x) - min_t G(x + t e_j) by dense 1-D search: a grid spanning the
/// breakpoint hull, two refinement passes, and explicit evaluation at the
/// analytic candidate points (0, -x_j, correlation shifts, residual ratios).
double grid_loss_reduction(const LossSpec& spec, const DenseMatrix& a, const Vector& y,
                           const Weights& w, const Vector& x, Index j);

/// Restricted least squares through the normal equations (A_S^T A_S) z = A_S^T y.
Vector normal_equations_lsq(const DenseMatrix& a, const Vector& y, const SupportSet& s);

/// Textbook OMP: argmax_j |a_j^T r| (lowest index on ties), least-squares
/// refit on the support, K iterations. Returns the selected index sequence.
std::vector<Index> plain_omp_indices(const DenseMatrix& a, const Vector& y, int k_iterations);

/// Exact minimum of ||y - B z||_1 over z by enumerating every vertex that
/// zeroes cols(B) residuals. Exponential; small instances only.
double lad_vertex_minimum(const Matrix& b, const Vector& y);

/// Minimum of ||y - t a||_1 over a dense grid of `points` values spanning
/// the breakpoint hull [min_i y_i/a_i, max_i y_i/a_i] plus the breakpoints
/// themselves.
double lad_univariate_grid_minimum(const Vector& y, const Vector& a, int points);

/// Random unit-column matrix for test contexts.
DenseMatrix random_normalized_matrix(Index m, Index n, Rng& rng);

}  // namespace womp::testing
