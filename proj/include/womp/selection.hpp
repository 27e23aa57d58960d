#pragma once

#include "womp/linalg.hpp"
#include "womp/losses.hpp"
#include "womp/types.hpp"

namespace womp {

/// Immutable snapshot of a greedy iteration, with the caches the closed-form
/// selection rules need. The matrix is held by reference and must outlive the
/// context; the small vectors are owned. For the Lasso/SrLasso rules the
/// matrix must have unit-norm columns and x must be the least-squares fit on
/// the support (the in-support formulas rely on A_S^T r = 0). For the
/// LadLasso rules columns only need to be nonzero and x only needs supp(x)
/// inside the support.
struct SelectionContext {
  const Matrix& a;
  Vector y;
  Vector w;
  double lambda;
  Vector x;
  SupportSet support;
  Vector r;             // y - a x
  double r_norm2;
  double r_norm1;
  Vector correlations;  // a^T r
};

SelectionContext make_context(const DenseMatrix& a, const Vector& y, const Weights& w,
                              double lambda, Vector x, SupportSet support);

/// Column j of the penalty-augmented system used by the LadLasso l1 rule:
/// the column gains a final entry lambda*w_j and the residual a final entry
/// -lambda*w_j*x_j, so the 1-D penalized move becomes a plain weighted-median
/// problem in m+1 rows. Built per column; the full augmented matrix is never
/// materialized.
struct AugmentedColumnView {
  Index j;
  Vector a_tilde;  // length m+1
  Vector r_tilde;  // length m+1
};

AugmentedColumnView make_augmented_column(const SelectionContext& ctx, Index j);

struct LadArgmin {
  double t;    // minimizer y_i / a_i
  Index index; // the row i realizing it
};

/// Exact minimizer of t -> ||y - t a||_1: sort the ratios y_i/a_i over the
/// support of a and stop at the first index where the cumulative |a_i| mass
/// reaches half the total. Ties in the ratios keep original index order, so
/// the result is deterministic.
LadArgmin univariate_lad_argmin(const Vector& y, const Vector& a);

// Loss reduction achievable by the best single-coordinate move along e_j,
// one function per loss variant. Each equals
//   G(x) - min_t G(x + t e_j)
// in closed form, with radicands and outputs clamped at zero against roundoff.

double delta_lasso_l1(const SelectionContext& ctx, Index j);
double delta_srlasso_l1(const SelectionContext& ctx, Index j);
double delta_ladlasso_l1(const SelectionContext& ctx, Index j);
double delta_lasso_l0(const SelectionContext& ctx, Index j);
double delta_srlasso_l0(const SelectionContext& ctx, Index j);
double delta_ladlasso_l0(const SelectionContext& ctx, Index j);

double delta(const SelectionContext& ctx, LossFamily family, Regularizer reg, Index j);

/// All N reductions for one rule.
Vector score_all(const SelectionContext& ctx, LossFamily family, Regularizer reg);

}  // namespace womp
