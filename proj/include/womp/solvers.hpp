#pragma once

#include "womp/linalg.hpp"
#include "womp/losses.hpp"
#include "womp/types.hpp"

#include <vector>

namespace womp {

struct SolverOptions {
  int max_iterations = 0;              // K
  bool restrict_to_complement = false; // argmax over [N] \ S instead of all of [N]
  double delta_tolerance = 0.0;        // 0 disables the early stop
  double lad_sweep_tolerance = 1e-10;
  int lad_max_sweeps = -1;             // -1: 200*|S| + 200
};

enum class TerminalStatus { CompletedK, Stalled, DeltaBelowTol };

struct IterationRecord {
  Index selected;      // 0-based
  SupportSet support;
  Vector x;
  double fidelity;
  double loss;
  double delta_max;
  bool stalled;
  bool fit_degenerate;  // refit was rank deficient or hit its sweep cap
};

struct GreedyTrace {
  std::vector<IterationRecord> iterations;
  TerminalStatus status = TerminalStatus::CompletedK;

  const Vector& final_x() const;
  Vector final_or_zero(Index n) const;
};

struct LadFitResult {
  Vector x;
  bool converged;       // optimality certified (or interpolation reached)
  bool rank_deficient;  // support columns were dependent; a pivoted subset was used
  int steps;            // descent steps after the coordinate sweeps
};

/// Minimizes ||y - A z||_1 over vectors supported on s. Cyclic coordinate
/// descent on exact weighted medians brings the iterate close, then a
/// vertex-descent phase walks edges of the piecewise-linear objective
/// (each line search again a weighted median) until the optimality
/// certificate max_i |g_i| <= 1 holds. Coordinate descent alone can park at
/// a coordinate-wise minimum that is not a minimizer, so the second phase is
/// what guarantees the fit.
LadFitResult lad_restricted(const DenseMatrix& a, const Vector& y, const SupportSet& s,
                            const SolverOptions& opts);

/// Greedy driver: per iteration, score every index with the closed-form loss
/// reduction for `spec`, add the argmax (lowest index on ties) to the
/// support, and refit the signal on the support with the family's fidelity
/// (least squares for Lasso/SrLasso, restricted LAD for LadLasso). If the
/// argmax lands inside the support and the refit leaves x unchanged, every
/// later iteration would repeat identically, so the run is marked stalled
/// and stops.
GreedyTrace omp_run(const LossSpec& spec, const DenseMatrix& a, const Vector& y, const Weights& w,
                    const SolverOptions& opts);

/// ||x_hat - x_true||_2 / ||x_true||_2
double relative_l2_error(const Vector& x_hat, const Vector& x_true);

}  // namespace womp
