#include "womp/solvers.hpp"

#include "womp/selection.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>

namespace womp {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kOptimalityTol = 1e-11;

int lad_step_cap(const SolverOptions& opts, Index k) {
  if (opts.lad_max_sweeps >= 0) return opts.lad_max_sweeps;
  return static_cast<int>(200 * k + 200);
}

/// Cyclic coordinate descent: each pass re-solves every coordinate exactly by
/// a weighted median on the partial residual. Stops when a full sweep gains
/// less than tol_gain or the sweep budget runs out.
void coordinate_sweeps(const Matrix& b, Vector& z, Vector& r, double tol_gain, int max_sweeps) {
  const Index k = b.cols();
  double prev = r.lpNorm<1>();
  Vector partial(b.rows());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (Index j = 0; j < k; ++j) {
      partial = r + z[j] * b.col(j);
      const LadArgmin best = univariate_lad_argmin(partial, b.col(j));
      z[j] = best.t;
      r = partial - best.t * b.col(j);
    }
    const double cur = r.lpNorm<1>();
    if (prev - cur < tol_gain) break;
    prev = cur;
  }
}

/// Picks k rows of b with independent directions, preferring rows where |r|
/// is small, by greedy Gram-Schmidt in the stated preference order.
std::vector<Index> initial_vertex_rows(const Matrix& b, const Vector& r) {
  const Index m = b.rows();
  const Index k = b.cols();
  std::vector<Index> order(static_cast<size_t>(m));
  for (Index i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&r](Index lhs, Index rhs) { return std::abs(r[lhs]) < std::abs(r[rhs]); });

  std::vector<Index> rows;
  Matrix basis(k, k);  // orthonormal accepted directions, column-stored
  Index count = 0;
  for (double threshold : {1e-8, 1e-13}) {
    for (Index pos = 0; pos < m && count < k; ++pos) {
      const Index i = order[static_cast<size_t>(pos)];
      if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
      Vector dir = b.row(i).transpose();
      const double scale = dir.norm();
      for (Index c = 0; c < count; ++c) dir -= basis.col(c).dot(dir) * basis.col(c);
      const double rem = dir.norm();
      if (rem > threshold * (scale + 1.0)) {
        basis.col(count) = dir / rem;
        rows.push_back(i);
        ++count;
      }
    }
    if (count == k) break;
  }
  return rows;
}

struct EdgeDescentResult {
  Vector z;
  bool converged;
  int steps;
};

/// Exact restricted LAD on a full-column-rank matrix. A handful of
/// coordinate sweeps approach the solution, then the walk moves between
/// vertices (points that zero k residuals): at each vertex the objective's
/// one-sided slopes along the 2k basis edges are the entries of
/// g = B_Z^{-T} sum_{i not in Z} sign(r_i) b_i against 1, so max|g| <= 1
/// certifies global optimality; otherwise the steepest edge is followed to
/// the next breakpoint with a weighted-median line search. Coordinate
/// descent alone can sit at a coordinate-wise minimum that is not optimal,
/// which is why the vertex phase is not optional.
EdgeDescentResult lad_edge_descent(const Matrix& b, const Vector& y, const SolverOptions& opts) {
  const Index m = b.rows();
  const Index k = b.cols();
  const double tol_gain = opts.lad_sweep_tolerance * (1.0 + y.lpNorm<1>());

  Vector z = Vector::Zero(k);
  Vector r = y;
  coordinate_sweeps(b, z, r, tol_gain, 5);
  Vector fallback = z;
  double fallback_obj = r.lpNorm<1>();

  std::vector<Index> vertex = initial_vertex_rows(b, r);
  if (static_cast<Index>(vertex.size()) < k) {
    // Row space degenerate beyond the caller's rank screening; keep the sweep iterate.
    return EdgeDescentResult{std::move(fallback), false, 0};
  }

  Matrix b_vertex(k, k);
  Vector y_vertex(k);
  Vector sign_mask(m), g(k), eta(k), direction(k), u(m);
  const int cap = lad_step_cap(opts, k);
  bool converged = false;
  int steps = 0;

  auto refresh = [&]() {
    for (Index i = 0; i < k; ++i) {
      b_vertex.row(i) = b.row(vertex[static_cast<size_t>(i)]);
      y_vertex[i] = y[vertex[static_cast<size_t>(i)]];
    }
    z = b_vertex.partialPivLu().solve(y_vertex);
    r = y - b * z;
    for (Index i : vertex) r[i] = 0.0;
  };
  refresh();

  int degenerate_run = 0;
  for (steps = 0; steps < cap; ++steps) {
    for (Index i = 0; i < m; ++i) sign_mask[i] = r[i] > 0.0 ? 1.0 : (r[i] < 0.0 ? -1.0 : 0.0);
    const Vector c = b.transpose() * sign_mask;
    g = b_vertex.transpose().partialPivLu().solve(c);

    Index p = -1;
    if (degenerate_run > static_cast<int>(k) + 4) {
      // Bland-style fallback after a run of zero-length steps.
      for (Index i = 0; i < k; ++i) {
        if (std::abs(g[i]) > 1.0 + kOptimalityTol) {
          p = i;
          break;
        }
      }
    } else {
      double best = 1.0 + kOptimalityTol;
      for (Index i = 0; i < k; ++i) {
        if (std::abs(g[i]) > best) {
          best = std::abs(g[i]);
          p = i;
        }
      }
    }
    if (p < 0) {
      converged = true;
      break;
    }

    eta.setZero();
    eta[p] = g[p] > 0.0 ? 1.0 : -1.0;
    direction = b_vertex.partialPivLu().solve(eta);
    u = b * direction;
    for (Index i = 0; i < k; ++i) u[vertex[static_cast<size_t>(i)]] = 0.0;
    u[vertex[static_cast<size_t>(p)]] = eta[p];

    const LadArgmin line = univariate_lad_argmin(r, u);
    Index q = line.index;
    if (q == vertex[static_cast<size_t>(p)]) {
      // The leaving row itself came back as the median (a tie at t = 0);
      // take the lowest other row with the same breakpoint.
      Index alt = -1;
      for (Index i = 0; i < m; ++i) {
        if (u[i] != 0.0 && i != q && std::abs(r[i] - line.t * u[i]) == 0.0) {
          alt = i;
          break;
        }
      }
      if (alt < 0) break;  // blocked edge; leave as not converged
      q = alt;
    }
    degenerate_run = line.t == 0.0 ? degenerate_run + 1 : 0;
    vertex[static_cast<size_t>(p)] = q;
    refresh();
  }

  const double obj = (y - b * z).lpNorm<1>();
  if (!converged && fallback_obj < obj) {
    return EdgeDescentResult{std::move(fallback), false, steps};
  }
  return EdgeDescentResult{std::move(z), converged, steps};
}

}  // namespace

LadFitResult lad_restricted(const DenseMatrix& a, const Vector& y, const SupportSet& s,
                            const SolverOptions& opts) {
  if (y.size() != a.rows()) throw DimensionMismatch("y length vs matrix rows");
  LadFitResult result{Vector::Zero(a.cols()), true, false, 0};
  if (s.empty()) return result;
  if (s.indices().back() >= a.cols()) throw IndexOutOfRange(s.indices().back(), a.cols());

  const Index m = a.rows();
  const Index k = s.size();
  Matrix sub(m, k);
  for (Index i = 0; i < k; ++i) {
    const Index j = s.indices()[static_cast<size_t>(i)];
    if (a.m().col(j).isZero(0.0)) throw ZeroColumn(j);
    sub.col(i) = a.m().col(j);
  }

  // Column screening: work on an independent column subset so the descent
  // sees a full-column-rank system; dependent or surplus columns stay zero.
  Eigen::ColPivHouseholderQR<Matrix> qr(sub);
  qr.setThreshold(kRankThreshold);
  const Index rank = qr.rank();
  result.rank_deficient = rank < k;

  std::vector<Index> cols(static_cast<size_t>(rank));
  for (Index i = 0; i < rank; ++i) cols[static_cast<size_t>(i)] = qr.colsPermutation().indices()[i];
  std::sort(cols.begin(), cols.end());

  Vector coef;
  if (rank >= m) {
    // Enough independent columns to interpolate: the minimum-norm exact fit
    // attains objective (near) zero, which is optimal.
    Matrix reduced(m, rank);
    for (Index i = 0; i < rank; ++i) reduced.col(i) = sub.col(cols[static_cast<size_t>(i)]);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(reduced);
    cod.setThreshold(kRankThreshold);
    coef = cod.solve(y);
    result.converged = true;
  } else {
    Matrix reduced(m, rank);
    for (Index i = 0; i < rank; ++i) reduced.col(i) = sub.col(cols[static_cast<size_t>(i)]);
    EdgeDescentResult descent = lad_edge_descent(reduced, y, opts);
    coef = std::move(descent.z);
    result.converged = descent.converged;
    result.steps = descent.steps;
  }

  for (Index i = 0; i < rank; ++i) {
    result.x[s.indices()[static_cast<size_t>(cols[static_cast<size_t>(i)])]] = coef[i];
  }
  return result;
}

const Vector& GreedyTrace::final_x() const {
  if (iterations.empty()) throw EmptySupport("trace has no iterations");
  return iterations.back().x;
}

Vector GreedyTrace::final_or_zero(Index n) const {
  if (iterations.empty()) return Vector::Zero(n);
  return iterations.back().x;
}

GreedyTrace omp_run(const LossSpec& spec, const DenseMatrix& a, const Vector& y, const Weights& w,
                    const SolverOptions& opts) {
  if (y.size() != a.rows()) throw DimensionMismatch("y length vs matrix rows");
  if (w.size() != a.cols()) throw DimensionMismatch("weights length vs matrix columns");
  if (opts.max_iterations < 0) throw InvalidParameter("max_iterations must be nonnegative");
  if (opts.restrict_to_complement && opts.max_iterations > a.cols()) {
    throw InvalidParameter("K cannot exceed N when the argmax is restricted to the complement");
  }

  const bool lad = spec.family == LossFamily::LadLasso;
  for (Index j = 0; j < a.cols(); ++j) {
    if (lad) {
      if (a.m().col(j).isZero(0.0)) throw ZeroColumn(j);
    } else if (std::abs(a.m().col(j).norm() - 1.0) > 1e-8) {
      throw NotNormalized(j);
    }
  }

  GreedyTrace trace;
  trace.iterations.reserve(static_cast<size_t>(opts.max_iterations));
  Vector x = Vector::Zero(a.cols());
  SupportSet support;

  for (int k = 1; k <= opts.max_iterations; ++k) {
    SelectionContext ctx = make_context(a, y, w, spec.lambda, x, support);
    const Vector scores = score_all(ctx, spec.family, spec.regularizer);

    Index selected = -1;
    double delta_max = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < scores.size(); ++j) {
      if (opts.restrict_to_complement && support.contains(j)) continue;
      if (scores[j] > delta_max) {  // strict: ties resolve to the lowest index
        delta_max = scores[j];
        selected = j;
      }
    }
    if (selected < 0) {
      trace.status = TerminalStatus::CompletedK;
      break;
    }
    if (opts.delta_tolerance > 0.0 && delta_max <= opts.delta_tolerance) {
      trace.status = TerminalStatus::DeltaBelowTol;
      return trace;
    }

    const bool already_in = support.contains(selected);
    SupportSet next_support = support;
    next_support.insert(selected);

    Vector x_next;
    bool degenerate = false;
    if (lad) {
      LadFitResult fit = lad_restricted(a, y, next_support, opts);
      x_next = std::move(fit.x);
      degenerate = fit.rank_deficient || !fit.converged;
    } else {
      LeastSquaresResult fit = least_squares_restricted(a, y, next_support);
      x_next = std::move(fit.x);
      degenerate = fit.rank_deficient;
    }

    const bool stalled = already_in && (x_next - x).lpNorm<Eigen::Infinity>() <= 1e-12;
    if (!stalled) {
      x = std::move(x_next);
      support = next_support;
    }

    const Vector r_fit = y - a.m() * x;
    const double fid = fidelity(spec.family, r_fit);
    const double reg_term = spec.regularizer == Regularizer::L1w ? weighted_l1_norm(x, w)
                                                                 : weighted_l0_norm(x, w);
    trace.iterations.push_back(IterationRecord{selected, support, x, fid,
                                               fid + spec.lambda * reg_term, delta_max, stalled,
                                               degenerate});
    if (stalled) {
      trace.status = TerminalStatus::Stalled;
      return trace;
    }
  }
  trace.status = TerminalStatus::CompletedK;
  return trace;
}

double relative_l2_error(const Vector& x_hat, const Vector& x_true) {
  if (x_hat.size() != x_true.size()) throw DimensionMismatch("estimate vs reference length");
  const double denom = x_true.norm();
  if (denom == 0.0) throw ZeroTruth();
  return (x_hat - x_true).norm() / denom;
}

}  // namespace womp
