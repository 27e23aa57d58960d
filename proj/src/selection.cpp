#include "womp/selection.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace womp {

namespace {

double clamp_nonnegative(double v) { return v > 0.0 ? v : 0.0; }

void check_index(const SelectionContext& ctx, Index j) {
  if (j < 0 || j >= ctx.a.cols()) throw IndexOutOfRange(j, ctx.a.cols());
}

// The in-support branches of the least-squares-family rules assume the
// iterate is fidelity-optimal on its support, i.e. the residual is orthogonal
// to the support columns.
[[maybe_unused]] bool orthogonal_on_support(const SelectionContext& ctx, Index j) {
  return std::abs(ctx.correlations[j]) <= 1e-9 * ctx.y.norm() + 1e-14;
}

}  // namespace

SelectionContext make_context(const DenseMatrix& a, const Vector& y, const Weights& w,
                              double lambda, Vector x, SupportSet support) {
  if (y.size() != a.rows()) throw DimensionMismatch("y length vs matrix rows");
  if (x.size() != a.cols()) throw DimensionMismatch("x length vs matrix columns");
  if (w.size() != a.cols()) throw DimensionMismatch("weights length vs matrix columns");
  if (!support.empty() && support.indices().back() >= a.cols()) {
    throw IndexOutOfRange(support.indices().back(), a.cols());
  }
  Vector r = y - a.m() * x;
  Vector corr = a.m().transpose() * r;
  const double n2 = r.norm();
  const double n1 = r.lpNorm<1>();
  return SelectionContext{a.m(),  y,  w.v(), lambda, std::move(x), std::move(support),
                          std::move(r), n2, n1, std::move(corr)};
}

AugmentedColumnView make_augmented_column(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  const Index m = ctx.a.rows();
  AugmentedColumnView view{j, Vector(m + 1), Vector(m + 1)};
  view.a_tilde.head(m) = ctx.a.col(j);
  view.a_tilde[m] = ctx.lambda * ctx.w[j];
  view.r_tilde.head(m) = ctx.r;
  view.r_tilde[m] = -ctx.lambda * ctx.w[j] * ctx.x[j];
  return view;
}

LadArgmin univariate_lad_argmin(const Vector& y, const Vector& a) {
  if (y.size() != a.size()) throw DimensionMismatch("univariate LAD inputs");

  // Entries outside the support of a contribute a constant; the objective in
  // t is piecewise linear with breakpoints y_i/a_i and slope weights |a_i|.
  struct Entry {
    double ratio;
    double weight;
    Index i;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<size_t>(a.size()));
  double total_weight = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) {
      entries.push_back(Entry{y[i] / a[i], std::abs(a[i]), i});
      total_weight += std::abs(a[i]);
    }
  }
  if (entries.empty()) throw ZeroVector("univariate LAD direction");

  // Stable sort on the ratio alone: equal ratios keep ascending original
  // index, which pins the minimizer choice among ties.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& lhs, const Entry& rhs) { return lhs.ratio < rhs.ratio; });

  double cumulative = 0.0;
  for (const Entry& e : entries) {
    cumulative += e.weight;
    if (2.0 * cumulative >= total_weight) {
      return LadArgmin{y[e.i] / a[e.i], e.i};
    }
  }
  const Entry& last = entries.back();  // unreachable barring roundoff on the final sum
  return LadArgmin{y[last.i] / a[last.i], last.i};
}

double delta_lasso_l1(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  const double lw = ctx.lambda * ctx.w[j];
  if (!ctx.support.contains(j)) {
    const double gain = std::abs(ctx.correlations[j]) - 0.5 * lw;
    return gain > 0.0 ? gain * gain : 0.0;
  }
  assert(orthogonal_on_support(ctx, j));
  const double xa = std::abs(ctx.x[j]);
  const double remove = xa * (lw - xa);
  const double shrink = lw * (xa - 0.25 * lw - std::abs(xa - 0.5 * lw));
  return std::max({remove, shrink, 0.0});
}

double delta_srlasso_l1(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  const double lw = ctx.lambda * ctx.w[j];
  const double rn = ctx.r_norm2;
  if (!ctx.support.contains(j)) {
    const double c = std::abs(ctx.correlations[j]);
    // The 1-D profile h(rho) = sqrt(rn^2 + rho^2 - 2 rho c) + lw rho is
    // convex; its stationary point is positive only when c > lw * rn (and
    // lw < 1). Otherwise rho = 0 is the minimizer and nothing is gained.
    if (lw >= 1.0 || c <= lw * rn) return 0.0;
    const double radicand = clamp_nonnegative((1.0 - lw * lw) * (rn * rn - c * c));
    return clamp_nonnegative(rn - lw * c - std::sqrt(radicand));
  }
  assert(orthogonal_on_support(ctx, j));
  const double xa = std::abs(ctx.x[j]);
  double rho;
  if (lw >= 1.0) {
    rho = xa;
  } else {
    rho = std::min(xa, lw * rn / std::sqrt(1.0 - lw * lw));
  }
  const double value = rn - std::sqrt(rho * rho + rn * rn) + lw * (xa - std::abs(xa - rho));
  return clamp_nonnegative(value);
}

double delta_ladlasso_l1(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  if (ctx.a.col(j).isZero(0.0)) throw ZeroColumn(j);
  const AugmentedColumnView aug = make_augmented_column(ctx, j);
  const LadArgmin best = univariate_lad_argmin(aug.r_tilde, aug.a_tilde);
  const double fitted = (aug.r_tilde - best.t * aug.a_tilde).lpNorm<1>();
  const double value = ctx.lambda * ctx.w[j] * std::abs(ctx.x[j]) + ctx.r_norm1 - fitted;
  return clamp_nonnegative(value);
}

double delta_lasso_l0(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  const double lw2 = ctx.lambda * ctx.w[j] * ctx.w[j];
  if (!ctx.support.contains(j)) {
    const double c = ctx.correlations[j];
    return clamp_nonnegative(c * c - lw2);
  }
  assert(orthogonal_on_support(ctx, j));
  if (ctx.x[j] != 0.0) return clamp_nonnegative(lw2 - ctx.x[j] * ctx.x[j]);
  return 0.0;
}

double delta_srlasso_l0(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  const double lw2 = ctx.lambda * ctx.w[j] * ctx.w[j];
  const double rn = ctx.r_norm2;
  if (!ctx.support.contains(j)) {
    const double c = ctx.correlations[j];
    // Cauchy-Schwarz keeps rn^2 - c^2 nonnegative; clamp roundoff.
    const double radicand = clamp_nonnegative(rn * rn - c * c);
    return clamp_nonnegative(rn - std::sqrt(radicand) - lw2);
  }
  assert(orthogonal_on_support(ctx, j));
  if (ctx.x[j] != 0.0) {
    return clamp_nonnegative(rn + lw2 - std::sqrt(rn * rn + ctx.x[j] * ctx.x[j]));
  }
  return 0.0;
}

double delta_ladlasso_l0(const SelectionContext& ctx, Index j) {
  check_index(ctx, j);
  if (ctx.a.col(j).isZero(0.0)) throw ZeroColumn(j);
  const double lw2 = ctx.lambda * ctx.w[j] * ctx.w[j];
  // Unlike the l1 variant, the median runs on the raw column: the penalty is
  // a fixed charge, not a linear term, so no augmented row appears.
  const LadArgmin best = univariate_lad_argmin(ctx.r, ctx.a.col(j));
  const double median_gain = ctx.r_norm1 - (ctx.r - best.t * ctx.a.col(j)).lpNorm<1>();
  if (!ctx.support.contains(j) || ctx.x[j] == 0.0) {
    return clamp_nonnegative(median_gain - lw2);
  }
  const double drop_gain = ctx.r_norm1 - (ctx.r + ctx.x[j] * ctx.a.col(j)).lpNorm<1>() + lw2;
  return clamp_nonnegative(std::max(median_gain, drop_gain));
}

double delta(const SelectionContext& ctx, LossFamily family, Regularizer reg, Index j) {
  switch (family) {
    case LossFamily::Lasso:
      return reg == Regularizer::L1w ? delta_lasso_l1(ctx, j) : delta_lasso_l0(ctx, j);
    case LossFamily::SrLasso:
      return reg == Regularizer::L1w ? delta_srlasso_l1(ctx, j) : delta_srlasso_l0(ctx, j);
    case LossFamily::LadLasso:
      return reg == Regularizer::L1w ? delta_ladlasso_l1(ctx, j) : delta_ladlasso_l0(ctx, j);
  }
  throw InvalidParameter("unknown loss family");
}

Vector score_all(const SelectionContext& ctx, LossFamily family, Regularizer reg) {
  Vector scores(ctx.a.cols());
  for (Index j = 0; j < ctx.a.cols(); ++j) scores[j] = delta(ctx, family, reg, j);
  return scores;
}

}  // namespace womp
