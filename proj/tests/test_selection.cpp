#include "womp/selection.hpp"

#include "oracles.hpp"
#include "womp/rng.hpp"
#include "womp/solvers.hpp"

#include <doctest.h>

using namespace womp;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

struct ContextFixture {
  DenseMatrix a;
  Vector y;
  Weights w;
  SupportSet support;
  Vector x_ls;
  Vector x_lad;
};

ContextFixture random_fixture(Rng& rng, Index m, Index n, Index support_size, bool varied_weights) {
  DenseMatrix a = testing::random_normalized_matrix(m, n, rng);
  Vector y(m);
  for (Index i = 0; i < m; ++i) y[i] = rng.normal();
  Vector wv = Vector::Ones(n);
  if (varied_weights) {
    for (Index j = 0; j < n; ++j) wv[j] = rng.uniform(0.5, 2.0);
  }
  SupportSet s(rng.sample_without_replacement(n, support_size));
  Vector x_ls = least_squares_restricted(a, y, s).x;
  Vector x_lad = lad_restricted(a, y, s, SolverOptions{}).x;
  return ContextFixture{std::move(a), std::move(y), Weights(std::move(wv)), std::move(s),
                        std::move(x_ls), std::move(x_lad)};
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("univariate LAD argmin: unweighted median of three") {
  const auto best = univariate_lad_argmin(vec({1, 2, 3}), vec({1, 1, 1}));
  CHECK(best.t == doctest::Approx(2.0));
  CHECK(best.index == 1);
}

TEST_CASE("univariate LAD argmin: a dominant weight wins immediately") {
  const auto best = univariate_lad_argmin(vec({1, 2, 3}), vec({10, 1, 1}));
  CHECK(best.t == doctest::Approx(0.1));
  CHECK(best.index == 0);
}

TEST_CASE("univariate LAD argmin rejects the zero direction") {
  CHECK_THROWS_AS(univariate_lad_argmin(vec({1, 2}), vec({0, 0})), ZeroVector);
}

TEST_CASE("univariate LAD argmin beats a dense grid") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    Vector y(7), a(7);
    for (Index i = 0; i < 7; ++i) {
      y[i] = rng.normal();
      do {
        a[i] = rng.normal();
      } while (a[i] == 0.0);
    }
    const auto best = univariate_lad_argmin(y, a);
    const double mine = (y - best.t * a).lpNorm<1>();
    const double grid = testing::lad_univariate_grid_minimum(y, a, 10000);
    CHECK(mine <= grid + 1e-10);
  }
}

TEST_CASE("lasso-l1 reduction: identity matrix example") {
  const DenseMatrix eye(Matrix::Identity(2, 2));
  const auto ctx =
      make_context(eye, vec({1, 0}), Weights::ones(2), 0.5, Vector::Zero(2), SupportSet{});
  CHECK(delta_lasso_l1(ctx, 0) == doctest::Approx(0.5625));
}

TEST_CASE("lambda=0 out-of-support reductions are squared correlations") {
  Rng rng(102);
  const auto fix = random_fixture(rng, 8, 12, 3, true);
  const auto ctx = make_context(fix.a, fix.y, fix.w, 0.0, fix.x_ls, fix.support);
  for (Index j = 0; j < 12; ++j) {
    if (fix.support.contains(j)) continue;
    const double c = ctx.correlations[j];
    CHECK(delta_lasso_l1(ctx, j) == doctest::Approx(c * c));
    CHECK(delta_lasso_l0(ctx, j) == doctest::Approx(c * c));
  }
}

TEST_CASE("srlasso-l1 reduction: residual parallel to a column") {
  const DenseMatrix eye(Matrix::Identity(2, 2));
  const auto ctx =
      make_context(eye, vec({1, 0}), Weights::ones(2), 0.5, Vector::Zero(2), SupportSet{});
  CHECK(delta_srlasso_l1(ctx, 0) == doctest::Approx(0.5));
}

TEST_CASE("srlasso-l1 reduction: lambda w >= 1 out of support gives zero") {
  Rng rng(103);
  const auto fix = random_fixture(rng, 8, 12, 2, false);
  const auto ctx = make_context(fix.a, fix.y, fix.w, 2.0, fix.x_ls, fix.support);
  for (Index j = 0; j < 12; ++j) {
    if (!fix.support.contains(j)) CHECK(delta_srlasso_l1(ctx, j) == 0.0);
  }
}

TEST_CASE("srlasso-l0 trivia") {
  SUBCASE("zero residual means zero reduction") {
    const DenseMatrix eye(Matrix::Identity(2, 2));
    const auto ctx = make_context(eye, vec({1.0, 2.0}), Weights::ones(2), 0.3,
                                  vec({1.0, 2.0}), SupportSet{0, 1});
    for (Index j = 0; j < 2; ++j) CHECK(delta_srlasso_l0(ctx, j) == 0.0);
  }
  SUBCASE("identity example") {
    const DenseMatrix eye(Matrix::Identity(2, 2));
    const auto ctx =
        make_context(eye, vec({1, 0}), Weights::ones(2), 0.3, Vector::Zero(2), SupportSet{});
    CHECK(delta_srlasso_l0(ctx, 0) == doctest::Approx(0.7));
  }
}

TEST_CASE("ladlasso-l1 trivia") {
  SUBCASE("exact 1-D fit at lambda=0") {
    const DenseMatrix eye(Matrix::Identity(2, 2));
    const auto ctx =
        make_context(eye, vec({1, 0}), Weights::ones(2), 0.0, Vector::Zero(2), SupportSet{});
    CHECK(delta_ladlasso_l1(ctx, 0) == doctest::Approx(1.0));
  }
  SUBCASE("no single move improves an LAD optimum at lambda=0") {
    Rng rng(104);
    const auto fix = random_fixture(rng, 6, 10, 3, false);
    const auto ctx = make_context(fix.a, fix.y, fix.w, 0.0, fix.x_lad, fix.support);
    for (Index j : fix.support) {
      CHECK(delta_ladlasso_l1(ctx, j) <= 1e-9);
    }
  }
}

TEST_CASE("lasso-l0 in-support zero coefficient gives zero") {
  Matrix a(3, 3);
  a.setIdentity();
  Vector y = vec({1, 0, 0});
  // support {0,1} with y orthogonal to column 1 -> x_1 = 0 exactly
  const DenseMatrix mat(a);
  const auto fit = least_squares_restricted(mat, y, SupportSet{0, 1});
  const auto ctx = make_context(mat, y, Weights::ones(3), 0.7, fit.x, SupportSet{0, 1});
  CHECK(ctx.x[1] == 0.0);
  CHECK(delta_lasso_l0(ctx, 1) == 0.0);
}

TEST_CASE("ladlasso-l0 agrees with ladlasso-l1 when lambda=0") {
  Rng rng(105);
  const auto fix = random_fixture(rng, 6, 10, 0, true);
  const auto ctx =
      make_context(fix.a, fix.y, fix.w, 0.0, Vector::Zero(10), SupportSet{});
  for (Index j = 0; j < 10; ++j) {
    CHECK(delta_ladlasso_l0(ctx, j) == doctest::Approx(delta_ladlasso_l1(ctx, j)));
  }
}

TEST_CASE("ladlasso-l0 in-support with zero residual") {
  // exact fit on the support: the median move gains nothing, dropping the
  // coefficient trades the fidelity increase against the saved penalty
  const DenseMatrix eye(Matrix::Identity(2, 2));
  const Vector y = vec({1.5, 0.0});
  const auto fit = lad_restricted(eye, y, SupportSet{0}, SolverOptions{});
  SUBCASE("penalty below the cost keeps the coefficient") {
    const auto ctx = make_context(eye, y, Weights::ones(2), 0.5, fit.x, SupportSet{0});
    CHECK(delta_ladlasso_l0(ctx, 0) == doctest::Approx(0.0));
  }
  SUBCASE("penalty above the cost drops it") {
    const auto ctx = make_context(eye, y, Weights::ones(2), 2.0, fit.x, SupportSet{0});
    CHECK(delta_ladlasso_l0(ctx, 0) == doctest::Approx(2.0 - 1.5));
  }
}

TEST_CASE("index bounds are checked") {
  const DenseMatrix eye(Matrix::Identity(2, 2));
  const auto ctx =
      make_context(eye, vec({1, 0}), Weights::ones(2), 0.1, Vector::Zero(2), SupportSet{});
  CHECK_THROWS_AS(delta_lasso_l1(ctx, 2), IndexOutOfRange);
  CHECK_THROWS_AS(delta_ladlasso_l0(ctx, -1), IndexOutOfRange);
}

TEST_CASE("oracle identity: closed forms equal the grid search for all six rules") {
  Rng rng(106);
  const double lambdas[] = {0.0, 0.05, 0.5, 2.0};
  for (int trial = 0; trial < 12; ++trial) {
    const double lambda = lambdas[trial % 4];
    const auto fix = random_fixture(rng, 8, 12, 1 + trial % 4, true);
    for (LossFamily family : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
      for (Regularizer reg : {Regularizer::L1w, Regularizer::L0w}) {
        const Vector& x = family == LossFamily::LadLasso ? fix.x_lad : fix.x_ls;
        const auto ctx = make_context(fix.a, fix.y, fix.w, lambda, x, fix.support);
        const LossSpec spec(family, reg, lambda);
        for (Index j = 0; j < 12; ++j) {
          const double closed = delta(ctx, family, reg, j);
          const double oracle = testing::grid_loss_reduction(spec, fix.a, fix.y, fix.w, x, j);
          CAPTURE(rule_name(family, reg));
          CAPTURE(lambda);
          CAPTURE(j);
          CHECK(std::abs(closed - oracle) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("every reduction is nonnegative") {
  Rng rng(107);
  for (int trial = 0; trial < 6; ++trial) {
    const auto fix = random_fixture(rng, 8, 12, 2, true);
    const double lambda = rng.uniform(0.0, 3.0);
    for (LossFamily family : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
      const Vector& x = family == LossFamily::LadLasso ? fix.x_lad : fix.x_ls;
      const auto ctx = make_context(fix.a, fix.y, fix.w, lambda, x, fix.support);
      for (Regularizer reg : {Regularizer::L1w, Regularizer::L0w}) {
        for (Index j = 0; j < 12; ++j) CHECK(delta(ctx, family, reg, j) >= 0.0);
      }
    }
  }
}

TEST_CASE("out-of-support reductions are nonincreasing in the weight") {
  Rng rng(108);
  const auto fix = random_fixture(rng, 8, 12, 2, false);
  const double lambda = 0.4;
  for (LossFamily family : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
    for (Regularizer reg : {Regularizer::L1w, Regularizer::L0w}) {
      const Vector& x = family == LossFamily::LadLasso ? fix.x_lad : fix.x_ls;
      Vector wv = Vector::Ones(12);
      std::vector<double> values;
      for (double weight : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        wv.setConstant(weight);
        const auto ctx = make_context(fix.a, fix.y, Weights(wv), lambda, x, fix.support);
        for (Index j = 0; j < 12; ++j) {
          if (fix.support.contains(j)) continue;
          values.push_back(delta(ctx, family, reg, j));
        }
      }
      const size_t per_pass = values.size() / 5;
      for (size_t pass = 1; pass < 5; ++pass) {
        for (size_t i = 0; i < per_pass; ++i) {
          CHECK(values[pass * per_pass + i] <= values[(pass - 1) * per_pass + i] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("augmented column drops its last row at lambda=0") {
  Rng rng(109);
  const auto fix = random_fixture(rng, 6, 10, 2, true);
  const auto ctx = make_context(fix.a, fix.y, fix.w, 0.0, fix.x_lad, fix.support);
  for (Index j = 0; j < 10; ++j) {
    const auto aug = make_augmented_column(ctx, j);
    CHECK(aug.a_tilde[6] == 0.0);
    CHECK(aug.r_tilde[6] == 0.0);
    const auto full = univariate_lad_argmin(aug.r_tilde, aug.a_tilde);
    const auto bare = univariate_lad_argmin(ctx.r, ctx.a.col(j));
    CHECK(full.t == doctest::Approx(bare.t));
    CHECK(full.index == bare.index);
  }
}

TEST_CASE("score_all matches the scalar rules") {
  Rng rng(110);
  const auto fix = random_fixture(rng, 8, 12, 3, true);
  for (LossFamily family : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
    const Vector& x = family == LossFamily::LadLasso ? fix.x_lad : fix.x_ls;
    const auto ctx = make_context(fix.a, fix.y, fix.w, 0.3, x, fix.support);
    for (Regularizer reg : {Regularizer::L1w, Regularizer::L0w}) {
      const Vector scores = score_all(ctx, family, reg);
      REQUIRE(scores.size() == 12);
      for (Index j = 0; j < 12; ++j) CHECK(scores[j] == delta(ctx, family, reg, j));
    }
  }
}

TEST_CASE("score_all on a single column") {
  Matrix a(3, 1);
  a << 1.0, 0.0, 0.0;
  const auto ctx = make_context(DenseMatrix(a), vec({2, 1, 0}), Weights::ones(1), 0.1,
                                Vector::Zero(1), SupportSet{});
  const Vector scores = score_all(ctx, LossFamily::Lasso, Regularizer::L1w);
  CHECK(scores.size() == 1);
  CHECK(scores[0] == delta_lasso_l1(ctx, 0));
}

TEST_CASE("all-zero data scores zero at lambda=0") {
  Rng rng(111);
  const DenseMatrix a = testing::random_normalized_matrix(5, 9, rng);
  const auto ctx =
      make_context(a, Vector::Zero(5), Weights::ones(9), 0.0, Vector::Zero(9), SupportSet{});
  for (LossFamily family : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
    for (Regularizer reg : {Regularizer::L1w, Regularizer::L0w}) {
      CHECK(score_all(ctx, family, reg).isZero());
    }
  }
}

}  // TEST_SUITE
