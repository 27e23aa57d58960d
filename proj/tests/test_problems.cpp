#include "womp/problems.hpp"

#include "womp/rng.hpp"
#include "womp/solvers.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace womp;

TEST_SUITE("problems") {

TEST_CASE("gaussian generator: dimensions, exact noise norm, corruption count") {
  const auto inst = gen_gaussian_sparse(300, 150, 10, 1e-3, 0.0, 0, 42);
  CHECK(inst.a.rows() == 150);
  CHECK(inst.a.cols() == 300);
  REQUIRE(inst.x_true.has_value());
  Index nnz = 0;
  for (Index j = 0; j < 300; ++j) nnz += (*inst.x_true)[j] != 0.0;
  CHECK(nnz == 10);
  REQUIRE(inst.noise.has_value());
  CHECK(inst.noise->bounded.norm() == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(inst.noise->unbounded.isZero());
  for (Index j = 0; j < 300; ++j) {
    CHECK(inst.a.m().col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // measurement identity
  const Vector recon =
      inst.a.m() * (*inst.x_true) + inst.noise->bounded + inst.noise->unbounded;
  CHECK((inst.y - recon).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("gaussian generator: trivial all-zero instance") {
  const auto inst = gen_gaussian_sparse(20, 10, 0, 0.0, 0.0, 0, 7);
  CHECK(inst.y.isZero());
  CHECK(inst.x_true->isZero());
}

TEST_CASE("gaussian generator: corruption positions are distinct and counted") {
  const auto inst = gen_gaussian_sparse(50, 30, 5, 1e-3, 100.0, 6, 99);
  Index corrupted = 0;
  for (Index i = 0; i < 30; ++i) corrupted += inst.noise->unbounded[i] != 0.0;
  CHECK(corrupted == 6);
}

TEST_CASE("gaussian generator is deterministic in the seed") {
  const auto a = gen_gaussian_sparse(40, 20, 4, 1e-2, 50.0, 3, 1234);
  const auto b = gen_gaussian_sparse(40, 20, 4, 1e-2, 50.0, 3, 1234);
  CHECK(a.a.m() == b.a.m());
  CHECK(a.y == b.y);
  CHECK(*a.x_true == *b.x_true);
}

TEST_CASE("gaussian generator validates parameters") {
  CHECK_THROWS_AS(gen_gaussian_sparse(10, 5, 11, 0, 0, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(gen_gaussian_sparse(10, 5, 2, 0, 0, 6, 1), InvalidParameter);
}

TEST_CASE("oracle weights") {
  SUBCASE("zero fraction gives unit weights") {
    const auto w = gen_oracle_weights({1, 5, 9}, 0.0, 1e-3, 20, 3);
    CHECK(w.v() == Vector::Ones(20));
  }
  SUBCASE("w0=1 gives unit weights regardless of the draw") {
    const auto w = gen_oracle_weights({1, 5, 9}, 1.0, 1.0, 20, 3);
    CHECK(w.v() == Vector::Ones(20));
  }
  SUBCASE("half of s=10 gives exactly five downweighted entries") {
    std::vector<Index> support{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    const auto w = gen_oracle_weights(support, 0.5, 1e-3, 30, 11);
    Index small = 0;
    for (Index j = 0; j < 30; ++j) {
      if (w[j] != 1.0) {
        CHECK(w[j] == doctest::Approx(1e-3));
        CHECK(std::find(support.begin(), support.end(), j) != support.end());
        ++small;
      }
    }
    CHECK(small == 5);
  }
  SUBCASE("empty support with positive fraction fails") {
    CHECK_THROWS_AS(gen_oracle_weights({}, 0.5, 1e-3, 20, 3), EmptySupport);
  }
}

TEST_CASE("hyperbolic cross sizes") {
  const auto line = hyperbolic_cross(1, 5);
  CHECK(line.size() == 6);
  for (Index i = 0; i < 6; ++i) CHECK(line[i][0] == static_cast<int>(i));

  CHECK(hyperbolic_cross(5, 18).size() == 426);
  CHECK(hyperbolic_cross(10, 8).size() == 471);
  CHECK(hyperbolic_cross(3, 0).size() == 1);
}

TEST_CASE("hyperbolic cross members satisfy the product bound, without duplicates") {
  const auto set = hyperbolic_cross(4, 6);
  for (Index i = 0; i < set.size(); ++i) {
    long long prod = 1;
    for (int v : set[i]) prod *= v + 1;
    CHECK(prod <= 7);
    if (i > 0) CHECK(set[static_cast<Index>(i - 1)] != set[i]);
  }
}

TEST_CASE("legendre basis values") {
  Vector t1(1);
  t1 << 1.0;
  CHECK(legendre_eval({0}, t1) == doctest::Approx(1.0));
  CHECK(legendre_eval({1}, t1) == doctest::Approx(std::sqrt(3.0)));

  Vector t2(2);
  t2 << 0.3, -0.8;
  CHECK(legendre_eval({0, 0}, t2) == doctest::Approx(1.0));

  Vector bad(1);
  bad << 1.5;
  CHECK_THROWS_AS(legendre_eval({2}, bad), OutOfDomain);
}

TEST_CASE("legendre recurrence matches the closed forms up to degree 4") {
  const auto closed = [](int n, double t) {
    switch (n) {
      case 0: return 1.0;
      case 1: return t;
      case 2: return (3 * t * t - 1) / 2;
      case 3: return (5 * t * t * t - 3 * t) / 2;
      default: return (35 * t * t * t * t - 30 * t * t + 3) / 8;
    }
  };
  for (int n = 0; n <= 4; ++n) {
    for (double t = -1.0; t <= 1.0 + 1e-9; t += 0.125) {
      Vector point(1);
      point << t;
      CHECK(legendre_eval({n}, point) ==
            doctest::Approx(std::sqrt(2.0 * n + 1.0) * closed(n, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("legendre basis is orthonormal under Monte Carlo quadrature") {
  Rng rng(404);
  const Index q = 100000;
  constexpr int kMaxDegree = 5;
  Matrix vals(q, kMaxDegree + 1);
  Vector point(1);
  for (Index i = 0; i < q; ++i) {
    point[0] = rng.uniform(-1.0, 1.0);
    for (int n = 0; n <= kMaxDegree; ++n) vals(i, n) = legendre_eval({n}, point);
  }
  for (int a = 0; a <= kMaxDegree; ++a) {
    for (int b = a; b <= kMaxDegree; ++b) {
      const double dot = vals.col(a).dot(vals.col(b)) / static_cast<double>(q);
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 0.05);
    }
  }
}

TEST_CASE("intrinsic weights") {
  const auto set = hyperbolic_cross(2, 3);
  const auto w = intrinsic_weights(set);
  // the constant term leads the graded-lex order
  CHECK(set[0] == MultiIndex{0, 0});
  CHECK(w[0] == doctest::Approx(1.0));
  for (Index j = 0; j < set.size(); ++j) {
    if (set[j] == MultiIndex{1, 1}) CHECK(w[j] == doctest::Approx(3.0));
  }
}

TEST_CASE("intrinsic weights match a dense grid sup") {
  Rng rng(405);
  const MultiIndexSet set(3, {{2, 0, 1}, {1, 3, 0}, {0, 0, 4}});
  const auto w = intrinsic_weights(set);
  for (Index j = 0; j < set.size(); ++j) {
    double sup = 0.0;
    Vector t(3);
    constexpr int kGrid = 201;
    for (int i0 = 0; i0 < kGrid; ++i0) {
      t[0] = -1.0 + 2.0 * i0 / (kGrid - 1);
      for (int i1 = 0; i1 < kGrid; ++i1) {
        t[1] = -1.0 + 2.0 * i1 / (kGrid - 1);
        for (int i2 = 0; i2 < kGrid; ++i2) {
          t[2] = -1.0 + 2.0 * i2 / (kGrid - 1);
          sup = std::max(sup, std::abs(legendre_eval(set[j], t)));
        }
      }
    }
    CHECK(w[j] == doctest::Approx(sup).epsilon(0.01));
  }
}

TEST_CASE("iso-exponential values") {
  Vector zero3 = Vector::Zero(3);
  CHECK(iso_exponential(zero3) == doctest::Approx(1.0));
  Vector far(2);
  far << 0.5, -1.2;
  CHECK_THROWS_AS(iso_exponential(far), OutOfDomain);
  Vector one1(1);
  one1 << 1.0;
  CHECK(iso_exponential(one1) == doctest::Approx(std::exp(-0.5)));
  Vector ones7 = Vector::Ones(7);
  CHECK(iso_exponential(ones7) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("function approximation generator shapes and determinism") {
  const auto set = hyperbolic_cross(5, 18);
  const auto inst = gen_function_approx(iso_exponential, set, 200, 0.0, 0.0, 0, 2024);
  CHECK(inst.a.rows() == 200);
  CHECK(inst.a.cols() == 426);
  CHECK_FALSE(inst.x_true.has_value());
  CHECK(inst.w.size() == 426);

  const auto inst2 = gen_function_approx(iso_exponential, set, 200, 0.0, 0.0, 0, 2024);
  CHECK(inst.a.m() == inst2.a.m());
  CHECK(inst.y == inst2.y);
}

TEST_CASE("a constant target is recovered by one greedy iteration") {
  const auto set = hyperbolic_cross(3, 4);
  const auto constant = [](const Vector&) { return 1.0; };
  const auto inst = gen_function_approx(constant, set, 40, 0.0, 0.0, 0, 5);
  const auto normalized = normalize_columns(inst.a);
  SolverOptions opts;
  opts.max_iterations = 1;
  const auto trace = omp_run(LossSpec(LossFamily::Lasso, Regularizer::L1w, 0.0),
                             normalized.matrix, inst.y, inst.w, opts);
  Vector x = trace.final_x().cwiseQuotient(normalized.scales);
  CHECK(x[0] == doctest::Approx(1.0));  // constant basis element leads the order
  x[0] = 0.0;
  CHECK(x.isZero());
}

TEST_CASE("monte carlo error estimate") {
  const auto set = hyperbolic_cross(2, 5);
  SUBCASE("an exact expansion scores zero") {
    const MultiIndex nu = set[3];
    const auto f = [&nu](const Vector& t) { return legendre_eval(nu, t); };
    Vector x = Vector::Zero(set.size());
    x[3] = 1.0;
    CHECK(l2_error_estimate_mc(f, set, x, 2000, 9) <= 1e-12);
  }
  SUBCASE("the zero expansion scores one") {
    CHECK(l2_error_estimate_mc(iso_exponential, set, Vector::Zero(set.size()), 2000, 9) ==
          doctest::Approx(1.0));
  }
  SUBCASE("a vanishing target cannot be normalized") {
    const auto zero_f = [](const Vector&) { return 0.0; };
    CHECK_THROWS_AS(l2_error_estimate_mc(zero_f, set, Vector::Zero(set.size()), 100, 9),
                    ZeroFunction);
  }
  SUBCASE("two disjoint large samples agree") {
    Vector x = Vector::Zero(set.size());
    x[0] = 0.9;
    x[1] = -0.1;
    const double e1 = l2_error_estimate_mc(iso_exponential, set, x, 100000, 17);
    const double e2 = l2_error_estimate_mc(iso_exponential, set, x, 100000, 18);
    CHECK(std::abs(e1 - e2) <= 0.02 * std::max(e1, e2));
  }
}

TEST_CASE("instance files round trip") {
  const auto inst = gen_gaussian_sparse(12, 8, 3, 1e-2, 10.0, 2, 77);
  const std::string path =
      (std::filesystem::temp_directory_path() / "womp_instance_test.json").string();
  save_instance(inst, path);
  const auto loaded = load_instance(path);
  CHECK(loaded.a.m() == inst.a.m());
  CHECK(loaded.y == inst.y);
  CHECK(loaded.w.v() == inst.w.v());
  CHECK(*loaded.x_true == *inst.x_true);
  CHECK(loaded.noise->bounded == inst.noise->bounded);
  CHECK(loaded.noise->unbounded == inst.noise->unbounded);
  CHECK(loaded.meta.setting == "gaussian-sparse");
  CHECK(loaded.meta.seed == 77);
  std::remove(path.c_str());
}

}  // TEST_SUITE
