#pragma once

#include "womp/linalg.hpp"
#include "womp/losses.hpp"
#include "womp/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace womp {

using MultiIndex = std::vector<int>;

/// Ordered set of d-dimensional multi-indices in graded lexicographic order
/// (total degree first, then lexicographic).
class MultiIndexSet {
 public:
  MultiIndexSet(int d, std::vector<MultiIndex> indices);

  int dim() const { return d_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  const MultiIndex& operator[](Index i) const { return indices_[static_cast<size_t>(i)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

 private:
  int d_;
  std::vector<MultiIndex> indices_;
};

/// All multi-indices nu with prod_k (nu_k + 1) <= order + 1.
MultiIndexSet hyperbolic_cross(int d, int order);

struct NoiseParts {
  Vector bounded;    // Gaussian direction rescaled so its norm is exactly eta
  Vector unbounded;  // k_corrupt entries drawn from N(0, M^2), the rest zero
};

struct InstanceMeta {
  std::string setting;
  std::uint64_t seed = 0;
  Index n = 0, m = 0, s = 0;
  int d = 0, hc_order = 0;
  double eta = 0.0, corruption_magnitude = 0.0;
  Index k_corrupt = 0;
  double w0 = 1.0, oracle_fraction = 0.0;
};

struct ProblemInstance {
  DenseMatrix a;
  Vector y;
  Weights w;
  std::optional<Vector> x_true;
  std::optional<NoiseParts> noise;
  InstanceMeta meta;
};

/// s-sparse signal with standard normal entries on a uniformly drawn support,
/// measured through a column-normalized Gaussian matrix; bounded noise has
/// Euclidean norm exactly eta, and k_corrupt distinct rows receive N(0, M^2)
/// corruptions. Unit weights.
ProblemInstance gen_gaussian_sparse(Index n, Index m, Index s, double eta, double corruption_m,
                                    Index k_corrupt, std::uint64_t seed);

/// Weight vector equal to w0 on a uniformly drawn floor(known_fraction * s)
/// subset of the true support and 1 elsewhere.
Weights gen_oracle_weights(const std::vector<Index>& true_support, double known_fraction,
                           double w0, Index n, std::uint64_t seed);

/// Tensor-product Legendre basis, orthonormal for the uniform probability
/// measure on [-1,1]^d: each univariate factor is sqrt(2n+1) P_n(t).
double legendre_eval(const MultiIndex& nu, const Vector& t);

/// Sup norms of the basis functions: prod_k sqrt(2 nu_k + 1), attained at the
/// corner of the cube.
Weights intrinsic_weights(const MultiIndexSet& lambda);

/// exp(-sum_i t_i / (2d)) on [-1,1]^d.
double iso_exponential(const Vector& t);

/// Sampling matrix A_ij = Psi_j(t_i)/sqrt(m), data y_i = f(t_i)/sqrt(m) with
/// uniform sample points, plus the Gaussian-setting noise recipe. Weights are
/// the intrinsic weights; no ground-truth coefficients. Columns are NOT
/// normalized here; normalize before solving and unscale the coefficients.
ProblemInstance gen_function_approx(const std::function<double(const Vector&)>& f,
                                    const MultiIndexSet& lambda, Index m, double eta,
                                    double corruption_m, Index k_corrupt, std::uint64_t seed);

/// Monte Carlo estimate of the relative L2 error of the expansion x_hat over
/// `lambda` against f, using q fresh uniform points.
double l2_error_estimate_mc(const std::function<double(const Vector&)>& f,
                            const MultiIndexSet& lambda, const Vector& x_hat, Index q,
                            std::uint64_t seed);

/// Precomputed Monte Carlo evaluator for repeated error estimates against the
/// same function and point set (one basis evaluation per point, reused).
class McErrorEstimator {
 public:
  McErrorEstimator(const std::function<double(const Vector&)>& f, const MultiIndexSet& lambda,
                   Index q, std::uint64_t seed);
  double eval(const Vector& x_hat) const;

 private:
  Matrix basis_;   // q x N
  Vector f_vals_;  // length q
  double f_norm2_;
};

/// Self-describing JSON instance files; numeric fields are written with
/// enough digits to round-trip exactly. Indices inside files are 1-based.
void save_instance(const ProblemInstance& inst, const std::string& path);
ProblemInstance load_instance(const std::string& path);

}  // namespace womp
