#pragma once

#include "womp/linalg.hpp"
#include "womp/types.hpp"

#include <string>

namespace womp {

enum class LossFamily { Lasso, SrLasso, LadLasso };
enum class Regularizer { L1w, L0w };

/// Strictly positive per-index weights.
class Weights {
 public:
  explicit Weights(Vector w);
  static Weights ones(Index n);

  Index size() const { return w_.size(); }
  const Vector& v() const { return w_; }
  double operator[](Index j) const { return w_[j]; }

 private:
  Vector w_;
};

/// One of the six loss functionals: a fidelity family crossed with a weighted
/// regularizer, balanced by lambda >= 0.
struct LossSpec {
  LossFamily family;
  Regularizer regularizer;
  double lambda;

  LossSpec(LossFamily f, Regularizer r, double l);
};

/// CLI names: lasso-l1, srlasso-l1, ladlasso-l1, lasso-l0, srlasso-l0, ladlasso-l0.
std::string rule_name(LossFamily family, Regularizer reg);
void parse_rule_name(const std::string& name, LossFamily& family, Regularizer& reg);

/// sum over the support of w_j |z_j|
double weighted_l1_norm(const Vector& z, const Weights& w);

/// sum over the support of w_j^2; membership is an exact zero test, since
/// fitters produce exact zeros off-support
double weighted_l0_norm(const Vector& z, const Weights& w);

/// Fidelity term of a family evaluated on a residual: ||r||_2^2 for Lasso,
/// ||r||_2 for SrLasso, ||r||_1 for LadLasso.
double fidelity(LossFamily family, const Vector& r);

double eval_loss(const LossSpec& spec, const DenseMatrix& a, const Vector& y, const Weights& w,
                 const Vector& z);

}  // namespace womp
