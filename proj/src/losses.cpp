#include "womp/losses.hpp"

#include <cmath>

namespace womp {

Weights::Weights(Vector w) : w_(std::move(w)) {
  if (w_.size() < 1) throw InvalidParameter("weights must be nonempty");
  for (Index j = 0; j < w_.size(); ++j) {
    if (!(w_[j] > 0.0) || !std::isfinite(w_[j])) {
      throw InvalidParameter("weights must be strictly positive and finite");
    }
  }
}

Weights Weights::ones(Index n) { return Weights(Vector::Ones(n)); }

LossSpec::LossSpec(LossFamily f, Regularizer r, double l) : family(f), regularizer(r), lambda(l) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("lambda must be finite and nonnegative");
  }
}

std::string rule_name(LossFamily family, Regularizer reg) {
  std::string base;
  switch (family) {
    case LossFamily::Lasso: base = "lasso"; break;
    case LossFamily::SrLasso: base = "srlasso"; break;
    case LossFamily::LadLasso: base = "ladlasso"; break;
  }
  return base + (reg == Regularizer::L1w ? "-l1" : "-l0");
}

void parse_rule_name(const std::string& name, LossFamily& family, Regularizer& reg) {
  for (LossFamily f : {LossFamily::Lasso, LossFamily::SrLasso, LossFamily::LadLasso}) {
    for (Regularizer r : {Regularizer::L1w, Regularizer::L0w}) {
      if (rule_name(f, r) == name) {
        family = f;
        reg = r;
        return;
      }
    }
  }
  throw InvalidParameter("unknown rule name: " + name);
}

double weighted_l1_norm(const Vector& z, const Weights& w) {
  if (z.size() != w.size()) {
    throw DimensionMismatch("vector length " + std::to_string(z.size()) + " vs " +
                            std::to_string(w.size()) + " weights");
  }
  double sum = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    if (z[j] != 0.0) sum += w[j] * std::abs(z[j]);
  }
  return sum;
}

double weighted_l0_norm(const Vector& z, const Weights& w) {
  if (z.size() != w.size()) {
    throw DimensionMismatch("vector length " + std::to_string(z.size()) + " vs " +
                            std::to_string(w.size()) + " weights");
  }
  double sum = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    if (z[j] != 0.0) sum += w[j] * w[j];
  }
  return sum;
}

double fidelity(LossFamily family, const Vector& r) {
  switch (family) {
    case LossFamily::Lasso: return r.squaredNorm();
    case LossFamily::SrLasso: return r.norm();
    case LossFamily::LadLasso: return r.lpNorm<1>();
  }
  return 0.0;
}

double eval_loss(const LossSpec& spec, const DenseMatrix& a, const Vector& y, const Weights& w,
                 const Vector& z) {
  const Vector r = residual(a, z, y);
  const double reg = spec.regularizer == Regularizer::L1w ? weighted_l1_norm(z, w)
                                                          : weighted_l0_norm(z, w);
  return fidelity(spec.family, r) + spec.lambda * reg;
}

}  // namespace womp
