#include "womp/problems.hpp"

#include "womp/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace womp {

namespace {

int total_degree(const MultiIndex& nu) { return std::accumulate(nu.begin(), nu.end(), 0); }

bool graded_lex_less(const MultiIndex& lhs, const MultiIndex& rhs) {
  const int dl = total_degree(lhs);
  const int dr = total_degree(rhs);
  if (dl != dr) return dl < dr;
  return lhs < rhs;
}

/// Univariate Legendre value, normalized to unit norm against the uniform
/// probability measure on [-1, 1]: sqrt(2n+1) times the classical three-term
/// recurrence with P_n(1) = 1.
double legendre_orthonormal_1d(int n, double t) {
  double prev = 1.0;
  if (n == 0) return 1.0;
  double cur = t;
  for (int i = 1; i < n; ++i) {
    const double next = ((2.0 * i + 1.0) * t * cur - i * prev) / (i + 1.0);
    prev = cur;
    cur = next;
  }
  return std::sqrt(2.0 * n + 1.0) * cur;
}

Vector gaussian_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

void add_noise(Vector& y, NoiseParts& noise, Index m, double eta, double corruption_m,
               Index k_corrupt, Rng& rng) {
  noise.bounded = Vector::Zero(m);
  noise.unbounded = Vector::Zero(m);
  if (eta > 0.0) {
    Vector e = gaussian_vector(rng, m);
    noise.bounded = e * (eta / e.norm());
  }
  if (k_corrupt > 0 && corruption_m > 0.0) {
    const std::vector<Index> positions = rng.sample_without_replacement(m, k_corrupt);
    for (Index p : positions) noise.unbounded[p] = corruption_m * rng.normal();
  }
  y += noise.bounded + noise.unbounded;
}

}  // namespace

MultiIndexSet::MultiIndexSet(int d, std::vector<MultiIndex> indices)
    : d_(d), indices_(std::move(indices)) {
  if (d_ < 1) throw InvalidParameter("dimension must be at least 1");
  for (const MultiIndex& nu : indices_) {
    if (static_cast<int>(nu.size()) != d_) throw DimensionMismatch("multi-index dimension");
    for (int v : nu) {
      if (v < 0) throw InvalidParameter("multi-index entries must be nonnegative");
    }
  }
  std::sort(indices_.begin(), indices_.end(), graded_lex_less);
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

MultiIndexSet hyperbolic_cross(int d, int order) {
  if (d < 1) throw InvalidParameter("dimension must be at least 1");
  if (order < 0) throw InvalidParameter("order must be nonnegative");
  std::vector<MultiIndex> out;
  MultiIndex current(static_cast<size_t>(d), 0);
  // Depth-first with the running product as the pruning bound.
  const std::function<void(int, long long)> descend = [&](int pos, long long prod) {
    if (pos == d) {
      out.push_back(current);
      return;
    }
    for (int v = 0; prod * (v + 1) <= static_cast<long long>(order) + 1; ++v) {
      current[static_cast<size_t>(pos)] = v;
      descend(pos + 1, prod * (v + 1));
    }
    current[static_cast<size_t>(pos)] = 0;
  };
  descend(0, 1);
  return MultiIndexSet(d, std::move(out));
}

ProblemInstance gen_gaussian_sparse(Index n, Index m, Index s, double eta, double corruption_m,
                                    Index k_corrupt, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidParameter("need n >= 1 and m >= 1");
  if (s < 0 || s > n) throw InvalidParameter("sparsity must lie in [0, n]");
  if (k_corrupt < 0 || k_corrupt > m) throw InvalidParameter("corruption count must lie in [0, m]");
  if (eta < 0.0 || corruption_m < 0.0) throw InvalidParameter("noise levels must be nonnegative");

  Rng rng(seed);
  Vector x_true = Vector::Zero(n);
  const std::vector<Index> support = rng.sample_without_replacement(n, s);
  for (Index j : support) x_true[j] = rng.normal();

  Matrix g(m, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) g(i, j) = rng.normal();
  }
  NormalizeResult normalized = normalize_columns(DenseMatrix(std::move(g)));

  Vector y = normalized.matrix.m() * x_true;
  NoiseParts noise;
  add_noise(y, noise, m, eta, corruption_m, k_corrupt, rng);

  InstanceMeta meta;
  meta.setting = "gaussian-sparse";
  meta.seed = seed;
  meta.n = n;
  meta.m = m;
  meta.s = s;
  meta.eta = eta;
  meta.corruption_magnitude = corruption_m;
  meta.k_corrupt = k_corrupt;

  return ProblemInstance{std::move(normalized.matrix), std::move(y), Weights::ones(n),
                         std::move(x_true), std::move(noise), std::move(meta)};
}

Weights gen_oracle_weights(const std::vector<Index>& true_support, double known_fraction,
                           double w0, Index n, std::uint64_t seed) {
  if (known_fraction < 0.0 || known_fraction > 1.0) {
    throw InvalidParameter("known_fraction must lie in [0, 1]");
  }
  if (!(w0 > 0.0) || w0 > 1.0) throw InvalidParameter("w0 must lie in (0, 1]");
  const Index s = static_cast<Index>(true_support.size());
  const Index count = static_cast<Index>(std::floor(known_fraction * static_cast<double>(s)));
  if (s == 0 && known_fraction > 0.0) {
    throw EmptySupport("cannot draw oracle entries from an empty support");
  }
  Vector w = Vector::Ones(n);
  if (count > 0) {
    Rng rng(seed);
    const std::vector<Index> picks = rng.sample_without_replacement(s, count);
    for (Index p : picks) {
      const Index j = true_support[static_cast<size_t>(p)];
      if (j < 0 || j >= n) throw IndexOutOfRange(j, n);
      w[j] = w0;
    }
  }
  return Weights(std::move(w));
}

double legendre_eval(const MultiIndex& nu, const Vector& t) {
  if (static_cast<Index>(nu.size()) != t.size()) throw DimensionMismatch("multi-index vs point");
  double value = 1.0;
  for (Index k = 0; k < t.size(); ++k) {
    if (std::abs(t[k]) > 1.0 + 1e-12) {
      throw OutOfDomain("point outside [-1, 1]^d");
    }
    value *= legendre_orthonormal_1d(nu[static_cast<size_t>(k)], std::clamp(t[k], -1.0, 1.0));
  }
  return value;
}

Weights intrinsic_weights(const MultiIndexSet& lambda) {
  if (lambda.size() == 0) throw EmptySupport("multi-index set is empty");
  Vector w(lambda.size());
  for (Index j = 0; j < lambda.size(); ++j) {
    double v = 1.0;
    for (int nu_k : lambda[j]) v *= std::sqrt(2.0 * nu_k + 1.0);
    w[j] = v;
  }
  return Weights(std::move(w));
}

double iso_exponential(const Vector& t) {
  const Index d = t.size();
  if (d < 1) throw InvalidParameter("point must have dimension >= 1");
  double sum = 0.0;
  for (Index i = 0; i < d; ++i) {
    if (std::abs(t[i]) > 1.0 + 1e-12) throw OutOfDomain("point outside [-1, 1]^d");
    sum += t[i];
  }
  return std::exp(-sum / (2.0 * static_cast<double>(d)));
}

ProblemInstance gen_function_approx(const std::function<double(const Vector&)>& f,
                                    const MultiIndexSet& lambda, Index m, double eta,
                                    double corruption_m, Index k_corrupt, std::uint64_t seed) {
  if (m < 1) throw InvalidParameter("need m >= 1");
  if (k_corrupt < 0 || k_corrupt > m) throw InvalidParameter("corruption count must lie in [0, m]");
  const Index n = lambda.size();
  const int d = lambda.dim();

  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix a(m, n);
  Vector y(m);
  Vector point(d);
  for (Index i = 0; i < m; ++i) {
    for (int k = 0; k < d; ++k) point[k] = rng.uniform(-1.0, 1.0);
    for (Index j = 0; j < n; ++j) a(i, j) = scale * legendre_eval(lambda[j], point);
    y[i] = scale * f(point);
  }

  NoiseParts noise;
  add_noise(y, noise, m, eta, corruption_m, k_corrupt, rng);

  InstanceMeta meta;
  meta.setting = "function-approx";
  meta.seed = seed;
  meta.n = n;
  meta.m = m;
  meta.d = d;
  meta.eta = eta;
  meta.corruption_magnitude = corruption_m;
  meta.k_corrupt = k_corrupt;

  return ProblemInstance{DenseMatrix(std::move(a)), std::move(y), intrinsic_weights(lambda),
                         std::nullopt, std::move(noise), std::move(meta)};
}

McErrorEstimator::McErrorEstimator(const std::function<double(const Vector&)>& f,
                                   const MultiIndexSet& lambda, Index q, std::uint64_t seed) {
  if (q < 1) throw InvalidParameter("need at least one sample point");
  const int d = lambda.dim();
  basis_.resize(q, lambda.size());
  f_vals_.resize(q);
  Rng rng(seed);
  Vector point(d);
  for (Index i = 0; i < q; ++i) {
    for (int k = 0; k < d; ++k) point[k] = rng.uniform(-1.0, 1.0);
    for (Index j = 0; j < lambda.size(); ++j) basis_(i, j) = legendre_eval(lambda[j], point);
    f_vals_[i] = f(point);
  }
  f_norm2_ = f_vals_.squaredNorm();
  if (f_norm2_ == 0.0) throw ZeroFunction();
}

double McErrorEstimator::eval(const Vector& x_hat) const {
  if (x_hat.size() != basis_.cols()) throw DimensionMismatch("coefficients vs basis");
  // Expansions from the greedy solver are sparse; only touch active columns.
  Vector approx = Vector::Zero(basis_.rows());
  for (Index j = 0; j < x_hat.size(); ++j) {
    if (x_hat[j] != 0.0) approx += x_hat[j] * basis_.col(j);
  }
  return std::sqrt((f_vals_ - approx).squaredNorm() / f_norm2_);
}

double l2_error_estimate_mc(const std::function<double(const Vector&)>& f,
                            const MultiIndexSet& lambda, const Vector& x_hat, Index q,
                            std::uint64_t seed) {
  return McErrorEstimator(f, lambda, q, seed).eval(x_hat);
}

namespace {

using nlohmann::json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr) {
  Vector v(static_cast<Index>(arr.size()));
  Index i = 0;
  for (const auto& entry : arr) v[i++] = entry.get<double>();
  return v;
}

}  // namespace

void save_instance(const ProblemInstance& inst, const std::string& path) {
  json doc;
  doc["format"] = "womp-instance-v1";
  doc["rows"] = inst.a.rows();
  doc["cols"] = inst.a.cols();
  json entries = json::array();
  for (Index i = 0; i < inst.a.rows(); ++i) {
    for (Index j = 0; j < inst.a.cols(); ++j) entries.push_back(inst.a.m()(i, j));
  }
  doc["matrix_row_major"] = std::move(entries);
  doc["y"] = vector_to_json(inst.y);
  doc["weights"] = vector_to_json(inst.w.v());
  if (inst.x_true) doc["x_true"] = vector_to_json(*inst.x_true);
  if (inst.noise) {
    doc["noise_bounded"] = vector_to_json(inst.noise->bounded);
    doc["noise_unbounded"] = vector_to_json(inst.noise->unbounded);
  }
  json meta;
  meta["setting"] = inst.meta.setting;
  meta["seed"] = inst.meta.seed;
  meta["n"] = inst.meta.n;
  meta["m"] = inst.meta.m;
  meta["s"] = inst.meta.s;
  meta["d"] = inst.meta.d;
  meta["hc_order"] = inst.meta.hc_order;
  meta["eta"] = inst.meta.eta;
  meta["corruption_magnitude"] = inst.meta.corruption_magnitude;
  meta["k_corrupt"] = inst.meta.k_corrupt;
  meta["w0"] = inst.meta.w0;
  meta["oracle_fraction"] = inst.meta.oracle_fraction;
  doc["meta"] = std::move(meta);

  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << doc.dump(1) << '\n';
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  json doc = json::parse(in);
  if (doc.value("format", "") != "womp-instance-v1") {
    throw InvalidParameter("not a womp instance file: " + path);
  }
  const Index rows = doc.at("rows").get<Index>();
  const Index cols = doc.at("cols").get<Index>();
  const auto& entries = doc.at("matrix_row_major");
  if (static_cast<Index>(entries.size()) != rows * cols) {
    throw DimensionMismatch("matrix entry count in " + path);
  }
  Matrix a(rows, cols);
  Index pos = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = entries[static_cast<size_t>(pos++)].get<double>();
  }

  ProblemInstance inst{DenseMatrix(std::move(a)), vector_from_json(doc.at("y")),
                       Weights(vector_from_json(doc.at("weights"))), std::nullopt, std::nullopt,
                       InstanceMeta{}};
  if (doc.contains("x_true")) inst.x_true = vector_from_json(doc.at("x_true"));
  if (doc.contains("noise_bounded")) {
    inst.noise = NoiseParts{vector_from_json(doc.at("noise_bounded")),
                            vector_from_json(doc.at("noise_unbounded"))};
  }
  const json& meta = doc.at("meta");
  inst.meta.setting = meta.value("setting", "");
  inst.meta.seed = meta.value("seed", std::uint64_t{0});
  inst.meta.n = meta.value("n", Index{0});
  inst.meta.m = meta.value("m", Index{0});
  inst.meta.s = meta.value("s", Index{0});
  inst.meta.d = meta.value("d", 0);
  inst.meta.hc_order = meta.value("hc_order", 0);
  inst.meta.eta = meta.value("eta", 0.0);
  inst.meta.corruption_magnitude = meta.value("corruption_magnitude", 0.0);
  inst.meta.k_corrupt = meta.value("k_corrupt", Index{0});
  inst.meta.w0 = meta.value("w0", 1.0);
  inst.meta.oracle_fraction = meta.value("oracle_fraction", 0.0);
  return inst;
}

}  // namespace womp
