#include "womp/harness.hpp"

#include "womp/rng.hpp"
#include "womp/solvers.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iterator>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace womp {

namespace {

using nlohmann::json;

constexpr std::uint64_t kSaltInstance = 0;
constexpr std::uint64_t kSaltWeights = 1;
constexpr std::uint64_t kSaltMc = 2;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(s.c_str(), nullptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

std::string sanitize_status(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

double quantile(std::vector<double> sorted, double p) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// Runs fn(0..count-1) across workers. Each job owns a dedicated result slot,
/// so the outcome does not depend on scheduling.
void run_jobs(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Everything a single (level, trial) cell needs: the solver-ready matrix
/// (unit columns), the unscaling factors back to the original basis, and the
/// error metric (coefficient error or Monte Carlo estimate).
struct TrialData {
  std::unique_ptr<DenseMatrix> a;
  Vector scales;
  Vector y;
  std::unique_ptr<Weights> w;
  std::optional<Vector> x_true;
  std::unique_ptr<McErrorEstimator> estimator;
};

TrialData make_trial(const SweepConfig& cfg, const Level& level, int trial,
                     const MultiIndexSet* basis_set) {
  TrialData data;
  const std::uint64_t seed =
      derive_seed(cfg.base_seed, static_cast<std::uint64_t>(level.id),
                  static_cast<std::uint64_t>(trial), kSaltInstance);
  const Index k_corrupt =
      static_cast<Index>(std::llround(level.corrupt_fraction * static_cast<double>(cfg.m)));

  if (cfg.setting == Setting::FunctionApprox) {
    ProblemInstance inst = gen_function_approx(iso_exponential, *basis_set, cfg.m, level.eta,
                                               cfg.corruption_magnitude, k_corrupt, seed);
    NormalizeResult normalized = normalize_columns(inst.a);
    data.a = std::make_unique<DenseMatrix>(std::move(normalized.matrix));
    data.scales = std::move(normalized.scales);
    data.y = std::move(inst.y);
    data.w = std::make_unique<Weights>(std::move(inst.w));
    data.estimator = std::make_unique<McErrorEstimator>(
        iso_exponential, *basis_set, cfg.mc_points,
        derive_seed(cfg.base_seed, static_cast<std::uint64_t>(level.id),
                    static_cast<std::uint64_t>(trial), kSaltMc));
    return data;
  }

  ProblemInstance inst = gen_gaussian_sparse(cfg.n, cfg.m, cfg.s, level.eta,
                                             cfg.corruption_magnitude, k_corrupt, seed);
  data.a = std::make_unique<DenseMatrix>(std::move(inst.a));
  data.scales = Vector::Ones(cfg.n);  // generator already normalizes
  data.y = std::move(inst.y);
  data.x_true = std::move(inst.x_true);
  if (cfg.setting == Setting::GaussianOracle) {
    std::vector<Index> support;
    for (Index j = 0; j < data.x_true->size(); ++j) {
      if ((*data.x_true)[j] != 0.0) support.push_back(j);
    }
    data.w = std::make_unique<Weights>(gen_oracle_weights(
        support, cfg.oracle_fraction, cfg.w0, cfg.n,
        derive_seed(cfg.base_seed, static_cast<std::uint64_t>(level.id),
                    static_cast<std::uint64_t>(trial), kSaltWeights)));
  } else {
    data.w = std::make_unique<Weights>(Weights::ones(cfg.n));
  }
  return data;
}

double trial_error(const TrialData& data, const Vector& x_solver_basis) {
  const Vector x_original = x_solver_basis.cwiseQuotient(data.scales);
  if (data.x_true) return relative_l2_error(x_original, *data.x_true);
  return data.estimator->eval(x_original);
}

SolverOptions solver_options(const SweepConfig& cfg) {
  SolverOptions opts;
  opts.max_iterations = cfg.k_iterations;
  return opts;
}

void validate(const SweepConfig& cfg) {
  if (cfg.m < 1) throw InvalidParameter("config: m must be >= 1");
  if (cfg.k_iterations < 1) throw InvalidParameter("config: K must be >= 1");
  if (cfg.n_trials < 1) throw InvalidParameter("config: n_trials must be >= 1");
  if (cfg.lambda_count < 1) throw InvalidParameter("config: lambda_count must be >= 1");
  if (cfg.eta_list.empty() || cfg.corrupt_fraction_list.empty()) {
    throw InvalidParameter("config: eta_list and corrupt_fraction_list must be nonempty");
  }
  if (cfg.setting == Setting::FunctionApprox) {
    if (cfg.d < 1 || cfg.hc_order < 0) {
      throw InvalidParameter("config: function approximation needs d >= 1 and hc_order >= 0");
    }
  } else if (cfg.n < 1 || cfg.s < 0 || cfg.s > cfg.n) {
    throw InvalidParameter("config: need N >= 1 and 0 <= s <= N");
  }
}

}  // namespace

std::string setting_name(Setting s) {
  switch (s) {
    case Setting::GaussianSparse: return "gaussian-sparse";
    case Setting::GaussianOracle: return "gaussian-oracle";
    case Setting::FunctionApprox: return "function-approx";
  }
  return "";
}

Setting parse_setting_name(const std::string& name) {
  for (Setting s : {Setting::GaussianSparse, Setting::GaussianOracle, Setting::FunctionApprox}) {
    if (setting_name(s) == name) return s;
  }
  throw InvalidParameter("unknown setting: " + name);
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  json doc = json::parse(in);
  SweepConfig cfg;
  cfg.setting = parse_setting_name(doc.at("setting").get<std::string>());
  parse_rule_name(doc.at("rule").get<std::string>(), cfg.family, cfg.regularizer);
  cfg.n = doc.value("N", Index{0});
  cfg.m = doc.value("m", Index{0});
  cfg.s = doc.value("s", Index{0});
  cfg.d = doc.value("d", 0);
  cfg.hc_order = doc.value("hc_order", 0);
  if (doc.contains("eta_list")) cfg.eta_list = doc.at("eta_list").get<std::vector<double>>();
  cfg.corruption_magnitude = doc.value("M", 0.0);
  if (doc.contains("corrupt_fraction_list")) {
    cfg.corrupt_fraction_list = doc.at("corrupt_fraction_list").get<std::vector<double>>();
  }
  cfg.w0 = doc.value("w0", 1.0);
  cfg.oracle_fraction = doc.value("oracle_fraction", 0.5);
  cfg.lambda_min = doc.value("lambda_min", -1.0);
  cfg.lambda_max = doc.value("lambda_max", -1.0);
  cfg.lambda_count = doc.value("lambda_count", 50);
  cfg.k_iterations = doc.value("K", 0);
  cfg.n_trials = doc.value("n_trials", 1);
  cfg.base_seed = doc.value("base_seed", std::uint64_t{0});
  cfg.mc_points = doc.value("mc_points", Index{10000});
  cfg.out = doc.value("out", std::string{});
  return cfg;
}

void save_config(const SweepConfig& cfg, const std::string& path) {
  json doc;
  doc["setting"] = setting_name(cfg.setting);
  doc["rule"] = rule_name(cfg.family, cfg.regularizer);
  doc["N"] = cfg.n;
  doc["m"] = cfg.m;
  doc["s"] = cfg.s;
  doc["d"] = cfg.d;
  doc["hc_order"] = cfg.hc_order;
  doc["eta_list"] = cfg.eta_list;
  doc["M"] = cfg.corruption_magnitude;
  doc["corrupt_fraction_list"] = cfg.corrupt_fraction_list;
  doc["w0"] = cfg.w0;
  doc["oracle_fraction"] = cfg.oracle_fraction;
  doc["lambda_min"] = cfg.lambda_min;
  doc["lambda_max"] = cfg.lambda_max;
  doc["lambda_count"] = cfg.lambda_count;
  doc["K"] = cfg.k_iterations;
  doc["n_trials"] = cfg.n_trials;
  doc["base_seed"] = cfg.base_seed;
  doc["mc_points"] = cfg.mc_points;
  doc["out"] = cfg.out;
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
}

std::vector<double> lambda_grid(const SweepConfig& cfg) {
  double lo = cfg.lambda_min;
  double hi = cfg.lambda_max;
  const double family_lo = cfg.family == LossFamily::LadLasso ? 1e-3 : 1e-4;
  if (lo < 0.0) lo = family_lo;
  if (hi < 0.0) hi = 10.0;
  if (hi < lo) throw InvalidParameter("lambda_max below lambda_min");

  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(cfg.lambda_count));
  int log_points = cfg.lambda_count;
  // A zero lower endpoint puts the unregularized run itself on the grid; the
  // remaining points are log-spaced down from lambda_max.
  if (lo == 0.0) {
    grid.push_back(0.0);
    --log_points;
    lo = std::min(family_lo, hi);
  }
  if (log_points == 1) {
    grid.push_back(log_points == cfg.lambda_count ? lo : hi);
    return grid;
  }
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(log_points - 1);
  for (int i = 0; i < log_points; ++i) grid.push_back(std::exp(log_lo + step * i));
  return grid;
}

std::vector<Level> sweep_levels(const SweepConfig& cfg) {
  std::vector<Level> levels;
  int id = 0;
  for (double eta : cfg.eta_list) {
    for (double cf : cfg.corrupt_fraction_list) {
      char desc[64];
      std::snprintf(desc, sizeof(desc), "eta=%g;corrupt=%g", eta, cf);
      levels.push_back(Level{id++, eta, cf, desc});
    }
  }
  return levels;
}

LambdaTable sweep_lambda(const SweepConfig& cfg) {
  validate(cfg);
  const std::vector<Level> levels = sweep_levels(cfg);
  const std::vector<double> grid = lambda_grid(cfg);
  std::unique_ptr<MultiIndexSet> basis_set;
  if (cfg.setting == Setting::FunctionApprox) {
    basis_set = std::make_unique<MultiIndexSet>(hyperbolic_cross(cfg.d, cfg.hc_order));
  }

  struct CellResult {
    double rel_error;
    std::string status;
  };
  const int n_levels = static_cast<int>(levels.size());
  const int n_lambda = static_cast<int>(grid.size());
  std::vector<CellResult> cells(static_cast<size_t>(n_levels * cfg.n_trials * n_lambda));
  auto slot = [&](int level, int trial, int li) -> CellResult& {
    return cells[static_cast<size_t>((level * cfg.n_trials + trial) * n_lambda + li)];
  };

  run_jobs(n_levels * cfg.n_trials, [&](int job) {
    const int level_idx = job / cfg.n_trials;
    const int trial = job % cfg.n_trials;
    const Level& level = levels[static_cast<size_t>(level_idx)];
    try {
      const TrialData data = make_trial(cfg, level, trial, basis_set.get());
      const SolverOptions opts = solver_options(cfg);
      for (int li = 0; li < n_lambda; ++li) {
        try {
          const LossSpec spec(cfg.family, cfg.regularizer, grid[static_cast<size_t>(li)]);
          const GreedyTrace trace = omp_run(spec, *data.a, data.y, *data.w, opts);
          const double err = trial_error(data, trace.final_or_zero(data.a->cols()));
          slot(level_idx, trial, li) = CellResult{err, "ok"};
        } catch (const std::exception& cell_error) {
          slot(level_idx, trial, li) = CellResult{
              std::numeric_limits<double>::quiet_NaN(),
              sanitize_status(std::string("error:") + cell_error.what())};
        }
      }
    } catch (const std::exception& trial_error_outer) {
      for (int li = 0; li < n_lambda; ++li) {
        slot(level_idx, trial, li) = CellResult{
            std::numeric_limits<double>::quiet_NaN(),
            sanitize_status(std::string("error:") + trial_error_outer.what())};
      }
    }
  });

  LambdaTable table;
  table.rows.reserve(cells.size());
  for (const Level& level : levels) {
    for (int li = 0; li < n_lambda; ++li) {
      for (int trial = 0; trial < cfg.n_trials; ++trial) {
        const CellResult& cell = slot(level.id, trial, li);
        table.rows.push_back(LambdaCell{level.id, level.desc, grid[static_cast<size_t>(li)],
                                        trial, cell.rel_error, cell.status});
      }
    }
  }
  return table;
}

IterTable sweep_iterations(const SweepConfig& cfg) {
  validate(cfg);
  const std::vector<Level> levels = sweep_levels(cfg);
  const Level& level = levels.front();  // iteration sweeps run one level
  std::vector<double> lambdas = lambda_grid(cfg);
  if (std::find(lambdas.begin(), lambdas.end(), 0.0) == lambdas.end()) {
    lambdas.insert(lambdas.begin(), 0.0);
  }
  std::unique_ptr<MultiIndexSet> basis_set;
  if (cfg.setting == Setting::FunctionApprox) {
    basis_set = std::make_unique<MultiIndexSet>(hyperbolic_cross(cfg.d, cfg.hc_order));
  }

  const int n_lambda = static_cast<int>(lambdas.size());
  const int k_max = cfg.k_iterations;
  std::vector<std::vector<IterCell>> per_trial(static_cast<size_t>(cfg.n_trials));

  run_jobs(cfg.n_trials, [&](int trial) {
    std::vector<IterCell>& rows = per_trial[static_cast<size_t>(trial)];
    rows.reserve(static_cast<size_t>(n_lambda * k_max));
    try {
      const TrialData data = make_trial(cfg, level, trial, basis_set.get());
      const SolverOptions opts = solver_options(cfg);
      for (int li = 0; li < n_lambda; ++li) {
        const double lambda = lambdas[static_cast<size_t>(li)];
        try {
          const LossSpec spec(cfg.family, cfg.regularizer, lambda);
          const GreedyTrace trace = omp_run(spec, *data.a, data.y, *data.w, opts);
          int k = 0;
          IterCell last{lambda, trial, 0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0,
                        0, 0, "ok"};
          for (const IterationRecord& rec : trace.iterations) {
            ++k;
            last = IterCell{lambda,
                            trial,
                            k,
                            trial_error(data, rec.x),
                            rec.fidelity,
                            rec.loss,
                            rec.selected + 1,
                            rec.support.size(),
                            "ok"};
            rows.push_back(last);
          }
          // A terminated run repeats its final state forever; carry it to K.
          const std::string pad_status =
              trace.status == TerminalStatus::Stalled ? "stalled" : "stopped";
          for (++k; k <= k_max; ++k) {
            IterCell pad = last;
            pad.k = k;
            pad.selected_index = 0;
            pad.status = pad_status;
            rows.push_back(pad);
          }
        } catch (const std::exception& cell_error) {
          rows.push_back(IterCell{lambda, trial, 0, std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN(), 0, 0,
                                  sanitize_status(std::string("error:") + cell_error.what())});
        }
      }
    } catch (const std::exception& trial_error_outer) {
      rows.clear();
      for (int li = 0; li < n_lambda; ++li) {
        rows.push_back(IterCell{lambdas[static_cast<size_t>(li)], trial, 0,
                                std::numeric_limits<double>::quiet_NaN(),
                                std::numeric_limits<double>::quiet_NaN(),
                                std::numeric_limits<double>::quiet_NaN(), 0, 0,
                                sanitize_status(std::string("error:") + trial_error_outer.what())});
      }
    }
  });

  IterTable table;
  for (int li = 0; li < n_lambda; ++li) {
    const double lambda = lambdas[static_cast<size_t>(li)];
    for (int trial = 0; trial < cfg.n_trials; ++trial) {
      for (const IterCell& cell : per_trial[static_cast<size_t>(trial)]) {
        if (cell.lambda == lambda) table.rows.push_back(cell);
      }
    }
  }
  return table;
}

LogStats log_stats(const std::vector<double>& samples) {
  if (samples.empty()) throw EmptyTable("log statistics of no samples");
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double v : samples) {
    if (!(v > 0.0)) throw NonPositiveSample(v);
    logs.push_back(std::log10(v));
  }
  const double n = static_cast<double>(logs.size());
  double mu = 0.0;
  for (double l : logs) mu += l;
  mu /= n;
  if (logs.size() == 1) return LogStats{mu, 0.0, true};
  double ss = 0.0;
  for (double l : logs) ss += (l - mu) * (l - mu);
  return LogStats{mu, std::sqrt(ss / (n - 1.0)), false};
}

double best_lambda(const LambdaTable& table, int level_id, BestLambdaMetric metric) {
  // lambda -> ok samples, keyed in ascending lambda order
  std::vector<std::pair<double, std::vector<double>>> groups;
  for (const LambdaCell& row : table.rows) {
    if (row.level_id != level_id || row.status != "ok") continue;
    auto pos = std::find_if(groups.begin(), groups.end(),
                            [&](const auto& g) { return g.first == row.lambda; });
    if (pos == groups.end()) {
      groups.emplace_back(row.lambda, std::vector<double>{row.rel_error});
    } else {
      pos->second.push_back(row.rel_error);
    }
  }
  if (groups.empty()) throw EmptyTable("no ok rows for level " + std::to_string(level_id));
  std::sort(groups.begin(), groups.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });

  double best = groups.front().first;
  double best_score = std::numeric_limits<double>::infinity();
  for (auto& [lambda, samples] : groups) {
    double score;
    if (metric == BestLambdaMetric::Median) {
      std::sort(samples.begin(), samples.end());
      score = quantile(samples, 0.5);
    } else {
      score = log_stats(samples).mu;
    }
    if (score < best_score) {  // strict: ties keep the lowest lambda
      best_score = score;
      best = lambda;
    }
  }
  return best;
}

namespace {

void fill_quartiles(std::vector<double> samples, double& q1, double& median, double& q3,
                    double& mu, double& sigma) {
  std::sort(samples.begin(), samples.end());
  q1 = quantile(samples, 0.25);
  median = quantile(samples, 0.5);
  q3 = quantile(samples, 0.75);
  try {
    const LogStats ls = log_stats(samples);
    mu = ls.mu;
    sigma = ls.sigma;
  } catch (const NonPositiveSample&) {
    mu = std::numeric_limits<double>::quiet_NaN();
    sigma = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<LambdaStatRow> summarize_lambda(const LambdaTable& table) {
  std::vector<LambdaStatRow> rows;
  for (const LambdaCell& cell : table.rows) {
    if (cell.status != "ok") continue;
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const LambdaStatRow& r) {
      return r.level_id == cell.level_id && r.lambda == cell.lambda;
    });
    if (pos == rows.end()) {
      rows.push_back(LambdaStatRow{cell.level_id, cell.level_desc, cell.lambda, 0, 0, 0, 0, 0, 0});
      pos = std::prev(rows.end());
    }
    ++pos->count;
  }
  // second pass gathers the samples per group
  for (LambdaStatRow& out : rows) {
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(out.count));
    for (const LambdaCell& cell : table.rows) {
      if (cell.status == "ok" && cell.level_id == out.level_id && cell.lambda == out.lambda) {
        samples.push_back(cell.rel_error);
      }
    }
    fill_quartiles(std::move(samples), out.q1, out.median, out.q3, out.mu, out.sigma);
  }
  return rows;
}

std::vector<IterStatRow> summarize_iter(const IterTable& table) {
  std::vector<IterStatRow> rows;
  for (const IterCell& cell : table.rows) {
    if (cell.k == 0) continue;  // error rows carry no iterate
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const IterStatRow& r) {
      return r.lambda == cell.lambda && r.k == cell.k;
    });
    if (pos == rows.end()) {
      rows.push_back(IterStatRow{cell.lambda, cell.k, 0, 0, 0, 0, 0, 0});
      pos = std::prev(rows.end());
    }
    ++pos->count;
  }
  for (IterStatRow& out : rows) {
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(out.count));
    for (const IterCell& cell : table.rows) {
      if (cell.k == out.k && cell.lambda == out.lambda) samples.push_back(cell.rel_error);
    }
    fill_quartiles(std::move(samples), out.q1, out.median, out.q3, out.mu, out.sigma);
  }
  return rows;
}

void write_lambda_csv(const LambdaTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << "level_id,level_desc,lambda,trial,rel_error,status\n";
  for (const LambdaCell& row : table.rows) {
    out << row.level_id << ',' << row.level_desc << ',' << format_double(row.lambda) << ','
        << row.trial << ',' << format_double(row.rel_error) << ',' << row.status << '\n';
  }
}

LambdaTable read_lambda_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  LambdaTable table;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw InvalidParameter("malformed row in " + path);
    table.rows.push_back(LambdaCell{std::atoi(f[0].c_str()), f[1], parse_double(f[2]),
                                    std::atoi(f[3].c_str()), parse_double(f[4]), f[5]});
  }
  return table;
}

void write_iter_csv(const IterTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << "lambda,trial,k,rel_error,fidelity,loss,selected_index,support_size,status\n";
  for (const IterCell& row : table.rows) {
    out << format_double(row.lambda) << ',' << row.trial << ',' << row.k << ','
        << format_double(row.rel_error) << ',' << format_double(row.fidelity) << ','
        << format_double(row.loss) << ',' << row.selected_index << ',' << row.support_size << ','
        << row.status << '\n';
  }
}

IterTable read_iter_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  IterTable table;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw InvalidParameter("malformed row in " + path);
    table.rows.push_back(IterCell{parse_double(f[0]), std::atoi(f[1].c_str()),
                                  std::atoi(f[2].c_str()), parse_double(f[3]), parse_double(f[4]),
                                  parse_double(f[5]), static_cast<Index>(std::atol(f[6].c_str())),
                                  static_cast<Index>(std::atol(f[7].c_str())), f[8]});
  }
  return table;
}

void write_lambda_stats_csv(const std::vector<LambdaStatRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << "level_id,level_desc,lambda,count,q1,median,q3,log10_mean,log10_std\n";
  for (const LambdaStatRow& r : rows) {
    out << r.level_id << ',' << r.level_desc << ',' << format_double(r.lambda) << ',' << r.count
        << ',' << format_double(r.q1) << ',' << format_double(r.median) << ','
        << format_double(r.q3) << ',' << format_double(r.mu) << ',' << format_double(r.sigma)
        << '\n';
  }
}

void write_iter_stats_csv(const std::vector<IterStatRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot open " + path + " for writing");
  out << "lambda,k,count,q1,median,q3,log10_mean,log10_std\n";
  for (const IterStatRow& r : rows) {
    out << format_double(r.lambda) << ',' << r.k << ',' << r.count << ',' << format_double(r.q1)
        << ',' << format_double(r.median) << ',' << format_double(r.q3) << ','
        << format_double(r.mu) << ',' << format_double(r.sigma) << '\n';
  }
}

int worker_count() {
  if (const char* env = std::getenv("WOMP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace womp
