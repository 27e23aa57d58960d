// Command-line front end: instance generation, single solves, lambda and
// iteration sweeps, table statistics, and SVG rendering of sweep tables.

#include "womp/harness.hpp"
#include "womp/rng.hpp"
#include "womp/solvers.hpp"

#include "svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

namespace {

using namespace womp;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ProblemInstance build_instance(const SweepConfig& cfg, int level_idx, int trial) {
  const auto levels = sweep_levels(cfg);
  if (level_idx < 0 || level_idx >= static_cast<int>(levels.size())) {
    throw InvalidParameter("level index outside the configured levels");
  }
  const Level& level = levels[static_cast<size_t>(level_idx)];
  const std::uint64_t seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(level.id),
                                         static_cast<std::uint64_t>(trial), 0);
  const Index k_corrupt =
      static_cast<Index>(std::llround(level.corrupt_fraction * static_cast<double>(cfg.m)));

  if (cfg.setting == Setting::FunctionApprox) {
    const auto basis = hyperbolic_cross(cfg.d, cfg.hc_order);
    ProblemInstance inst = gen_function_approx(iso_exponential, basis, cfg.m, level.eta,
                                               cfg.corruption_magnitude, k_corrupt, seed);
    inst.meta.hc_order = cfg.hc_order;
    return inst;
  }
  ProblemInstance inst = gen_gaussian_sparse(cfg.n, cfg.m, cfg.s, level.eta,
                                             cfg.corruption_magnitude, k_corrupt, seed);
  if (cfg.setting == Setting::GaussianOracle) {
    std::vector<Index> support;
    for (Index j = 0; j < inst.x_true->size(); ++j) {
      if ((*inst.x_true)[j] != 0.0) support.push_back(j);
    }
    inst.w = gen_oracle_weights(support, cfg.oracle_fraction, cfg.w0, cfg.n,
                                derive_seed(cfg.base_seed, static_cast<std::uint64_t>(level.id),
                                            static_cast<std::uint64_t>(trial), 1));
    inst.meta.setting = "gaussian-oracle";
    inst.meta.w0 = cfg.w0;
    inst.meta.oracle_fraction = cfg.oracle_fraction;
  }
  return inst;
}

int cmd_gen(const std::string& config_path, int level, int trial, const std::string& out) {
  const SweepConfig cfg = load_config(config_path);
  const ProblemInstance inst = build_instance(cfg, level, trial);
  save_instance(inst, out);
  std::cout << "wrote " << out << " (" << inst.a.rows() << "x" << inst.a.cols() << ", setting "
            << inst.meta.setting << ")\n";
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& rule, double lambda,
              int iterations, const std::string& out) {
  const ProblemInstance inst = load_instance(instance_path);
  LossFamily family;
  Regularizer reg;
  parse_rule_name(rule, family, reg);

  const NormalizeResult normalized = normalize_columns(inst.a);
  SolverOptions opts;
  opts.max_iterations = iterations;
  const GreedyTrace trace =
      omp_run(LossSpec(family, reg, lambda), normalized.matrix, inst.y, inst.w, opts);

  std::ofstream file(out);
  if (!file) throw InvalidParameter("cannot open " + out + " for writing");
  file << "k,selected_index,support_size,rel_error,fidelity,loss,delta_max,stalled\n";
  int k = 0;
  for (const IterationRecord& rec : trace.iterations) {
    ++k;
    const Vector x = rec.x.cwiseQuotient(normalized.scales);
    const double err =
        inst.x_true ? relative_l2_error(x, *inst.x_true) : std::numeric_limits<double>::quiet_NaN();
    file << k << ',' << rec.selected + 1 << ',' << rec.support.size() << ',' << fmt(err) << ','
         << fmt(rec.fidelity) << ',' << fmt(rec.loss) << ',' << fmt(rec.delta_max) << ','
         << (rec.stalled ? 1 : 0) << '\n';
  }
  std::cout << "wrote " << out << " (" << k << " iterations, status "
            << (trace.status == TerminalStatus::CompletedK
                    ? "completed"
                    : trace.status == TerminalStatus::Stalled ? "stalled" : "delta-below-tol")
            << ")\n";
  return 0;
}

int cmd_sweep_lambda(const std::string& config_path, std::string out) {
  const SweepConfig cfg = load_config(config_path);
  if (out.empty()) out = cfg.out;
  if (out.empty()) throw InvalidParameter("no output path (config 'out' or --out)");
  const LambdaTable table = sweep_lambda(cfg);
  write_lambda_csv(table, out);
  std::cout << "wrote " << out << " (" << table.rows.size() << " rows)\n";
  return 0;
}

int cmd_sweep_iter(const std::string& config_path, std::string out) {
  const SweepConfig cfg = load_config(config_path);
  if (out.empty()) out = cfg.out;
  if (out.empty()) throw InvalidParameter("no output path (config 'out' or --out)");
  const IterTable table = sweep_iterations(cfg);
  write_iter_csv(table, out);
  std::cout << "wrote " << out << " (" << table.rows.size() << " rows)\n";
  return 0;
}

int cmd_stats(const std::string& in, const std::string& kind, const std::string& out) {
  if (kind == "lambda") {
    write_lambda_stats_csv(summarize_lambda(read_lambda_csv(in)), out);
  } else if (kind == "iter") {
    write_iter_stats_csv(summarize_iter(read_iter_csv(in)), out);
  } else {
    throw InvalidParameter("kind must be lambda or iter");
  }
  std::cout << "wrote " << out << '\n';
  return 0;
}

int cmd_plot(const std::string& in, const std::string& kind, const std::string& out) {
  std::vector<svg::Series> series;
  svg::PlotSpec spec;
  spec.y_label = "relative error";
  if (kind == "lambda") {
    const auto rows = summarize_lambda(read_lambda_csv(in));
    spec.title = "relative error vs tuning parameter";
    spec.x_label = "lambda";
    std::map<int, svg::Series> by_level;
    for (const auto& r : rows) {
      auto& s = by_level[r.level_id];
      s.label = r.level_desc;
      s.x.push_back(r.lambda);
      s.median.push_back(r.median);
      s.lo.push_back(r.q1);
      s.hi.push_back(r.q3);
    }
    for (auto& [id, s] : by_level) series.push_back(std::move(s));
  } else if (kind == "iter") {
    const auto rows = summarize_iter(read_iter_csv(in));
    spec.title = "relative error vs iteration";
    spec.x_label = "iteration";
    spec.log_x = false;
    std::map<double, svg::Series> by_lambda;
    for (const auto& r : rows) {
      auto& s = by_lambda[r.lambda];
      s.label = "lambda=" + fmt(r.lambda);
      s.x.push_back(r.k);
      // shaded band at 10^(mu +- sigma) exposes the log-domain spread
      s.median.push_back(std::isnan(r.mu) ? r.median : std::pow(10.0, r.mu));
      s.lo.push_back(std::isnan(r.mu) ? r.median : std::pow(10.0, r.mu - r.sigma));
      s.hi.push_back(std::isnan(r.mu) ? r.median : std::pow(10.0, r.mu + r.sigma));
    }
    for (auto& [lambda, s] : by_lambda) series.push_back(std::move(s));
  } else {
    throw InvalidParameter("kind must be lambda or iter");
  }
  svg::render(spec, series, out);
  std::cout << "wrote " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted greedy sparse recovery toolkit"};
  app.require_subcommand(1);

  std::string config_path, instance_path, rule = "lasso-l1", in_path, out_path, kind = "lambda";
  double lambda = 0.0;
  int iterations = 10, level = 0, trial = 0;

  auto* gen = app.add_subcommand("gen", "generate a problem instance file");
  gen->add_option("--config", config_path, "sweep config (JSON)")->required();
  gen->add_option("--level", level, "level index within the config");
  gen->add_option("--trial", trial, "trial index");
  gen->add_option("--out", out_path, "instance file to write")->required();

  auto* solve = app.add_subcommand("solve", "run one rule on one instance");
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--rule", rule,
                    "lasso-l1|srlasso-l1|ladlasso-l1|lasso-l0|srlasso-l0|ladlasso-l0");
  solve->add_option("--lambda", lambda, "tuning parameter");
  solve->add_option("-K,--iterations", iterations, "greedy iterations");
  solve->add_option("--out", out_path, "trace CSV to write")->required();

  auto* sl = app.add_subcommand("sweep-lambda", "error vs tuning parameter study");
  sl->add_option("--config", config_path, "sweep config (JSON)")->required();
  sl->add_option("--out", out_path, "override the config output path");

  auto* si = app.add_subcommand("sweep-iter", "error vs iteration study");
  si->add_option("--config", config_path, "sweep config (JSON)")->required();
  si->add_option("--out", out_path, "override the config output path");

  auto* st = app.add_subcommand("stats", "summarize a sweep table");
  st->add_option("--in", in_path, "table CSV")->required();
  st->add_option("--kind", kind, "lambda|iter");
  st->add_option("--out", out_path, "stats CSV to write")->required();

  auto* pl = app.add_subcommand("plot", "render a sweep table to SVG");
  pl->add_option("--in", in_path, "table CSV")->required();
  pl->add_option("--kind", kind, "lambda|iter");
  pl->add_option("--out", out_path, "SVG to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(config_path, level, trial, out_path);
    if (solve->parsed()) return cmd_solve(instance_path, rule, lambda, iterations, out_path);
    if (sl->parsed()) return cmd_sweep_lambda(config_path, out_path);
    if (si->parsed()) return cmd_sweep_iter(config_path, out_path);
    if (st->parsed()) return cmd_stats(in_path, kind, out_path);
    if (pl->parsed()) return cmd_plot(in_path, kind, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
