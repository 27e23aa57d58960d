#pragma once

#include "womp/losses.hpp"
#include "womp/problems.hpp"
#include "womp/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace womp {

enum class Setting { GaussianSparse, GaussianOracle, FunctionApprox };

std::string setting_name(Setting s);
Setting parse_setting_name(const std::string& name);

/// One experiment configuration. Levels are the cross product of eta_list
/// and corrupt_fraction_list; per-trial corruption count is
/// round(corrupt_fraction * m). lambda_min/max of -1 select the family
/// default range (1e-4..10 for Lasso/SrLasso, 1e-3..10 for LadLasso);
/// lambda_min of exactly 0 puts the unregularized run on the grid.
struct SweepConfig {
  Setting setting = Setting::GaussianSparse;
  LossFamily family = LossFamily::Lasso;
  Regularizer regularizer = Regularizer::L1w;
  Index n = 0;
  Index m = 0;
  Index s = 0;
  int d = 0;
  int hc_order = 0;
  std::vector<double> eta_list{0.0};
  double corruption_magnitude = 0.0;  // M
  std::vector<double> corrupt_fraction_list{0.0};
  double w0 = 1.0;
  double oracle_fraction = 0.5;
  double lambda_min = -1.0;
  double lambda_max = -1.0;
  int lambda_count = 50;
  int k_iterations = 0;
  int n_trials = 1;
  std::uint64_t base_seed = 0;
  Index mc_points = 10000;
  std::string out;
};

SweepConfig load_config(const std::string& path);
void save_config(const SweepConfig& cfg, const std::string& path);

/// Log-spaced grid of lambda_count points over the configured (or family
/// default) range.
std::vector<double> lambda_grid(const SweepConfig& cfg);

struct Level {
  int id;  // 0-based position in the eta x corruption cross product
  double eta;
  double corrupt_fraction;
  std::string desc;
};

std::vector<Level> sweep_levels(const SweepConfig& cfg);

struct LambdaCell {
  int level_id;
  std::string level_desc;
  double lambda;
  int trial;
  double rel_error;  // nan when status != ok
  std::string status;
};

struct LambdaTable {
  std::vector<LambdaCell> rows;
};

struct IterCell {
  double lambda;
  int trial;
  int k;
  double rel_error;
  double fidelity;
  double loss;
  Index selected_index;  // 1-based; 0 on carried-forward rows
  Index support_size;
  std::string status;    // ok | stalled | stopped | error:<reason>
};

struct IterTable {
  std::vector<IterCell> rows;
};

/// For every level and trial: generate the trial instance, run the greedy
/// solver once per lambda at fixed K, and record the relative error
/// (coefficient error when the truth is known, Monte Carlo L2 estimate for
/// function approximation). Cells that throw become status rows; the sweep
/// never aborts. Rows come out in (level, lambda, trial) order and the whole
/// table is a pure function of the config.
LambdaTable sweep_lambda(const SweepConfig& cfg);

/// One run per (lambda, trial) on the first configured level, recording every
/// iteration; lambda = 0 is always included. After a run terminates early its
/// final state is carried forward to K (an idle iteration repeats forever),
/// with status "stalled".
IterTable sweep_iterations(const SweepConfig& cfg);

struct LogStats {
  double mu;     // mean of log10(samples)
  double sigma;  // (n-1)-denominator standard deviation of log10(samples)
  bool single_sample;
};

LogStats log_stats(const std::vector<double>& samples);

enum class BestLambdaMetric { Median, LogMean };

/// Grid lambda minimizing the per-lambda median (or mean-of-log) relative
/// error over the level's ok rows; lowest lambda on ties.
double best_lambda(const LambdaTable& table, int level_id,
                   BestLambdaMetric metric = BestLambdaMetric::Median);

struct LambdaStatRow {
  int level_id;
  std::string level_desc;
  double lambda;
  int count;
  double q1, median, q3;
  double mu, sigma;  // nan when any sample is nonpositive
};

struct IterStatRow {
  double lambda;
  int k;
  int count;
  double q1, median, q3;
  double mu, sigma;
};

std::vector<LambdaStatRow> summarize_lambda(const LambdaTable& table);
std::vector<IterStatRow> summarize_iter(const IterTable& table);

// CSV round trip. Writers are deterministic byte-for-byte given equal tables.
void write_lambda_csv(const LambdaTable& table, const std::string& path);
LambdaTable read_lambda_csv(const std::string& path);
void write_iter_csv(const IterTable& table, const std::string& path);
IterTable read_iter_csv(const std::string& path);
void write_lambda_stats_csv(const std::vector<LambdaStatRow>& rows, const std::string& path);
void write_iter_stats_csv(const std::vector<IterStatRow>& rows, const std::string& path);

/// Worker count: WOMP_THREADS if set, otherwise hardware concurrency.
int worker_count();

}  // namespace womp
