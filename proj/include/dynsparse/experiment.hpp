#pragma once

// Experiment orchestration on top of the training library: dataset loading,
// single runs with metrics/report/checkpoint files, grid sweeps, paired
// scheduler comparisons and the retrain-from-scratch study.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynsparse/config.hpp"
#include "dynsparse/dataset.hpp"
#include "dynsparse/network.hpp"
#include "dynsparse/report.hpp"

namespace dynsparse {

// ---------------------------------------------------------------- metrics

// One row of metrics.csv; column order is kMetricsColumns.
struct MetricsRow {
  std::string run_id;
  std::uint64_t iteration = 0;
  std::size_t epoch = 0;
  double loss = 0.0;
  double penalty = 0.0;
  double train_metric = 0.0;
  std::optional<double> val_metric;  // end-of-epoch rows only
  double global_sparsity = 0.0;      // pruned fraction of all masked units, sign(s)
  std::vector<double> kept_ratios;   // per masked layer, sign(s)
  double active_macs_ratio = 0.0;    // sampled subnetwork vs dense
  double beta_min = 0.0;
  double beta_mean = 0.0;
  double beta_max = 0.0;
  double wall_time_s = 0.0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

extern const std::vector<std::string> kMetricsColumns;

std::string metrics_header();
std::string format_metrics_row(const MetricsRow& row);
// Throws std::runtime_error with the line number on any schema violation.
MetricsRow parse_metrics_row(const std::string& line);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------- runs

TaskData load_dataset(const ExperimentConfig& cfg);
ModelSpec model_spec(const ExperimentConfig& cfg, const TaskData& data);

struct RunResult {
  std::filesystem::path dir;
  ArchitectureReport report;
  double val_metric = 0.0;
  double test_metric = 0.0;
  bool perplexity = false;
  double sparsity = 0.0;               // pruned fraction of masked units
  double train_macs_final_half = 0.0;  // mean sampled MAC ratio, last 50% of iterations
  bool compact_ok = false;             // false when some layer kept nothing
  double equivalence = 0.0;            // max |full - compact| on test probes
};

// Trains one model into `dir`: config.ini, metrics.csv, checkpoint.bin
// (rewritten after every epoch), report.json, report.txt and, unless the
// result is degenerate, compact.bin. With `resume`, continues from
// checkpoint.bin when present.
RunResult run_experiment(const ExperimentConfig& cfg, const TaskData& data, const std::filesystem::path& dir,
                         bool resume = false);

// Rebuilds the summary of a finished run from its report.json.
RunResult read_run(const std::filesystem::path& dir);

// ---------------------------------------------------------------- studies

struct SweepPoint {
  double gamma = 0.0;
  double p = 0.0;
  double lambda = 0.0;
  std::string name;  // subdirectory
  std::optional<RunResult> result;
  std::string error;
};

// Cartesian grid over [sweep] gamma x p x lambda (an empty list means the
// single value from [scheduler]/[train]); writes one subdirectory per point
// and aggregate.csv. Points run on a bounded worker pool.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, const TaskData& data, const std::filesystem::path& out);

struct ComparePair {
  std::uint64_t seed = 0;
  RunResult structure;
  std::vector<std::pair<double, RunResult>> global;  // (lambda, run) for every tried lambda
  std::size_t chosen = 0;                             // index into global closest in sparsity
  bool matched = false;                               // |sparsity gap| within tolerance
  bool structure_not_worse = false;                   // on the test metric
};

// For every seed: one structure-wise run at [train] lambda and global runs
// over [compare] global_lambdas. Writes compare.csv and compare.txt.
std::vector<ComparePair> compare_schedulers(const ExperimentConfig& cfg, const TaskData& data,
                                            const std::filesystem::path& out);

struct RetrainSummary {
  double pruned_metric = 0.0;
  double scratch_metric = 0.0;
  double delta = 0.0;  // scratch - pruned
  bool perplexity = false;
};

// Retrains the compact architecture of the run in `from` from fresh weights
// with the same budget and compares test metrics. Writes retrain.json to
// `out`.
RetrainSummary retrain_scratch(const ExperimentConfig& cfg, const TaskData& data, const std::filesystem::path& from,
                               const std::filesystem::path& out);

// Runs fn(i) for i in [0, n) on at most `workers` threads (0 = hardware
// concurrency). The first exception is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace dynsparse
