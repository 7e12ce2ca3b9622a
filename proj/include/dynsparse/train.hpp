#pragma once

// Joint SGD training of weights and mask variables.
//
// One iteration: draw a minibatch, sample gates for every mask, run the
// gated forward pass, minimize cross-entropy + lambda * sum(sigmoid(beta s)),
// take one momentum-SGD step for weights and one for mask variables, bump
// the sampled-iteration counters and, every `update_interval` iterations,
// recompute beta.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dynsparse/dataset.hpp"
#include "dynsparse/network.hpp"
#include "dynsparse/report.hpp"
#include "dynsparse/scheduler.hpp"

namespace dynsparse {

struct LrStep {
  std::size_t epoch = 0;  // 0-based epoch from which the divisor applies
  double divisor = 1.0;

  friend bool operator==(const LrStep&, const LrStep&) = default;
};

struct TrainConfig {
  double lambda = 0.01;
  double lr_w = 0.1;
  double lr_s = 0.1;
  double momentum_w = 0.9;
  double momentum_s = 0.9;
  double weight_decay_w = 1e-4;
  // Mask variables never decay; kept as a named constant for the update.
  static constexpr double weight_decay_s = 0.0;
  std::size_t epochs = 10;
  std::size_t batch_size = 64;
  std::vector<LrStep> lr_schedule;
  std::uint64_t seed = 1;
  SchedulerConfig scheduler;

  void validate() const;
  // Learning-rate multiplier in effect during `epoch` (product of 1/divisor).
  double lr_factor(std::size_t epoch) const;
};

// v <- momentum * v + grad + weight_decay * param;  param <- param - lr * v
void sgd_step(std::span<double> param, std::span<const double> grad, std::span<double> velocity, double lr,
              double momentum, double weight_decay);
void sgd_step(Tensor& param, const Tensor& grad, Tensor& velocity, double lr, double momentum,
              double weight_decay);

// sgd_step on a mask's variables with zero weight decay. Units whose relaxed
// value is saturated (exactly 0 or 1) are left untouched and their velocity
// is cleared, which makes both saturated states absorbing.
void mask_sgd_step(MaskSet& mask, std::span<double> velocity, double lr, double momentum);

struct IterationRecord {
  std::uint64_t iteration = 0;  // 1-based
  std::size_t epoch = 0;        // 0-based
  double loss = 0.0;            // cross-entropy on the minibatch
  double penalty = 0.0;         // sum of relaxed mask values
  double objective = 0.0;       // loss + lambda * penalty
  double batch_metric = 0.0;    // accuracy, or perplexity for sequences
  std::vector<std::size_t> active_units;   // per layer, sampled gates
  std::vector<std::uint64_t> active_macs;  // per layer, per sample
  std::uint64_t total_macs = 0;
  double beta_min = 0.0;
  double beta_mean = 0.0;
  double beta_max = 0.0;
  bool end_of_epoch = false;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct TrainTrace {
  std::uint64_t dense_macs = 0;  // per sample, every unit active
  std::vector<IterationRecord> records;
};

// Everything besides the network needed to continue a run bit-identically.
struct TrainerState {
  std::size_t epoch = 0;
  std::uint64_t iteration = 0;
  std::uint64_t n_iters = 0;
  std::string rng_state;
  std::vector<std::vector<double>> velocity_w;
  std::vector<std::vector<double>> velocity_s;

  friend bool operator==(const TrainerState&, const TrainerState&) = default;
};

class Trainer {
 public:
  using Callback = std::function<void(const IterationRecord&)>;

  Trainer(Network& net, const Dataset& train, TrainConfig cfg);

  // Runs one full epoch. Throws std::runtime_error naming the iteration if a
  // non-finite value appears.
  void run_epoch(const Callback& on_iteration = {});
  void run(const Callback& on_iteration = {});

  bool finished() const { return state_.epoch >= cfg_.epochs; }
  const TrainerState& state() const { return state_; }
  // `trace`, when given, replaces the recorded history (resuming a run).
  void restore(const TrainerState& state, const TrainTrace* trace = nullptr);

  const TrainTrace& trace() const { return trace_; }
  const TrainConfig& config() const { return cfg_; }
  std::uint64_t iterations_per_epoch() const;
  std::uint64_t update_interval() const;
  std::size_t steps() const { return steps_; }

 private:
  IterationRecord step(std::span<const std::size_t> batch_idx);

  Network& net_;
  const Dataset& data_;
  TrainConfig cfg_;
  BandwidthScheduler scheduler_;
  Rng rng_;
  TrainerState state_;
  TrainTrace trace_;
  std::size_t steps_ = 1;  // sequence length for MAC accounting
};

TrainTrace train_run(Network& net, const Dataset& train, const TrainConfig& cfg,
                     const Trainer::Callback& on_iteration = {});

enum class EvalMode { kStochastic, kDeterministic };

struct EvalResult {
  double metric = 0.0;     // accuracy in [0, 1], or perplexity
  double mean_loss = 0.0;  // mean cross-entropy per prediction
  bool perplexity = false;
};

// Deterministic mode applies sign(s) masks; stochastic mode samples gates
// from a copy of the network with a generator seeded by `seed`.
EvalResult evaluate(const Network& net, const Dataset& data, EvalMode mode, std::uint64_t seed = 0,
                    std::size_t batch_size = 256);

// Builds the compact architecture with fresh weights and no masks, trains it
// with the same budget and returns its metric on `eval`.
EvalResult retrain_from_scratch(const ArchitectureReport& report, const Dataset& train, const Dataset& eval,
                                TrainConfig cfg);

}  // namespace dynsparse
