#pragma once

// Bandwidth schedulers that anneal beta toward the discrete objective.
//
//   beta = min(beta0 * (1 + gamma * n)^p, beta_max)
//
// The global scheduler uses the global iteration count n_iters for every
// unit; the structure-wise scheduler uses each unit's own count of
// iterations in which it was sampled active.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynsparse/mask_gate.hpp"

namespace dynsparse {

enum class SchedulerMode { kGlobal, kStructureWise };

std::string_view to_string(SchedulerMode mode);
SchedulerMode scheduler_mode_from_string(std::string_view name);

struct SchedulerConfig {
  double gamma = 0.0005;
  double p = 0.7;
  double beta0 = 1.0;
  double beta_max = 100.0;
  // 0 selects one update per epoch (resolved by the trainer).
  std::uint64_t update_interval = 0;
  SchedulerMode mode = SchedulerMode::kStructureWise;
  // Sampled-iteration counters start at 1; false starts them at 0.
  bool counters_start_at_one = true;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::uint64_t initial_count() const { return counters_start_at_one ? 1 : 0; }
};

double beta_global(const SchedulerConfig& cfg, std::uint64_t n_iters);

// Recomputes every unit's beta from its sampled-iteration counter.
void beta_structurewise(const SchedulerConfig& cfg, MaskSet& mask);

class BandwidthScheduler {
 public:
  explicit BandwidthScheduler(SchedulerConfig cfg);

  const SchedulerConfig& config() const { return cfg_; }
  std::uint64_t n_iters() const { return n_iters_; }
  void set_n_iters(std::uint64_t n) { n_iters_ = n; }

  // Adds one to mask.n_sampled_iters[i] for each i in idx.
  // Throws std::out_of_range for an index past the mask.
  static void record_sampled(MaskSet& mask, std::span<const std::size_t> idx);

  // One iteration's bookkeeping: counters for every mask (from each mask's
  // active index set) and n_iters += 1.
  void record_iteration(std::span<MaskSet* const> masks, std::span<const std::vector<std::size_t>> idx);

  // Applies the configured scheduler to all masks when r % interval == 0.
  // Returns true when beta was recomputed.
  bool maybe_update(std::span<MaskSet* const> masks, std::uint64_t r, std::uint64_t interval) const;

 private:
  SchedulerConfig cfg_;
  std::uint64_t n_iters_ = 0;
};

}  // namespace dynsparse
