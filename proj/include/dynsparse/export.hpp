#pragma once

// Compact-model extraction, equivalence checking, cost accounting and
// checkpoints.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "dynsparse/network.hpp"
#include "dynsparse/report.hpp"
#include "dynsparse/train.hpp"

namespace dynsparse {

// Kept unit indices per layer under the extracted sign(s) masks; the head
// and other unmasked layers keep everything.
std::vector<std::vector<std::size_t>> kept_units(const Network& net);

// Physically removes every unit not listed in `kept` together with the
// matching input slices of the next layer. The result carries no masks.
// Throws std::invalid_argument naming a layer that keeps nothing.
Network slice_network(const Network& net, const std::vector<std::vector<std::size_t>>& kept);

Network prune_model(const Network& net);

// Max |full - compact| over all probes and output coordinates, with the
// full model gated by its extracted masks.
double equivalence_check(const Network& full, const Network& compact, const std::vector<Tensor>& probes);
inline constexpr double kEquivalenceTolerance = 1e-9;

// Parameter and MAC accounting of `net` at its extracted masks against the
// same network with every unit active.
ArchitectureReport account(const Network& net, std::size_t steps = 1, const TrainTrace* trace = nullptr);

// ---------------------------------------------------------------- checkpoints

struct Checkpoint {
  Network net;
  std::optional<TrainerState> trainer;
  TrainTrace trace;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Written to a sibling temp file and renamed into place.
void save_checkpoint(const std::filesystem::path& path, const Network& net, const TrainerState* trainer = nullptr,
                     const TrainTrace* trace = nullptr);

// Throws std::runtime_error on a bad magic, version mismatch, truncation or
// checksum failure. Nothing is returned unless the whole file parsed.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace dynsparse
