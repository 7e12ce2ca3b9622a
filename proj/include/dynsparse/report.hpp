#pragma once

// Architecture report: what survived training and what it costs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dynsparse/network.hpp"

namespace dynsparse {

struct LayerReport {
  LayerKind kind = LayerKind::kDense;
  std::size_t units = 0;
  bool masked = false;
  std::vector<std::size_t> kept;  // strictly increasing
  std::uint64_t params_dense = 0;
  std::uint64_t params_kept = 0;
  std::uint64_t macs_dense = 0;
  std::uint64_t macs_kept = 0;

  friend bool operator==(const LayerReport&, const LayerReport&) = default;
};

struct ArchitectureReport {
  ModelSpec spec;          // the full (unpruned) model
  std::size_t steps = 1;   // sequence length used for recurrent MACs
  std::vector<LayerReport> layers;
  std::uint64_t params_dense = 0;
  std::uint64_t params_retained = 0;
  double params_ratio = 1.0;
  std::uint64_t macs_dense = 0;
  std::uint64_t macs_retained = 0;
  double flops_ratio = 1.0;
  std::vector<std::uint64_t> train_flops_trace;  // per iteration, per sample
  std::map<std::string, double> metrics;

  // The model spec with every hidden layer shrunk to its kept units and unmasked.
  // Grouped dense layers lose their block structure here; slicing a network
  // keeps the exact connectivity instead.
  ModelSpec compact_spec() const;
  std::vector<std::vector<std::size_t>> kept() const;

  friend bool operator==(const ArchitectureReport&, const ArchitectureReport&) = default;
};

std::string report_to_json(const ArchitectureReport& report);
ArchitectureReport report_from_json(const std::string& text);
std::string report_table(const ArchitectureReport& report);

void write_report(const std::filesystem::path& json_path, const ArchitectureReport& report);
ArchitectureReport read_report(const std::filesystem::path& json_path);

// Model spec <-> JSON text, shared with the checkpoint and config tooling.
std::string spec_to_json(const ModelSpec& spec);
ModelSpec spec_from_json(const std::string& text);

}  // namespace dynsparse
