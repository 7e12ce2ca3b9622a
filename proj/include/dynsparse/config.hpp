#pragma once

// Experiment configuration: an INI-style text file, see docs/formats.md.
//
//   # comment
//   [section]
//   key = value
//
// Unknown sections or keys are errors. Syntax errors carry the line number,
// semantic errors the section and key.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynsparse/dataset.hpp"
#include "dynsparse/network.hpp"
#include "dynsparse/train.hpp"

namespace dynsparse {

enum class Task { kSyntheticClassify, kImageClassify, kCharLm };

const char* to_string(Task task);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataConfig {
  SyntheticSpec synthetic;

  std::filesystem::path train_images;
  std::filesystem::path train_labels;
  std::filesystem::path test_images;
  std::filesystem::path test_labels;
  std::size_t classes = 10;

  std::filesystem::path corpus;
  std::size_t seq_len = 32;
  double val_fraction = 0.1;   // image: tail of the training file; char_lm: of the corpus
  double test_fraction = 0.1;  // char_lm only
};

struct SweepConfig {
  std::vector<double> gamma;
  std::vector<double> p;
  std::vector<double> lambda;
  std::size_t workers = 0;  // 0 = hardware concurrency
};

struct CompareConfig {
  std::vector<std::uint64_t> seeds;
  // Global-scheduler runs try each lambda and the one whose final sparsity
  // lands closest to the structure-wise run is paired with it.
  std::vector<double> global_lambdas;
  double match_tolerance = 0.02;
};

struct RetrainConfig {
  std::optional<std::size_t> epochs;  // defaults to [train] epochs
};

struct ExperimentConfig {
  Task task = Task::kSyntheticClassify;
  std::string run_id = "run";
  std::filesystem::path out = "runs";
  std::size_t log_interval = 50;
  std::size_t eval_batch = 256;

  // Hidden layers only; input layout and class count come from the data.
  std::vector<LayerSpec> layers;
  bool masks = true;  // false trains the same stack densely

  TrainConfig train;
  DataConfig data;
  SweepConfig sweep;
  CompareConfig compare;
  RetrainConfig retrain;
};

// Relative paths in the file resolve against `base_dir`.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                              const std::string& source_name = "config");
// Relative paths resolve against the file's directory.
ExperimentConfig load_config(const std::filesystem::path& path);

// Fully resolved config text; parse_config on it gives back an equal config.
std::string config_to_ini(const ExperimentConfig& cfg);

// Throws ConfigError on the first violated constraint.
void validate(const ExperimentConfig& cfg);

}  // namespace dynsparse
