#pragma once

// In-memory datasets and their loaders.
//
// Classification data holds samples as flat row-major feature blocks
// (images as C x H x W). Sequence data is a token stream cut into
// non-overlapping windows of seq_len + 1 tokens; each window yields seq_len
// next-token predictions.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dynsparse/network.hpp"
#include "dynsparse/rng.hpp"
#include "dynsparse/tensor.hpp"

namespace dynsparse {

struct Batch {
  Tensor x;
  std::vector<int> labels;
};

struct ClassificationData {
  InputKind kind = InputKind::kVector;  // kImage or kVector
  Shape sample_shape;                   // {C, H, W} or {D}
  std::vector<double> features;
  std::vector<int> labels;
  std::size_t classes = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t sample_size() const { return shape_numel(sample_shape); }
  Batch batch(std::span<const std::size_t> idx) const;
};

struct SequenceData {
  std::vector<int> tokens;
  std::size_t vocab = 0;
  std::size_t seq_len = 32;

  std::size_t size() const { return tokens.size() > seq_len ? (tokens.size() - 1) / seq_len : 0; }
  // x [seq_len, B, vocab] one-hot, labels row t * B + b.
  Batch batch(std::span<const std::size_t> idx) const;
};

using Dataset = std::variant<ClassificationData, SequenceData>;

std::size_t dataset_size(const Dataset& d);
Batch make_batch(const Dataset& d, std::span<const std::size_t> idx);
bool is_sequence(const Dataset& d);

struct TaskData {
  Dataset train;
  Dataset val;
  Dataset test;
  std::string vocabulary;  // UTF-8 characters for char_lm, empty otherwise

  // Input layout and class count a model for this task needs.
  InputKind input_kind() const;
  Shape input_shape() const;
  std::size_t classes() const;
};

// ---------------------------------------------------------------- IDX

// IDX container: big-endian magic 0x0000 <type> <rank>, rank big-endian
// u32 extents, then payload. Only unsigned byte payloads (type 0x08).
struct IdxArray {
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> values;
};

IdxArray read_idx(const std::filesystem::path& path);
void write_idx(const std::filesystem::path& path, const IdxArray& array);

// Images [N, rows, cols] (or [N, C, rows, cols]) plus labels [N]. Pixels are
// scaled to [0, 1] and then normalized per channel with the given mean/std.
ClassificationData load_idx_classification(const std::filesystem::path& images,
                                           const std::filesystem::path& labels, std::size_t classes);

// Per-channel mean and standard deviation over all pixels.
std::pair<std::vector<double>, std::vector<double>> channel_stats(const ClassificationData& d);
void normalize_channels(ClassificationData& d, const std::vector<double>& mean, const std::vector<double>& stddev);

// ---------------------------------------------------------------- corpus

struct Vocabulary {
  std::vector<std::string> symbols;  // UTF-8 code points, sorted by byte value

  int id(const std::string& symbol) const;
  std::string joined() const;
};

// Splits UTF-8 text into code points; throws on malformed sequences.
std::vector<std::string> utf8_codepoints(const std::string& text);

Vocabulary build_vocabulary(const std::string& text);

// Reads a UTF-8 corpus and splits its tokens into contiguous
// train / val / test ranges by the given fractions.
TaskData load_char_corpus(const std::filesystem::path& path, std::size_t seq_len, double val_fraction,
                          double test_fraction);
TaskData char_corpus_from_text(const std::string& text, std::size_t seq_len, double val_fraction,
                               double test_fraction);

// ---------------------------------------------------------------- synthetic

struct SyntheticSpec {
  std::size_t features = 32;
  double noise_fraction = 0.5;  // trailing fraction of features that is pure noise
  std::size_t classes = 4;
  std::size_t groups = 16;      // teacher structure: one hidden unit per signal group
  std::size_t n_train = 4000;
  std::size_t n_val = 1000;
  std::size_t n_test = 1000;
  std::uint64_t seed = 7;
};

// Labels come from a random grouped teacher that reads only the signal
// features: one unit-norm linear projection per signal feature group, then
// a balanced +-1 readout per group and argmax. Noise features are i.i.d.
// standard normal and independent of the label.
TaskData make_synthetic_classification(const SyntheticSpec& spec);

// Number of leading features that carry signal.
std::size_t signal_features(const SyntheticSpec& spec);

}  // namespace dynsparse
