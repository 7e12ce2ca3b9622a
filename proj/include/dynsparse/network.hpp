#pragma once

// Chain of maskable layers followed by an unmasked linear classifier head.
//
// Supported topologies: image input -> conv* -> dense* -> head, vector input
// -> dense* -> head, and token input -> lstm+ -> dense* -> head. The chain
// order is what cross-layer accounting and pruning rely on: a layer's active
// inputs are the previous layer's active units.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynsparse/layers.hpp"

namespace dynsparse {

enum class LayerKind { kConv, kDense, kLstm };
enum class InputKind { kImage, kVector, kSequence };

std::string_view to_string(LayerKind kind);
std::string_view to_string(InputKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::kDense;
  std::size_t units = 0;
  std::size_t kernel = 3;
  std::size_t stride = 1;
  std::size_t pad = 1;
  std::size_t groups = 1;
  Activation activation = Activation::kRelu;
  bool masked = true;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct ModelSpec {
  InputKind input = InputKind::kVector;
  Shape input_shape;  // image {C, H, W}; vector {D}; sequence {vocab}
  std::vector<LayerSpec> hidden;
  std::size_t classes = 0;

  // Hidden layers plus the classifier head.
  std::vector<LayerSpec> all_layers() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

using Layer = std::variant<MaskedConv2d, MaskedDense, MaskedLstm>;

std::size_t layer_units(const Layer& layer);
const std::optional<MaskSet>& layer_mask(const Layer& layer);
std::optional<MaskSet>& layer_mask(Layer& layer);

struct LayerGeometry {
  std::size_t in_units = 0;    // channels / features seen by the layer
  std::size_t in_spatial = 1;  // H*W of each input channel when flattened
  bool flatten_input = false;  // dense layer reading a conv feature map
  std::size_t out_h = 1;
  std::size_t out_w = 1;
};

// Number of MACs / parameters per layer, plus sums.
struct CostBreakdown {
  std::vector<std::uint64_t> per_layer;
  std::uint64_t total() const;
};

class Network {
 public:
  // Fresh network with random weights. Hidden layers marked masked get a
  // MaskSet when mask_init is given; the head is never masked.
  static Network build(const ModelSpec& spec, const std::optional<MaskInit>& mask_init, Rng& rng);

  // Assembles a network from existing layers (used by pruning and
  // checkpoint loading). Validates shapes against the model spec.
  static Network assemble(ModelSpec spec, std::vector<Layer> layers);

  // image x [N, C, H, W] or vector x [N, D] -> logits [N, classes]
  // sequence x [T, B, vocab] -> logits [T * B, classes], row t * B + b
  Tensor forward(Graph& g, const Tensor& x, GateMode mode) const;

  // Samples every mask; returns the active index set per masked layer, in
  // the order of masks().
  std::vector<std::vector<std::size_t>> sample_gates(Rng& rng);

  std::vector<MaskSet*> masks();
  std::vector<const MaskSet*> masks() const;
  // Index into layers() of each entry of masks().
  std::vector<std::size_t> masked_layer_indices() const;

  // Trainable weights and biases (not mask variables), stable order.
  std::vector<Tensor> parameters() const;

  // Binary output pattern per layer under the given mode.
  std::vector<std::vector<std::uint8_t>> gate_patterns(GateMode mode) const;

  // Per-sample MACs and parameter counts given per-layer output patterns.
  // `steps` is the sequence length for recurrent layers.
  CostBreakdown macs(const std::vector<std::vector<std::uint8_t>>& patterns, std::size_t steps = 1) const;
  CostBreakdown params(const std::vector<std::vector<std::uint8_t>>& patterns) const;

  // Input pattern of layer i derived from the previous layer's pattern
  // (expanded across spatial positions for flattened conv maps).
  std::vector<std::uint8_t> input_pattern(std::size_t i, const std::vector<std::vector<std::uint8_t>>& patterns) const;

  const ModelSpec& spec() const { return spec_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& layers() { return layers_; }
  const LayerGeometry& geometry(std::size_t i) const { return geometry_.at(i); }

  // Deep copy; a plain copy aliases tensor storage.
  Network clone() const;

 private:
  ModelSpec spec_;
  std::vector<Layer> layers_;
  std::vector<LayerGeometry> geometry_;

  void compute_geometry();
};

}  // namespace dynsparse
