#pragma once

// Maskable structured layers.
//
// Structured units are conv filters (output channels), dense output neurons
// and LSTM hidden units. A unit's gate multiplies everything the unit emits,
// bias included, so a unit with gate 0 is exactly dead: zero output and zero
// gradient on every parameter it owns.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynsparse/mask_gate.hpp"
#include "dynsparse/rng.hpp"
#include "dynsparse/tensor.hpp"

namespace dynsparse {

enum class Activation { kNone, kRelu };

// kSampled: sigmoid(beta s) * q from this iteration's samples.
// kDeterministic: the extracted binary mask sign(s).
// kOpen: no gating (also what unmasked layers always do).
enum class GateMode { kSampled, kDeterministic, kOpen };

// Gate tensors for one forward pass. `factor` scales unit outputs; `binary`
// is the 0/1 pattern behind it (q or m), used where a unit must be zeroed
// without compounding the relaxed scale.
struct UnitGate {
  std::optional<Tensor> factor;
  std::optional<Tensor> binary;
};

UnitGate make_gate(Graph& g, const std::optional<MaskSet>& mask, GateMode mode);

// Binary gate pattern the given mode applies; all ones for unmasked layers.
std::vector<std::uint8_t> gate_pattern(const std::optional<MaskSet>& mask, std::size_t units, GateMode mode);

struct MaskedConv2d {
  Tensor kernels;  // [out, in, k, k]
  Tensor bias;     // [out]
  std::size_t stride = 1;
  std::size_t pad = 0;
  Activation activation = Activation::kRelu;
  std::optional<MaskSet> mask;  // over output filters

  static MaskedConv2d create(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
                             std::size_t stride, std::size_t pad, Activation act, const std::optional<MaskInit>& mask_init, Rng& rng);

  std::size_t in_channels() const { return kernels.dim(1); }
  std::size_t units() const { return kernels.dim(0); }
  std::size_t kernel() const { return kernels.dim(2); }

  // x [N, in, H, W] -> [N, out, H', W']
  Tensor forward(Graph& g, const Tensor& x, GateMode mode) const;
};

struct MaskedDense {
  Tensor weight;  // [out, in]
  Tensor bias;    // [out]
  Activation activation = Activation::kRelu;
  std::optional<MaskSet> mask;  // over output neurons
  // Fixed 0/1 pattern [out, in] restricting which inputs feed each output.
  // Absent means fully connected.
  std::optional<Tensor> connectivity;

  // groups > 1 splits inputs and outputs into that many contiguous blocks;
  // output block g only sees input block g.
  static MaskedDense create(std::size_t in, std::size_t out, std::size_t groups, Activation act,
                            const std::optional<MaskInit>& mask_init, Rng& rng);

  std::size_t in_features() const { return weight.dim(1); }
  std::size_t units() const { return weight.dim(0); }
  bool connected(std::size_t o, std::size_t i) const;

  // x [N, in] -> [N, out]
  Tensor forward(Graph& g, const Tensor& x, GateMode mode) const;
};

struct MaskedLstm {
  enum Gate : std::size_t { kForget = 0, kInput = 1, kOutput = 2, kCell = 3 };

  std::array<Tensor, 4> w;  // [hidden, in]
  std::array<Tensor, 4> u;  // [hidden, hidden]
  std::array<Tensor, 4> b;  // [hidden]
  std::optional<MaskSet> mask;  // over hidden units, shared by all four gates

  static MaskedLstm create(std::size_t in, std::size_t hidden, const std::optional<MaskInit>& mask_init,
                           Rng& rng);

  std::size_t in_features() const { return w[0].dim(1); }
  std::size_t units() const { return w[0].dim(0); }

  struct Output {
    std::vector<Tensor> h;  // per step, [batch, hidden]
    Tensor h_last;
    Tensor c_last;
  };

  // Per step:
  //   f, i, o = sigmoid(W x + U h + b),  c~ = tanh(W_c x + U_c h + b_c)
  //   c = bin * (f * c_prev + i * c~)
  //   h = factor * (o * tanh(c))
  // where factor/bin come from make_gate. A unit with gate 0 has h = c = 0 at
  // every step, so its rows of W and U and its column of U get no gradient.
  Output forward(Graph& g, const std::vector<Tensor>& steps, const Tensor& h0, const Tensor& c0,
                 GateMode mode) const;

  // x_seq [time, batch, in]
  Output forward(Graph& g, const Tensor& x_seq, const Tensor& h0, const Tensor& c0, GateMode mode) const;
};

// Multiply-accumulate counts for one sample given which input features /
// channels and which output units are active.
//
// conv: k^2 * active_in * active_out * H_out * W_out
// dense: active (input, output) pairs that are connected
// lstm: steps * (4 * (h * d + h * h) + 3 * h) with h active hidden units and
//       d active inputs; the 3 * h term is the three elementwise products.
std::uint64_t active_flops(const MaskedConv2d& layer, std::span<const std::uint8_t> in_gates,
                           std::span<const std::uint8_t> out_gates, std::size_t out_h, std::size_t out_w);
std::uint64_t active_flops(const MaskedDense& layer, std::span<const std::uint8_t> in_gates,
                           std::span<const std::uint8_t> out_gates);
std::uint64_t active_flops(const MaskedLstm& layer, std::span<const std::uint8_t> in_gates,
                           std::span<const std::uint8_t> out_gates, std::size_t steps);

// Parameters owned by the active part of a layer (weights plus biases).
std::uint64_t active_params(const MaskedConv2d& layer, std::span<const std::uint8_t> in_gates,
                            std::span<const std::uint8_t> out_gates);
std::uint64_t active_params(const MaskedDense& layer, std::span<const std::uint8_t> in_gates,
                            std::span<const std::uint8_t> out_gates);
std::uint64_t active_params(const MaskedLstm& layer, std::span<const std::uint8_t> in_gates,
                            std::span<const std::uint8_t> out_gates);

}  // namespace dynsparse
