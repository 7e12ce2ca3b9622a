#pragma once

// Structure masks relaxed through a scaled hard sigmoid and sampled as
// Bernoulli gates.
//
// Each structured unit i (a filter, a neuron, a hidden unit) owns a
// continuous variable s[i]. During training the unit is multiplied by
// hard_sigmoid(beta[i], s[i]) * q[i] with q[i] ~ Bernoulli(hard_sigmoid(...)),
// and the sum of hard_sigmoid values is penalized. The deployed mask is the
// sign of s. A unit whose relaxed value is exactly 0 or 1 has zero gradient
// from both terms and never changes again.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dynsparse/rng.hpp"
#include "dynsparse/tensor.hpp"

namespace dynsparse {

struct MaskInit {
  double beta0 = 1.0;
  std::uint64_t initial_count = 1;
};

struct MaskSet {
  Tensor s;                                  // [units], trainable, starts at 0
  std::vector<double> beta;                  // per unit, within [beta0, beta_max]
  std::vector<std::uint64_t> n_sampled_iters;
  std::vector<std::uint8_t> q;               // last sampled gates, each 0 or 1

  static MaskSet create(std::size_t units, const MaskInit& init = {});

  std::size_t size() const { return beta.size(); }
};

double hard_sigmoid(double beta, double s);

// beta inside the open linear region, 0 on the flat parts and at both kinks.
double hard_sigmoid_grad(double beta, double s);

// hard_sigmoid(beta[i], s[i]) for every unit.
std::vector<double> gate_probabilities(const MaskSet& mask);

// True when the relaxed value of unit i is exactly 0 or 1.
bool is_saturated(const MaskSet& mask, std::size_t i);

// Draws q[i] ~ Bernoulli(hard_sigmoid(beta[i], s[i])) independently, stores q
// on the mask and returns the indices where q == 1.
std::vector<std::size_t> sample_gates(MaskSet& mask, Rng& rng);

// Sum of hard_sigmoid over every unit of every mask. Differentiable in each
// s; the trade-off factor is applied by the caller.
Tensor sparsity_penalty(Graph& g, std::span<MaskSet* const> masks);

// Per-unit factor hard_sigmoid(beta, s) * q as a [units] tensor. Its
// gradient with respect to s[i] is q[i] * hard_sigmoid_grad(beta[i], s[i]).
Tensor gate_factor(Graph& g, const MaskSet& mask);

// m[i] = 1 iff s[i] > 0. Ties at exactly 0 are pruned.
std::vector<std::uint8_t> extract_final_mask(const MaskSet& mask);

}  // namespace dynsparse
