#pragma once

// Dense double-precision tensors with a tape-based reverse-mode
// differentiation engine.
//
// A Tensor is a shared handle: copies alias the same storage, which is what
// lets a Graph record refer to parameters and intermediates without owning
// them. Use clone() for an independent value copy.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynsparse {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

namespace detail {
struct TensorStorage {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until first touched by backward
  bool requires_grad = false;
};
}  // namespace detail

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor filled(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> values, bool requires_grad = false);
  static Tensor scalar(double value);

  bool defined() const { return static_cast<bool>(d_); }
  const Shape& shape() const { return d_->shape; }
  std::size_t rank() const { return d_->shape.size(); }
  std::size_t dim(std::size_t axis) const { return d_->shape.at(axis); }
  std::size_t numel() const { return d_->data.size(); }

  std::span<double> data() { return d_->data; }
  std::span<const double> data() const { return d_->data; }
  double item() const;

  bool requires_grad() const { return d_->requires_grad; }
  void set_requires_grad(bool on) { d_->requires_grad = on; }

  bool has_grad() const { return !d_->grad.empty(); }
  // Allocates a zero buffer on first use. Const because a Tensor is a
  // handle: gradient storage is shared by every copy.
  std::span<double> grad() const;
  // Read-only access; an untouched gradient reads as zeros.
  std::vector<double> grad_or_zero() const;
  void zero_grad();

  // Deep value copy with no gradient history.
  Tensor clone() const;

  bool same(const Tensor& other) const { return d_ == other.d_; }

 private:
  explicit Tensor(std::shared_ptr<detail::TensorStorage> d) : d_(std::move(d)) {}
  std::shared_ptr<detail::TensorStorage> d_;
};

// Ordered operation tape.
//
// Records are appended as operations execute, so inputs always precede the
// record that consumes them. backward() replays the tape once, in reverse.
class Graph {
 public:
  enum class Mode { kRecord, kNoGrad };

  using BackwardFn = std::function<void()>;

  struct Record {
    std::string_view op;
    std::vector<Tensor> inputs;
    Tensor output;
    BackwardFn backward;
  };

  explicit Graph(Mode mode = Mode::kRecord) : mode_(mode) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Finalizes an operation result: checks that every value is finite and, if
  // any input requires a gradient, marks `out` as requiring one and appends
  // the backward step. The backward step reads out.grad() and accumulates
  // into the inputs' gradients.
  void record(std::string_view op, std::vector<Tensor> inputs, Tensor& out, BackwardFn fn);

  // Seeds d(loss)/d(loss) = 1 and runs every record once in reverse order.
  // Gradients accumulate into leaves; callers zero them between steps.
  void backward(const Tensor& loss);

  std::size_t size() const { return records_.size(); }
  const std::vector<Record>& records() const { return records_; }
  bool recording() const { return mode_ == Mode::kRecord; }

 private:
  Mode mode_;
  bool consumed_ = false;
  std::vector<Record> records_;
};

enum class Elementwise { kAdd, kSub, kMul, kSigmoid, kTanh, kRelu };

Elementwise elementwise_from_string(std::string_view name);
bool is_binary(Elementwise kind);

namespace ops {

// Binary kinds accept equal shapes, or a rank-1 operand whose length matches
// the other operand's last axis (broadcast along rows).
Tensor elementwise(Graph& g, Elementwise kind, const Tensor& a,
                   const std::optional<Tensor>& b = std::nullopt);

inline Tensor add(Graph& g, const Tensor& a, const Tensor& b) { return elementwise(g, Elementwise::kAdd, a, b); }
inline Tensor sub(Graph& g, const Tensor& a, const Tensor& b) { return elementwise(g, Elementwise::kSub, a, b); }
inline Tensor mul(Graph& g, const Tensor& a, const Tensor& b) { return elementwise(g, Elementwise::kMul, a, b); }
inline Tensor sigmoid(Graph& g, const Tensor& a) { return elementwise(g, Elementwise::kSigmoid, a); }
inline Tensor tanh(Graph& g, const Tensor& a) { return elementwise(g, Elementwise::kTanh, a); }
inline Tensor relu(Graph& g, const Tensor& a) { return elementwise(g, Elementwise::kRelu, a); }

// [m, k] x [k, n] -> [m, n]
Tensor matmul(Graph& g, const Tensor& a, const Tensor& b);

// x [n, in] times the transpose of w [out, in] -> [n, out].
Tensor linear(Graph& g, const Tensor& x, const Tensor& w);

// input [N, C, H, W], kernels [O, C, KH, KW] -> [N, O, H', W'] with
// H' = floor((H + 2 pad - KH) / stride) + 1. Zero padding, direct loops.
Tensor conv2d(Graph& g, const Tensor& input, const Tensor& kernels, std::size_t stride,
              std::size_t pad);

// Per-unit scale / shift along axis 1 of a rank-2 [N, C] or rank-4
// [N, C, H, W] tensor. `unit` has shape [C].
Tensor scale_units(Graph& g, const Tensor& x, const Tensor& unit);
Tensor add_units(Graph& g, const Tensor& x, const Tensor& unit);

Tensor reshape(Graph& g, const Tensor& x, Shape shape);

// x[index] along axis 0; the result drops that axis.
Tensor select(Graph& g, const Tensor& x, std::size_t index);
Tensor sum(Graph& g, const Tensor& x);
Tensor scale(Graph& g, const Tensor& x, double factor);

// Concatenates rank-2 tensors with equal column counts along axis 0.
Tensor concat_rows(Graph& g, const std::vector<Tensor>& parts);

// Mean over rows of -log softmax(logits)[label]. logits [N, C].
Tensor softmax_cross_entropy(Graph& g, const Tensor& logits, std::span<const int> labels);

}  // namespace ops
}  // namespace dynsparse
