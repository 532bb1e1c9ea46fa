// Copyright 2026 The VisionNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VISIONNET__AUTOGRAD_HPP_
#define VISIONNET__AUTOGRAD_HPP_

#include "visionnet/tensor.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace visionnet
{

struct Node
{
  Tensor value;
  Tensor grad;  // allocated on first accumulation
  bool requires_grad = false;
  bool backward_done = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node &)> backward_fn;

  bool has_grad() const { return !grad.empty(); }
  Tensor & grad_buffer();
};

/// Handle to a value in the recorded computation. Copies share the node.
class Var
{
public:
  Var() = default;
  explicit Var(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  const Tensor & value() const { return node_->value; }
  Tensor & mutable_value() { return node_->value; }
  const Tensor & grad() const { return node_->grad; }
  bool has_grad() const { return node_->has_grad(); }
  bool requires_grad() const { return node_->requires_grad; }
  const Shape & shape() const { return node_->value.shape(); }
  std::size_t size() const { return node_->value.size(); }
  double item() const { return node_->value.item(); }

  void zero_grad() { node_->grad = Tensor(); }
  const std::shared_ptr<Node> & node() const { return node_; }
  explicit operator bool() const { return static_cast<bool>(node_); }

private:
  std::shared_ptr<Node> node_;
};

/// Leaf without gradient.
Var constant(Tensor value);
/// Leaf that accumulates gradients.
Var leaf(Tensor value);

/// Reverse-mode pass from a scalar. Throws on non-scalar input or when the
/// same loss is differentiated twice.
void backward(const Var & loss);

// Elementwise ops accept identical shapes or a one-element operand.
Var add(const Var & a, const Var & b);
Var sub(const Var & a, const Var & b);
Var mul(const Var & a, const Var & b);
Var scale(const Var & a, double s);
Var add_scalar(const Var & a, double s);
Var one_minus(const Var & a);
/// base^exponent elementwise; base must be non-negative.
Var pow(const Var & base, const Var & exponent);
Var relu(const Var & a);
Var sigmoid(const Var & a);
Var softplus(const Var & a);
Var abs(const Var & a);
Var square(const Var & a);

Var sum(const Var & a);
Var mean(const Var & a);

Var reshape(const Var & a, Shape shape);
/// Concatenates rank-4 tensors along the channel axis.
Var concat_channels(const Var & a, const Var & b);

/// Elementwise maximum over a non-empty set of equally shaped tensors.
/// Gradient flows to the first maximal input.
Var maxpool_set(std::span<const Var> inputs);

/// Cross-correlation. input [N, C, H, W], weight [O, C, K, K], bias [O].
Var conv2d(const Var & input, const Var & weight, const Var & bias, std::size_t stride,
           std::size_t padding);
/// Transposed convolution. input [N, C, H, W], weight [C, O, K, K], bias [O].
/// Output size (H - 1) * stride - 2 * padding + K.
Var deconv2d(const Var & input, const Var & weight, const Var & bias, std::size_t stride,
             std::size_t padding);
/// Per-channel convolution. input [N, C, H, W], weight [C, 1, K, K], bias [C].
Var depthwise_conv2d(const Var & input, const Var & weight, const Var & bias,
                     std::size_t stride, std::size_t padding);
/// Affine map of each flattened batch row. input [N, ...], weight [out, in], bias [out].
Var fc(const Var & input, const Var & weight, const Var & bias);

std::size_t conv_out_size(std::size_t in, std::size_t kernel, std::size_t stride,
                          std::size_t padding);

}  // namespace visionnet

#endif  // VISIONNET__AUTOGRAD_HPP_
