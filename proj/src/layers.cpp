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

#include "visionnet/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace visionnet
{

void LayerSpec::validate() const
{
  if (kernel < 1 || stride < 1 || channels < 1) {
    throw std::invalid_argument("LayerSpec: K, S and C must all be >= 1");
  }
}

Tensor Initializer::uniform(Shape shape, double bound)
{
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto & v : t.values()) {
    v = dist(rng_);
  }
  return t;
}

namespace
{

void push(ParamList & out, const std::string & prefix, const char * suffix, const Var & v)
{
  out.push_back({prefix + suffix, v});
}

}  // namespace

Conv2d::Conv2d(std::size_t in_channels, const LayerSpec & s, Initializer & init) : spec(s)
{
  spec.validate();
  const double fan_in = static_cast<double>(in_channels * spec.kernel * spec.kernel);
  weight = leaf(init.uniform({spec.channels, in_channels, spec.kernel, spec.kernel},
                             std::sqrt(6.0 / fan_in)));
  bias = leaf(Tensor({spec.channels}, 0.0));
}

Var Conv2d::operator()(const Var & x) const
{
  return conv2d(x, weight, bias, spec.stride, spec.padding);
}

void Conv2d::collect(const std::string & prefix, ParamList & out) const
{
  push(out, prefix, ".weight", weight);
  push(out, prefix, ".bias", bias);
}

Deconv2d::Deconv2d(std::size_t in_channels, const LayerSpec & s, Initializer & init) : spec(s)
{
  spec.validate();
  // Each output cell receives about in * K^2 / S^2 contributions.
  const double fan_in = static_cast<double>(in_channels * spec.kernel * spec.kernel) /
                        static_cast<double>(spec.stride * spec.stride);
  weight = leaf(init.uniform({in_channels, spec.channels, spec.kernel, spec.kernel},
                             std::sqrt(6.0 / fan_in)));
  bias = leaf(Tensor({spec.channels}, 0.0));
}

Var Deconv2d::operator()(const Var & x) const
{
  return deconv2d(x, weight, bias, spec.stride, spec.padding);
}

void Deconv2d::collect(const std::string & prefix, ParamList & out) const
{
  push(out, prefix, ".weight", weight);
  push(out, prefix, ".bias", bias);
}

DepthwiseConv2d::DepthwiseConv2d(std::size_t channels, const LayerSpec & s, Initializer & init)
: spec(s)
{
  spec.validate();
  const double fan_in = static_cast<double>(spec.kernel * spec.kernel);
  weight = leaf(init.uniform({channels, 1, spec.kernel, spec.kernel}, std::sqrt(3.0 / fan_in)));
  bias = leaf(Tensor({channels}, 0.0));
}

Var DepthwiseConv2d::operator()(const Var & x) const
{
  return depthwise_conv2d(x, weight, bias, spec.stride, spec.padding);
}

void DepthwiseConv2d::collect(const std::string & prefix, ParamList & out) const
{
  push(out, prefix, ".weight", weight);
  push(out, prefix, ".bias", bias);
}

Linear::Linear(std::size_t in_features, std::size_t out_features, Initializer & init)
{
  weight = leaf(init.uniform({out_features, in_features},
                             std::sqrt(6.0 / static_cast<double>(in_features))));
  bias = leaf(Tensor({out_features}, 0.0));
}

Var Linear::operator()(const Var & x) const { return fc(x, weight, bias); }

void Linear::collect(const std::string & prefix, ParamList & out) const
{
  push(out, prefix, ".weight", weight);
  push(out, prefix, ".bias", bias);
}

ResidualBlock::ResidualBlock(
  std::size_t in_channels, std::size_t out_channels, std::size_t stride, Initializer & init)
: conv1_(in_channels, {LayerKind::conv, 3, stride, out_channels, 1}, init),
  conv2_(out_channels, {LayerKind::conv, 3, 1, out_channels, 1}, init)
{
  if (in_channels != out_channels || stride != 1) {
    projection_.emplace(in_channels, LayerSpec{LayerKind::conv, 1, stride, out_channels, 0}, init);
  }
}

Var ResidualBlock::operator()(const Var & x) const
{
  const Var y = conv2_(relu(conv1_(x)));
  const Var skip = projection_ ? (*projection_)(x) : x;
  return relu(add(y, skip));
}

void ResidualBlock::collect(const std::string & prefix, ParamList & out) const
{
  conv1_.collect(prefix + ".conv1", out);
  conv2_.collect(prefix + ".conv2", out);
  if (projection_) {
    projection_->collect(prefix + ".proj", out);
  }
}

Encoder::Encoder(
  std::size_t in_channels, const std::vector<std::size_t> & widths, Initializer & init)
{
  if (widths.size() != 3) {
    throw std::invalid_argument("Encoder: expected 3 channel widths");
  }
  stem_ = Conv2d(in_channels, {LayerKind::conv, 3, 2, widths[0], 1}, init);
  block1_ = ResidualBlock(widths[0], widths[1], 2, init);
  block2_ = ResidualBlock(widths[1], widths[2], 2, init);
  out_channels_ = widths[2];
}

Var Encoder::operator()(const Var & x) const { return block2_(block1_(relu(stem_(x)))); }

void Encoder::collect(const std::string & prefix, ParamList & out) const
{
  stem_.collect(prefix + ".stem", out);
  block1_.collect(prefix + ".block1", out);
  block2_.collect(prefix + ".block2", out);
}

Decoder::Decoder(std::size_t in_channels, const std::vector<std::size_t> & widths,
                 std::size_t out_channels, Initializer & init)
{
  std::size_t c = in_channels;
  for (std::size_t w : widths) {
    ups_.emplace_back(c, LayerSpec{LayerKind::deconv, 4, 2, w, 1}, init);
    c = w;
  }
  head_ = Conv2d(c, {LayerKind::conv, 3, 1, out_channels, 1}, init);
}

Var Decoder::operator()(const Var & x) const
{
  Var h = x;
  for (const auto & up : ups_) {
    h = relu(up(h));
  }
  return head_(h);
}

void Decoder::collect(const std::string & prefix, ParamList & out) const
{
  for (std::size_t i = 0; i < ups_.size(); ++i) {
    ups_[i].collect(prefix + ".d" + std::to_string(i + 1), out);
  }
  head_.collect(prefix + ".c" + std::to_string(ups_.size() + 1), out);
}

void Decoder::fill_head_bias(double value) { head_.bias.mutable_value().fill(value); }

}  // namespace visionnet
