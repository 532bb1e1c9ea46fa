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

#ifndef VISIONNET__LAYERS_HPP_
#define VISIONNET__LAYERS_HPP_

#include "visionnet/autograd.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace visionnet
{

struct NamedParam
{
  std::string name;
  Var var;
};
using ParamList = std::vector<NamedParam>;

enum class LayerKind { conv, deconv, fc, residual_block, depthwise_conv };

/// (K, S, C) layer configuration.
struct LayerSpec
{
  LayerKind kind = LayerKind::conv;
  std::size_t kernel = 3;
  std::size_t stride = 1;
  std::size_t channels = 1;
  std::size_t padding = 1;

  void validate() const;
};

/// Seeded weight initializer.
class Initializer
{
public:
  explicit Initializer(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [-bound, bound].
  Tensor uniform(Shape shape, double bound);

private:
  std::mt19937_64 rng_;
};

class Conv2d
{
public:
  Conv2d() = default;
  Conv2d(std::size_t in_channels, const LayerSpec & spec, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;

  Var weight;
  Var bias;
  LayerSpec spec;
};

class Deconv2d
{
public:
  Deconv2d() = default;
  Deconv2d(std::size_t in_channels, const LayerSpec & spec, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;

  Var weight;
  Var bias;
  LayerSpec spec;
};

class DepthwiseConv2d
{
public:
  DepthwiseConv2d() = default;
  DepthwiseConv2d(std::size_t channels, const LayerSpec & spec, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;

  Var weight;
  Var bias;
  LayerSpec spec;
};

class Linear
{
public:
  Linear() = default;
  Linear(std::size_t in_features, std::size_t out_features, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;

  Var weight;
  Var bias;
};

/// Two 3x3 convolutions with ReLU and an identity skip, or a strided 1x1
/// projection when the channel count or stride changes.
class ResidualBlock
{
public:
  ResidualBlock() = default;
  ResidualBlock(std::size_t in_channels, std::size_t out_channels, std::size_t stride,
                Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;

private:
  Conv2d conv1_;
  Conv2d conv2_;
  std::optional<Conv2d> projection_;
};

/// Stride-2 3x3 stem followed by two stride-2 residual blocks (8x downsampling).
class Encoder
{
public:
  Encoder() = default;
  Encoder(std::size_t in_channels, const std::vector<std::size_t> & widths, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;
  std::size_t out_channels() const { return out_channels_; }

private:
  Conv2d stem_;
  ResidualBlock block1_;
  ResidualBlock block2_;
  std::size_t out_channels_ = 0;
};

/// Three (4, 2, c) deconvolutions with ReLU, then a (3, 1, out) convolution.
/// Returns logits; callers apply the output activation.
class Decoder
{
public:
  Decoder() = default;
  Decoder(std::size_t in_channels, const std::vector<std::size_t> & widths,
          std::size_t out_channels, Initializer & init);

  Var operator()(const Var & x) const;
  void collect(const std::string & prefix, ParamList & out) const;
  /// Sets every bias of the output conv.
  void fill_head_bias(double value);

private:
  std::vector<Deconv2d> ups_;
  Conv2d head_;
};

}  // namespace visionnet

#endif  // VISIONNET__LAYERS_HPP_
