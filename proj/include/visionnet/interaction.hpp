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

#ifndef VISIONNET__INTERACTION_HPP_
#define VISIONNET__INTERACTION_HPP_

#include "visionnet/layers.hpp"
#include "visionnet/model_config.hpp"

#include <span>

namespace visionnet
{

/// Motion-conditioned weight map: FC to T_obs*H*W/8 values reshaped to
/// (2*T_obs, H/4, W/4), then D1(4, 2, T_obs/2) and D2(4, 2, T_obs).
class DisHead
{
public:
  DisHead() = default;
  DisHead(const ModelConfig & config, Initializer & init);

  /// features [1, 5*T_obs] -> [1, T_obs, H, W]
  Var operator()(const Var & features) const;
  void collect(const std::string & prefix, ParamList & out) const;

  Linear fc;
  Deconv2d d1;
  Deconv2d d2;

private:
  Shape grid_shape_;
};

/// Per-obstacle driving-space heads, max fusion over obstacles and the
/// encoder/decoder that forecasts global drivable spaces.
class InteractionModel
{
public:
  InteractionModel() = default;
  InteractionModel(const ModelConfig & config, Initializer & init);

  /// h(K_b(X) * DB + K'_n(X) * DN^softplus(C_n(X))). features [1, 5*T_obs],
  /// db and dn [1, T_obs, H, W]. Without noise spaces the second term is dropped.
  Var dis_head(const Var & features, const Var & db, const Var & dn) const;

  /// Shared C_p per frame, elementwise max over obstacles, encode, decode,
  /// sigmoid. Returns [1, T_pred - T_obs, H, W].
  Var fuse_and_predict(std::span<const Var> all_dr) const;

  void collect(ParamList & out) const;

  DisHead k_basic;
  DisHead k_noise;
  DisHead c_noise;
  DepthwiseConv2d orient;  // h
  Conv2d per_obstacle;     // C_p
  Encoder encoder;
  Decoder decoder;

private:
  ModelConfig config_;
};

}  // namespace visionnet

#endif  // VISIONNET__INTERACTION_HPP_
