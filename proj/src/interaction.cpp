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

#include "visionnet/interaction.hpp"

#include <stdexcept>

namespace visionnet
{

DisHead::DisHead(const ModelConfig & config, Initializer & init)
: fc(config.state_features(), config.t_obs * config.height * config.width / 8, init),
  d1(2 * config.t_obs, {LayerKind::deconv, 4, 2, config.t_obs / 2, 1}, init),
  d2(config.t_obs / 2, {LayerKind::deconv, 4, 2, config.t_obs, 1}, init),
  grid_shape_{1, 2 * config.t_obs, config.height / 4, config.width / 4}
{
}

Var DisHead::operator()(const Var & features) const
{
  const Var h = reshape(relu(fc(features)), grid_shape_);
  return d2(relu(d1(h)));
}

void DisHead::collect(const std::string & prefix, ParamList & out) const
{
  fc.collect(prefix + ".fc", out);
  d1.collect(prefix + ".d1", out);
  d2.collect(prefix + ".d2", out);
}

InteractionModel::InteractionModel(const ModelConfig & config, Initializer & init)
: config_(config)
{
  config.validate();
  k_basic = DisHead(config, init);
  if (config.uses_noise_spaces()) {
    k_noise = DisHead(config, init);
    c_noise = DisHead(config, init);
  }
  orient = DepthwiseConv2d(config.t_obs, {LayerKind::depthwise_conv, 3, 1, 1, 1}, init);
  per_obstacle = Conv2d(1, {LayerKind::conv, 3, 1, 1, 1}, init);
  encoder = Encoder(config.t_obs, config.encoder_widths, init);
  decoder = Decoder(encoder.out_channels(), config.decoder_widths, config.horizon(), init);
}

Var InteractionModel::dis_head(const Var & features, const Var & db, const Var & dn) const
{
  const Shape grid{1, config_.t_obs, config_.height, config_.width};
  if (features.size() != config_.state_features()) {
    throw std::invalid_argument(
      "dis_head: expected " + std::to_string(config_.state_features()) + " state features, got " +
      shape_str(features.shape()));
  }
  if (db.shape() != grid) {
    throw std::invalid_argument(
      "dis_head: DB shape " + shape_str(db.shape()) + " != " + shape_str(grid));
  }
  const Var x = reshape(features, {1, config_.state_features()});
  Var combined = mul(k_basic(x), db);
  if (config_.uses_noise_spaces()) {
    if (dn.shape() != grid) {
      throw std::invalid_argument(
        "dis_head: DN shape " + shape_str(dn.shape()) + " != " + shape_str(grid));
    }
    const Var exponent = softplus(c_noise(x));
    combined = add(combined, mul(k_noise(x), pow(dn, exponent)));
  }
  return orient(combined);
}

Var InteractionModel::fuse_and_predict(std::span<const Var> all_dr) const
{
  if (all_dr.empty()) {
    throw std::invalid_argument("fuse_and_predict: empty obstacle set");
  }
  const Shape grid{1, config_.t_obs, config_.height, config_.width};
  const Shape frames{config_.t_obs, 1, config_.height, config_.width};
  std::vector<Var> responses;
  responses.reserve(all_dr.size());
  for (const auto & dr : all_dr) {
    if (dr.shape() != grid) {
      throw std::invalid_argument(
        "fuse_and_predict: driving spaces " + shape_str(dr.shape()) + " != " + shape_str(grid));
    }
    responses.push_back(reshape(per_obstacle(reshape(dr, frames)), grid));
  }
  const Var fused = maxpool_set(responses);
  return sigmoid(decoder(encoder(fused)));
}

void InteractionModel::collect(ParamList & out) const
{
  k_basic.collect("interaction.k_basic", out);
  if (config_.uses_noise_spaces()) {
    k_noise.collect("interaction.k_noise", out);
    c_noise.collect("interaction.c_noise", out);
  }
  orient.collect("interaction.h", out);
  per_obstacle.collect("interaction.c_p", out);
  encoder.collect("interaction.encode_k", out);
  decoder.collect("interaction.decode_k", out);
}

}  // namespace visionnet
