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

#include "visionnet/prediction.hpp"

#include <cmath>
#include <stdexcept>

namespace visionnet
{

void LossWeights::validate() const
{
  if (alpha < 0.0 || beta < 0.0) {
    throw std::invalid_argument("LossWeights: alpha and beta must be non-negative");
  }
}

PredictionModel::PredictionModel(const ModelConfig & config, Initializer & init)
: config_(config)
{
  config.validate();
  if (config.uses_interaction()) {
    mask_c1 = Conv2d(config.t_obs, {LayerKind::conv, 3, 1, config.t_pred, 1}, init);
    mask_c2 = Conv2d(config.t_pred, {LayerKind::conv, 3, 1, config.horizon(), 1}, init);
  }
  encode_p = Encoder(config.t_obs, config.encoder_widths, init);
  std::size_t latent = encode_p.out_channels();
  if (config.uses_interaction()) {
    encode_c = Encoder(config.horizon(), config.encoder_widths, init);
    latent += encode_c.out_channels();
  }
  decode_p = Decoder(latent, config.decoder_widths, config.horizon(), init);
  // start at the prior of one occupied cell per frame; a 0.5 start
  // overshoots into saturated logits that never recover
  decode_p.fill_head_bias(-std::log(static_cast<double>(config.height * config.width) - 1.0));
}

Var PredictionModel::mask_logits(const Var & x) const { return mask_c2(relu(mask_c1(x))); }

Var PredictionModel::ablation_mask(const Var & one_minus_db, const Var & one_minus_dn) const
{
  if (!config_.uses_interaction()) {
    throw std::logic_error("ablation_mask: baseline variant has no mask head");
  }
  const Shape grid{1, config_.t_obs, config_.height, config_.width};
  if (one_minus_db.shape() != grid) {
    throw std::invalid_argument(
      "ablation_mask: input " + shape_str(one_minus_db.shape()) + " != " + shape_str(grid));
  }
  Var logits = mask_logits(one_minus_db);
  if (one_minus_dn) {
    if (one_minus_dn.shape() != grid) {
      throw std::invalid_argument(
        "ablation_mask: input " + shape_str(one_minus_dn.shape()) + " != " + shape_str(grid));
    }
    logits = add(logits, mask_logits(one_minus_dn));
  }
  return sigmoid(logits);
}

Var PredictionModel::predict(const Var & observed, const Var & gdas, const Var & mask) const
{
  const Shape obs{1, config_.t_obs, config_.height, config_.width};
  const Shape fut{1, config_.horizon(), config_.height, config_.width};
  if (observed.shape() != obs) {
    throw std::invalid_argument(
      "predict: observed grids " + shape_str(observed.shape()) + " != " + shape_str(obs));
  }
  Var z = encode_p(observed);
  if (config_.uses_interaction()) {
    if (gdas.shape() != fut || mask.shape() != fut) {
      throw std::invalid_argument(
        "predict: drivable spaces " + shape_str(gdas.shape()) + " / mask " +
        shape_str(mask.shape()) + " != " + shape_str(fut));
    }
    z = concat_channels(z, encode_c(mul(mask, gdas)));
  }
  return sigmoid(decode_p(z));
}

void PredictionModel::collect(ParamList & out) const
{
  if (config_.uses_interaction()) {
    mask_c1.collect("prediction.f_c.c1", out);
    mask_c2.collect("prediction.f_c.c2", out);
  }
  encode_p.collect("prediction.encode_p", out);
  if (config_.uses_interaction()) {
    encode_c.collect("prediction.encode_c", out);
  }
  decode_p.collect("prediction.decode_p", out);
}

Var recon_loss(const Var & pred, const Tensor & gt, std::span<const Point2> positions,
               double range, LossDiagnostics * diag)
{
  const Shape & s = pred.shape();
  if (s != gt.shape() || s.size() != 4) {
    throw std::invalid_argument(
      "recon_loss: prediction " + shape_str(s) + " vs ground truth " + shape_str(gt.shape()));
  }
  const std::size_t terms = s[0] * s[1];
  if (positions.size() != terms) {
    throw std::invalid_argument(
      "recon_loss: expected " + std::to_string(terms) + " positions, got " +
      std::to_string(positions.size()));
  }
  const std::size_t plane = s[2] * s[3];
  Tensor valid(s, 0.0);
  for (std::size_t k = 0; k < terms; ++k) {
    if (std::hypot(positions[k].x, positions[k].y) <= range) {
      std::fill_n(valid.data() + k * plane, plane, 1.0);
    } else if (diag) {
      ++diag->invalid_terms;
    }
  }
  const Var sq = square(sub(pred, constant(gt)));
  return scale(sum(mul(sq, constant(std::move(valid)))), 1.0 / static_cast<double>(pred.size()));
}

Var interactive_loss(const Tensor & gt, const Var & masked_gdas)
{
  if (gt.shape() != masked_gdas.shape()) {
    throw std::invalid_argument(
      "interactive_loss: ground truth " + shape_str(gt.shape()) + " vs drivable spaces " +
      shape_str(masked_gdas.shape()));
  }
  return scale(sum(abs(mul(constant(gt), masked_gdas))),
               1.0 / static_cast<double>(masked_gdas.size()));
}

Var total_loss(const Var & recon, const Var & inter, const LossWeights & weights)
{
  weights.validate();
  return add(scale(recon, weights.alpha), scale(inter, weights.beta));
}

}  // namespace visionnet
