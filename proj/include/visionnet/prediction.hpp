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

#ifndef VISIONNET__PREDICTION_HPP_
#define VISIONNET__PREDICTION_HPP_

#include "visionnet/grid.hpp"
#include "visionnet/layers.hpp"
#include "visionnet/model_config.hpp"

#include <span>

namespace visionnet
{

struct LossWeights
{
  double alpha = 1.0;  // reconstruction
  double beta = 0.1;   // interactive

  void validate() const;
};

/// Mask head, the observed-grid and drivable-space encoders and the synthesis decoder.
class PredictionModel
{
public:
  PredictionModel() = default;
  PredictionModel(const ModelConfig & config, Initializer & init);

  /// sigmoid(f_c(1 - DB) + f_c(1 - DN)); inputs [1, T_obs, H, W], output [1, T, H, W].
  /// An empty `one_minus_dn` uses the DB term alone.
  Var ablation_mask(const Var & one_minus_db, const Var & one_minus_dn) const;

  /// sigmoid(Decode_p(concat(Encode_p(O), Encode_c(M_c * D)))). For the baseline
  /// variant `gdas` and `mask` are ignored and only Encode_p feeds the decoder.
  Var predict(const Var & observed, const Var & gdas, const Var & mask) const;

  void collect(ParamList & out) const;

  Conv2d mask_c1;
  Conv2d mask_c2;
  Encoder encode_p;
  Encoder encode_c;
  Decoder decode_p;

private:
  Var mask_logits(const Var & x) const;

  ModelConfig config_;
};

/// Counts reconstruction terms dropped by the range indicator.
struct LossDiagnostics
{
  std::size_t invalid_terms = 0;
};

/// sum_{i,t} 1[|p_i^t| <= range] (pred - gt)^2 / (N H W T). pred and gt are
/// [N, T, H, W]; `positions` holds N*T target-centered points, row-major.
Var recon_loss(const Var & pred, const Tensor & gt, std::span<const Point2> positions,
               double range, LossDiagnostics * diag = nullptr);

/// sum |gt * masked_gdas| / (N H W T), both [N, T, H, W].
Var interactive_loss(const Tensor & gt, const Var & masked_gdas);

Var total_loss(const Var & recon, const Var & inter, const LossWeights & weights);

}  // namespace visionnet

#endif  // VISIONNET__PREDICTION_HPP_
