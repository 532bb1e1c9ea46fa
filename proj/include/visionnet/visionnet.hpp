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

#ifndef VISIONNET__VISIONNET_HPP_
#define VISIONNET__VISIONNET_HPP_

#include "visionnet/adam.hpp"
#include "visionnet/data.hpp"
#include "visionnet/interaction.hpp"
#include "visionnet/kinematics.hpp"
#include "visionnet/prediction.hpp"
#include "visionnet/serialize.hpp"

#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace visionnet
{

/// How samples are turned into network inputs.
struct PipelineConfig
{
  double grid_range = 10.0;    // half side of the target-centered window, meters
  double obstacle_width = 0.6;  // B-DIS width, meters
  double dt = 0.4;
  NoiseParams noise;
};

/// Network-ready tensors of one sample. Per-agent vectors are aligned with
/// Sample::observed, so index 0 is the target.
struct SampleInputs
{
  GridSpec grid;
  Point2 center;
  Tensor observed;                // [1, T_obs, H, W]
  std::vector<Tensor> features;   // [1, 5 * T_obs] each
  std::vector<Tensor> db;         // [1, T_obs, H, W] each
  std::vector<Tensor> dn;         // [1, T_obs, H, W] each
  Tensor gt;                      // [1, T, H, W]
  std::vector<Point2> future_rel;  // target-centered ground truth
  std::vector<Point2> future_world;
  std::vector<Point2> observed_world;
};

SampleInputs prepare_sample(const Sample & sample, const ModelConfig & model,
                            const PipelineConfig & pipeline);

/// Motion features of one observation window: (x - cx, y - cy, v, a, theta)
/// per step, zero where the agent is absent.
Tensor state_features(const AgentWindow & window, Point2 center);

struct ForwardResult
{
  std::vector<Var> driving_spaces;  // Dr per agent
  Var gdas;                         // D
  Var mask;                         // M_c
  Var masked_gdas;                  // M_c * D
  Var prediction;                   // predicted grids
};

struct LossTerms
{
  Var recon;
  Var inter;
  Var total;
};

class VisionNet
{
public:
  explicit VisionNet(ModelConfig config, PipelineConfig pipeline = {});

  ForwardResult forward(const SampleInputs & in) const;
  LossTerms losses(const ForwardResult & out, const SampleInputs & in,
                   const LossWeights & weights) const;

  ParamList parameters() const;
  const ModelConfig & config() const { return config_; }
  const PipelineConfig & pipeline() const { return pipeline_; }

  /// Parameters in architectural order, preceded by two metadata entries.
  std::vector<NamedTensor> state() const;
  void save(const std::filesystem::path & path) const;
  static VisionNet from_state(const std::vector<NamedTensor> & entries);
  static VisionNet load(const std::filesystem::path & path);

  InteractionModel interaction;
  PredictionModel prediction;

private:
  ModelConfig config_;
  PipelineConfig pipeline_;
};

struct TrainConfig
{
  std::size_t epochs = 30;
  AdamConfig adam;
  LossWeights weights;
  std::uint64_t seed = 0;
  bool shuffle = true;

  void validate() const;
};

struct EpochLog
{
  std::size_t epoch = 0;
  double recon = 0.0;
  double inter = 0.0;
  double total = 0.0;
};

/// Per-sample Adam steps; logs are means over each epoch.
std::vector<EpochLog> train(VisionNet & net, std::span<const Sample> samples,
                            const TrainConfig & config,
                            const std::function<void(const EpochLog &)> & on_epoch = {});

struct SamplePrediction
{
  std::vector<Point2> points;  // world coordinates
  OgmSequence ogm;
  OgmSequence masked_gdas;     // empty for the baseline variant
};

SamplePrediction predict_sample(const VisionNet & net, const SampleInputs & in);

/// Mean masked drivable-space value at the in-range ground-truth cells.
double energy_at_truth(const OgmSequence & masked_gdas, const SampleInputs & in);

OgmSequence to_ogm_sequence(const Tensor & t, const GridSpec & spec);

}  // namespace visionnet

#endif  // VISIONNET__VISIONNET_HPP_
