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


#ifndef VISIONNET__EVALUATION_HPP_
#define VISIONNET__EVALUATION_HPP_

#include "visionnet/visionnet.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace visionnet
{

/// Annotation files under `path` (a file, or every *.txt in a directory in name order).
std::vector<Scene> load_scene_path(const std::filesystem::path & path, double dt = 0.4);

/// Windowed samples of all scenes with globally sequential sample ids.
std::vector<Sample> build_samples(std::span<const Scene> scenes, const WindowConfig & config);

struct Scores
{
  double mse = 0.0;
  double ade = 0.0;
  double fde = 0.0;
  std::size_t samples = 0;
};

struct SetEvaluation
{
  std::string name;
  std::vector<std::string> methods;
  std::vector<Scores> scores;  // parallel to `methods`
};

/// Predicted future points per sample id.
using ExternalPredictions = std::map<std::size_t, std::vector<Point2>>;

/// Scores the Linear and constant-velocity baselines, the network when `net`
/// is given and `external` trajectories when given. Point predictions enter
/// the grid MSE as one-hot grids.
SetEvaluation evaluate_set(const std::string & name, std::span<const Sample> samples,
                           const ModelConfig & model, const PipelineConfig & pipeline,
                           const VisionNet * net, const ExternalPredictions * external = nullptr);

/// `metric,set,<method>...` rows per set followed by per-method averages
/// ("Average MSE", "Average ADE", "Average FDE").
void write_metrics_table(std::ostream & os, const std::vector<SetEvaluation> & sets);

/// Reads `sample_id,agent_id,t,x,y` rows back into per-sample trajectories.
ExternalPredictions read_trajectory_csv(std::istream & is);

}  // namespace visionnet

#endif  // VISIONNET__EVALUATION_HPP_
