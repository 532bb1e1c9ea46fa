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

#ifndef VISIONNET__RUN_CONFIG_HPP_
#define VISIONNET__RUN_CONFIG_HPP_

#include "visionnet/visionnet.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace visionnet
{

/// Invalid or inconsistent configuration values.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  // grid
  double grid_range = 10.0;
  std::size_t height = 128;
  std::size_t width = 128;
  // horizon
  std::size_t t_obs = 8;
  std::size_t t_pred = 20;
  std::size_t window_stride = 1;
  double dt = 0.4;
  // loss and optimizer
  double alpha = 1.0;
  double beta = 0.1;
  double lr = 1e-4;
  std::size_t epochs = 30;
  std::uint64_t seed = 0;
  // model
  double obstacle_width = 0.6;
  std::string variant = "full";
  // data
  std::string train_data;
  std::string test_data;

  /// Applies one `key = value` pair. Throws ConfigError on unknown keys or bad values.
  void set(const std::string & key, const std::string & value);

  /// Throws ConfigError unless t_obs < t_pred, lr > 0 and epochs >= 1.
  void validate() const;

  ModelConfig model_config() const;
  PipelineConfig pipeline_config() const;
  WindowConfig window_config() const;
  TrainConfig train_config() const;
};

/// Flat `key = value` text; '#' starts a comment.
RunConfig parse_run_config(std::istream & is, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path & path, RunConfig base = {});

}  // namespace visionnet

#endif  // VISIONNET__RUN_CONFIG_HPP_
