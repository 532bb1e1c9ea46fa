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

#ifndef VISIONNET__DATA_HPP_
#define VISIONNET__DATA_HPP_

#include "visionnet/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace visionnet
{

struct Bounds
{
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

struct Scene
{
  std::string name;
  std::vector<Trajectory> agents;
  double dt = 0.4;
  Bounds bounds;
  double frame_origin = 0.0;  // annotation frame number of step 0
  double frame_stride = 1.0;  // annotation frames per step
};

struct ParseReport
{
  std::size_t skipped_short_agents = 0;
  std::size_t lines = 0;
};

/// Whitespace-separated `frame agent_id x y` records. Blank lines and lines
/// starting with '#' are ignored. Throws std::runtime_error naming the line on
/// malformed fields, inconsistent frame strides or gaps in an agent's track.
Scene parse_annotations(std::istream & is, double dt = 0.4, ParseReport * report = nullptr);
Scene load_annotations(const std::filesystem::path & path, double dt = 0.4,
                       ParseReport * report = nullptr);
void write_annotations(std::ostream & os, const Scene & scene);

Bounds compute_bounds(const std::vector<Trajectory> & agents);

/// Observation window of one agent; absent steps hold zero states.
struct AgentWindow
{
  std::int64_t agent_id = 0;
  std::vector<MotionState> states;
  std::vector<bool> present;
};

struct Sample
{
  std::size_t sample_id = 0;
  std::int64_t target_id = 0;
  std::int64_t t_start = 0;          // step index of the first observed frame
  std::vector<AgentWindow> observed;  // observed[0] is the target
  std::vector<MotionState> future;    // target states after the window
  GridSpec grid;                      // centered on the target's last observed position

  Point2 center() const;
};

struct WindowConfig
{
  std::size_t t_obs = 8;
  std::size_t t_pred = 20;
  std::size_t stride = 1;
  double grid_range = 10.0;  // half side of the grid window, meters
  std::size_t height = 128;
  std::size_t width = 128;
};

struct WindowReport
{
  std::size_t skipped_agents = 0;
};

std::vector<Sample> window_samples(
  const Scene & scene, const WindowConfig & config, WindowReport * report = nullptr);

enum class Scenario { crossing, overtake, parallel };

Scenario parse_scenario(std::string_view name);
std::string to_string(Scenario s);

struct SyntheticConfig
{
  std::size_t frames = 20;
  double dt = 0.4;
  std::size_t agents = 2;
  double speed_min = 1.0;
  double speed_max = 1.6;
  double avoidance_gain = 3.0;    // m/s^2 at contact distance
  double avoidance_range = 0.4;   // decay length, meters
  double contact_distance = 0.6;  // meters
  double relaxation_time = 0.5;   // seconds to recover the preferred velocity
  double heading_spread = 3.141592653589793;  // global heading ~ U(-spread, spread)
  double position_noise = 0.0;    // std-dev of recorded positions, meters
  std::size_t substeps = 8;
};

/// Interacting scenes with deterministic output per seed.
std::vector<Scene> gen_synthetic(
  Scenario scenario, std::size_t n, std::uint64_t seed, const SyntheticConfig & config = {});

/// Smallest distance between two agents at a common step; +inf with fewer than two agents.
double min_pairwise_distance(const Scene & scene);

}  // namespace visionnet

#endif  // VISIONNET__DATA_HPP_
