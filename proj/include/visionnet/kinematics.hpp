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

#ifndef VISIONNET__KINEMATICS_HPP_
#define VISIONNET__KINEMATICS_HPP_

#include "visionnet/grid.hpp"

#include <cstdint>
#include <span>

namespace visionnet
{

/// Per-step Gaussian noise variances of the corrected kinematic model.
struct NoiseParams
{
  double process_accel = 0.25;   // Q
  double process_orient = 0.25;  // R, not propagated into the distance law
  double meas_accel = 0.25;      // S
  double meas_speed = 0.25;      // U
  double meas_orient = 0.25;     // V, not propagated into the distance law

  void validate() const;
};

/// Traveled distance over one step, s ~ N(mean, variance).
struct DistanceDistribution
{
  double mean = 0.0;
  double variance = 0.0;
};

/// Difference-method motion states (speed, signed acceleration along heading,
/// heading) from raw positions. The first two steps are back-filled so the
/// result has one state per position. Requires >= 3 positions and dt > 0.
Trajectory derive_states(std::span<const Point2> positions, double dt, std::int64_t agent_id = 0,
                         std::int64_t t0 = 0);

DistanceDistribution distance_distribution(
  const MotionState & state, const NoiseParams & noise, double dt);

struct SampleMoments
{
  double mean = 0.0;
  double variance = 0.0;
};

/// Monte-Carlo draw of the noisy traveled distance; reference for distance_distribution.
SampleMoments mc_distance_oracle(
  const MotionState & state, const NoiseParams & noise, double dt, std::size_t n_samples,
  std::uint64_t seed);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

}  // namespace visionnet

#endif  // VISIONNET__KINEMATICS_HPP_
