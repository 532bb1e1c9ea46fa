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

#include "visionnet/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace visionnet
{

void NoiseParams::validate() const
{
  if (process_accel < 0.0 || process_orient < 0.0 || meas_accel < 0.0 || meas_speed < 0.0 ||
      meas_orient < 0.0) {
    throw std::invalid_argument("NoiseParams: variances must be non-negative");
  }
}

double wrap_angle(double theta)
{
  theta = std::remainder(theta, 2.0 * std::numbers::pi);
  if (theta <= -std::numbers::pi) {
    theta += 2.0 * std::numbers::pi;
  }
  return theta;
}

Trajectory derive_states(
  std::span<const Point2> positions, double dt, std::int64_t agent_id, std::int64_t t0)
{
  if (positions.size() < 3) {
    throw std::invalid_argument(
      "derive_states: need at least 3 positions, got " + std::to_string(positions.size()));
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("derive_states: dt must be positive");
  }
  const std::size_t n = positions.size();
  Trajectory traj;
  traj.agent_id = agent_id;
  traj.dt = dt;
  traj.t0 = t0;
  traj.states.resize(n);

  // Heading of a zero displacement carries the previous heading forward.
  bool have_heading = false;
  std::size_t first_heading = 0;
  for (std::size_t t = 0; t < n; ++t) {
    auto & s = traj.states[t];
    s.x = positions[t].x;
    s.y = positions[t].y;
    if (t == 0) {
      continue;
    }
    const double dx = positions[t].x - positions[t - 1].x;
    const double dy = positions[t].y - positions[t - 1].y;
    s.v = std::hypot(dx, dy) / dt;
    if (dx != 0.0 || dy != 0.0) {
      s.theta = wrap_angle(std::atan2(dy, dx));
      if (!have_heading) {
        have_heading = true;
        first_heading = t;
      }
    } else {
      s.theta = t > 1 ? traj.states[t - 1].theta : 0.0;
    }
    if (t >= 2) {
      const double ax = positions[t].x + positions[t - 2].x - 2.0 * positions[t - 1].x;
      const double ay = positions[t].y + positions[t - 2].y - 2.0 * positions[t - 1].y;
      s.a = (ax * std::cos(s.theta) + ay * std::sin(s.theta)) / (dt * dt);
    }
  }
  if (have_heading) {
    // Steps before the first movement take the first defined heading.
    for (std::size_t t = 1; t < first_heading; ++t) {
      traj.states[t].theta = traj.states[first_heading].theta;
    }
  }
  traj.states[0].v = traj.states[1].v;
  traj.states[0].theta = traj.states[1].theta;
  traj.states[0].a = traj.states[2].a;
  traj.states[1].a = traj.states[2].a;
  return traj;
}

DistanceDistribution distance_distribution(
  const MotionState & state, const NoiseParams & noise, double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("distance_distribution: dt must be positive");
  }
  noise.validate();
  const double dt2 = dt * dt;
  const double dt4 = dt2 * dt2;
  return {
    state.v * dt + 0.5 * state.a * dt2,
    2.25 * dt4 * noise.process_accel + dt2 * noise.meas_speed + 0.25 * dt4 * noise.meas_accel};
}

SampleMoments mc_distance_oracle(
  const MotionState & state, const NoiseParams & noise, double dt, std::size_t n_samples,
  std::uint64_t seed)
{
  if (n_samples == 0) {
    throw std::invalid_argument("mc_distance_oracle: n_samples must be >= 1");
  }
  noise.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double sd_omega = std::sqrt(noise.process_accel);
  const double sd_xi = std::sqrt(noise.meas_accel);
  const double sd_phi = std::sqrt(noise.meas_speed);
  const double dt2 = dt * dt;

  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double omega = sd_omega * unit(rng);
    const double xi = sd_xi * unit(rng);
    const double phi = sd_phi * unit(rng);
    const double v_hat = state.v + omega * dt + phi;
    const double a_hat = state.a + omega + xi;
    const double s = v_hat * dt + 0.5 * a_hat * dt2;
    const double delta = s - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (s - mean);
  }
  return {mean, n_samples > 1 ? m2 / static_cast<double>(n_samples - 1) : 0.0};
}

}  // namespace visionnet
