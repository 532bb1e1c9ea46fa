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

#include "visionnet/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace visionnet
{

void GridSpec::validate() const
{
  if (height == 0 || width == 0) {
    throw std::invalid_argument("GridSpec: height and width must be positive");
  }
  if (!(extent_rows > 0.0) || !(extent_cols > 0.0)) {
    throw std::invalid_argument("GridSpec: extents must be positive");
  }
}

GridSpec GridSpec::centered(Point2 center, double half_side, std::size_t height, std::size_t width)
{
  GridSpec spec{height, width, 2.0 * half_side, 2.0 * half_side,
                center.x - half_side, center.y - half_side};
  spec.validate();
  return spec;
}

CellCoord coords_to_cell(const GridSpec & spec, Point2 p)
{
  return {
    (static_cast<double>(spec.height) / spec.extent_rows) * (p.x - spec.origin_x),
    (static_cast<double>(spec.width) / spec.extent_cols) * (p.y - spec.origin_y)};
}

bool locate_cell(const GridSpec & spec, Point2 p, CellIndex & out)
{
  const CellCoord c = coords_to_cell(spec, p);
  if (!std::isfinite(c.h) || !std::isfinite(c.w)) {
    return false;
  }
  const double h = std::floor(c.h);
  const double w = std::floor(c.w);
  if (h < 0.0 || w < 0.0 || h >= static_cast<double>(spec.height) ||
      w >= static_cast<double>(spec.width)) {
    return false;
  }
  out = {static_cast<std::int64_t>(h), static_cast<std::int64_t>(w)};
  return true;
}

Point2 cell_to_coords(const GridSpec & spec, std::int64_t h, std::int64_t w)
{
  if (h < 0 || w < 0 || h >= static_cast<std::int64_t>(spec.height) ||
      w >= static_cast<std::int64_t>(spec.width)) {
    throw std::out_of_range(
      "cell (" + std::to_string(h) + ", " + std::to_string(w) + ") outside " +
      std::to_string(spec.height) + "x" + std::to_string(spec.width) + " grid");
  }
  return {
    (spec.extent_rows / static_cast<double>(spec.height)) * (static_cast<double>(h) + 0.5) +
      spec.origin_x,
    (spec.extent_cols / static_cast<double>(spec.width)) * (static_cast<double>(w) + 0.5) +
      spec.origin_y};
}

OgmSequence rasterize_trajectory(
  const GridSpec & spec, const Trajectory & traj, std::size_t t_begin, std::size_t t_end)
{
  spec.validate();
  if (t_end <= t_begin) {
    throw std::invalid_argument("rasterize_trajectory: empty time range");
  }
  if (t_end > traj.states.size()) {
    throw std::out_of_range(
      "rasterize_trajectory: range end " + std::to_string(t_end) + " exceeds trajectory length " +
      std::to_string(traj.states.size()));
  }
  OgmSequence seq(spec, t_end - t_begin);
  for (std::size_t t = t_begin; t < t_end; ++t) {
    const auto & s = traj.states[t];
    CellIndex cell;
    if (locate_cell(spec, {s.x, s.y}, cell)) {
      seq.frame(t - t_begin)[static_cast<std::size_t>(cell.h) * spec.width +
                             static_cast<std::size_t>(cell.w)] = 1.0;
    } else {
      seq.out_of_range[t - t_begin] = true;
    }
  }
  return seq;
}

namespace
{

// Lowest index holding the largest value. The max runs in independent lanes
// so the compiler can vectorize it.
std::size_t first_argmax(std::span<const double> v)
{
  constexpr std::size_t kLanes = 8;
  std::array<double, kLanes> lane;
  lane.fill(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + kLanes <= v.size(); i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      lane[k] = v[i + k] > lane[k] ? v[i + k] : lane[k];
    }
  }
  double top = *std::max_element(lane.begin(), lane.end());
  for (; i < v.size(); ++i) {
    top = v[i] > top ? v[i] : top;
  }
  const auto it = std::find(v.begin(), v.end(), top);
  return it == v.end() ? 0 : static_cast<std::size_t>(it - v.begin());
}

}  // namespace

std::vector<Point2> extract_trajectory(const OgmSequence & ogms)
{
  std::vector<Point2> points;
  points.reserve(ogms.frames);
  for (std::size_t t = 0; t < ogms.frames; ++t) {
    const auto frame = ogms.frame(t);
    const std::size_t best = first_argmax(frame);
    if (!(frame[best] > 0.0)) {
      throw std::invalid_argument(
        "extract_trajectory: frame " + std::to_string(t) + " has no occupied cell");
    }
    points.push_back(cell_to_coords(
      ogms.spec, static_cast<std::int64_t>(best / ogms.spec.width),
      static_cast<std::int64_t>(best % ogms.spec.width)));
  }
  return points;
}

}  // namespace visionnet
