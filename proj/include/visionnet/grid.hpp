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

#ifndef VISIONNET__GRID_HPP_
#define VISIONNET__GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace visionnet
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

/// World <-> occupancy-grid mapping. Rows follow world x, columns follow world y;
/// `origin_x/origin_y` is the world point that maps to the corner of cell (0, 0).
struct GridSpec
{
  std::size_t height = 0;
  std::size_t width = 0;
  double extent_rows = 0.0;  // meters covered by all rows
  double extent_cols = 0.0;  // meters covered by all columns
  double origin_x = 0.0;
  double origin_y = 0.0;

  double row_pitch() const { return extent_rows / static_cast<double>(height); }
  double col_pitch() const { return extent_cols / static_cast<double>(width); }
  std::size_t cells() const { return height * width; }

  /// Throws std::invalid_argument unless all sizes and extents are positive.
  void validate() const;

  /// Square window of side 2 * half_side meters centered on `center`.
  static GridSpec centered(Point2 center, double half_side, std::size_t height, std::size_t width);

  friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/// Real-valued cell coordinates before flooring.
struct CellCoord
{
  double h = 0.0;
  double w = 0.0;
};

struct CellIndex
{
  std::int64_t h = 0;
  std::int64_t w = 0;
};

struct MotionState
{
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double a = 0.0;
  double theta = 0.0;
};

struct Trajectory
{
  std::int64_t agent_id = 0;
  std::vector<MotionState> states;
  double dt = 0.4;
  std::int64_t t0 = 0;  // step index of states.front()

  std::int64_t t_end() const { return t0 + static_cast<std::int64_t>(states.size()); }
};

struct Ogm
{
  GridSpec spec;
  std::vector<double> values;  // row-major, H * W

  explicit Ogm(GridSpec s = {}) : spec(s), values(s.cells(), 0.0) {}

  double & at(std::size_t h, std::size_t w) { return values[h * spec.width + w]; }
  double at(std::size_t h, std::size_t w) const { return values[h * spec.width + w]; }
};

struct OgmSequence
{
  GridSpec spec;
  std::size_t frames = 0;
  std::vector<double> values;      // frames * H * W, row-major per frame
  std::vector<bool> out_of_range;  // one flag per frame

  OgmSequence() = default;
  OgmSequence(GridSpec s, std::size_t t)
  : spec(s), frames(t), values(t * s.cells(), 0.0), out_of_range(t, false)
  {
  }

  std::span<double> frame(std::size_t t)
  {
    return std::span<double>(values).subspan(t * spec.cells(), spec.cells());
  }
  std::span<const double> frame(std::size_t t) const
  {
    return std::span<const double>(values).subspan(t * spec.cells(), spec.cells());
  }
};

CellCoord coords_to_cell(const GridSpec & spec, Point2 p);

/// Floors coords_to_cell. Returns false when the cell lies outside the grid.
bool locate_cell(const GridSpec & spec, Point2 p, CellIndex & out);

/// Cell-center world coordinates. Throws std::out_of_range for indices outside the grid.
Point2 cell_to_coords(const GridSpec & spec, std::int64_t h, std::int64_t w);

/// One-hot occupancy for steps [t_begin, t_end) of `traj`, indexed relative to states.front().
OgmSequence rasterize_trajectory(
  const GridSpec & spec, const Trajectory & traj, std::size_t t_begin, std::size_t t_end);

/// Argmax cell of every frame mapped back to world coordinates. Ties go to the
/// smallest row-major index. Throws std::invalid_argument on an all-zero frame.
std::vector<Point2> extract_trajectory(const OgmSequence & ogms);

}  // namespace visionnet

#endif  // VISIONNET__GRID_HPP_
