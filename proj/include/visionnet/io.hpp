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

#ifndef VISIONNET__IO_HPP_
#define VISIONNET__IO_HPP_

#include "visionnet/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace visionnet
{

struct TrajectoryRow
{
  std::size_t sample_id = 0;
  std::int64_t agent_id = 0;
  std::size_t t = 0;
  double x = 0.0;
  double y = 0.0;
};

/// `sample_id,agent_id,t,x,y` with header and 6-decimal fixed-point coordinates.
void write_trajectory_csv(std::ostream & os, std::span<const TrajectoryRow> rows);

/// Plain PGM (P2), maxval 255, pixel = round(255 * clamp(v, 0, 1)).
void write_pgm(std::ostream & os, std::span<const double> frame, std::size_t height,
               std::size_t width);
void save_pgm(const std::filesystem::path & path, std::span<const double> frame,
              std::size_t height, std::size_t width);

struct PgmImage
{
  std::size_t height = 0;
  std::size_t width = 0;
  int maxval = 255;
  std::vector<int> pixels;
};

PgmImage read_pgm(std::istream & is);

/// The 8-bit levels write_pgm stores for `frame`.
std::vector<int> quantize_frame(std::span<const double> frame);

}  // namespace visionnet

#endif  // VISIONNET__IO_HPP_
