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

#include "visionnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace visionnet
{

void write_trajectory_csv(std::ostream & os, std::span<const TrajectoryRow> rows)
{
  os << "sample_id,agent_id,t,x,y\n";
  os << std::fixed << std::setprecision(6);
  for (const auto & r : rows) {
    os << r.sample_id << ',' << r.agent_id << ',' << r.t << ',' << r.x << ',' << r.y << '\n';
  }
}

std::vector<int> quantize_frame(std::span<const double> frame)
{
  std::vector<int> out(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const double v = std::isnan(frame[i]) ? 0.0 : std::clamp(frame[i], 0.0, 1.0);
    out[i] = static_cast<int>(std::lround(255.0 * v));
  }
  return out;
}

void write_pgm(std::ostream & os, std::span<const double> frame, std::size_t height,
               std::size_t width)
{
  if (frame.size() != height * width) {
    throw std::invalid_argument("write_pgm: frame size does not match dimensions");
  }
  const auto q = quantize_frame(frame);
  os << "P2\n" << width << ' ' << height << "\n255\n";
  for (std::size_t h = 0; h < height; ++h) {
    for (std::size_t w = 0; w < width; ++w) {
      os << q[h * width + w] << (w + 1 == width ? '\n' : ' ');
    }
  }
}

void save_pgm(const std::filesystem::path & path, std::span<const double> frame,
              std::size_t height, std::size_t width)
{
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_pgm(os, frame, height, width);
}

namespace
{

// Next whitespace-separated token, skipping '#' comments.
std::string next_token(std::istream & is)
{
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    return tok;
  }
  throw std::runtime_error("PGM: unexpected end of data");
}

}  // namespace

PgmImage read_pgm(std::istream & is)
{
  if (next_token(is) != "P2") {
    throw std::runtime_error("PGM: expected P2 header");
  }
  PgmImage img;
  img.width = std::stoul(next_token(is));
  img.height = std::stoul(next_token(is));
  img.maxval = std::stoi(next_token(is));
  if (img.maxval <= 0 || img.maxval > 65535) {
    throw std::runtime_error("PGM: bad maxval");
  }
  img.pixels.resize(img.width * img.height);
  for (auto & p : img.pixels) {
    p = std::stoi(next_token(is));
    if (p < 0 || p > img.maxval) {
      throw std::runtime_error("PGM: pixel out of range");
    }
  }
  return img;
}

}  // namespace visionnet
