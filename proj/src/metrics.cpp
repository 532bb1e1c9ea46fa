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

#include "visionnet/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace visionnet
{

namespace
{

void check_pair(std::span<const Point2> pred, std::span<const Point2> gt, const char * what)
{
  if (pred.size() != gt.size() || pred.empty()) {
    throw std::invalid_argument(
      std::string(what) + ": need equal non-empty sequences, got " + std::to_string(pred.size()) +
      " and " + std::to_string(gt.size()));
  }
}

}  // namespace

double metric_mse(const OgmSequence & pred, const OgmSequence & gt)
{
  if (pred.values.size() != gt.values.size() || pred.values.empty()) {
    throw std::invalid_argument("metric_mse: grid sequences differ in size");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double d = pred.values[i] - gt.values[i];
    s += d * d;
  }
  return s / static_cast<double>(pred.values.size());
}

double metric_ade(std::span<const Point2> pred, std::span<const Point2> gt)
{
  check_pair(pred, gt, "metric_ade");
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    s += std::hypot(pred[i].x - gt[i].x, pred[i].y - gt[i].y);
  }
  return s / static_cast<double>(pred.size());
}

double metric_fde(std::span<const Point2> pred, std::span<const Point2> gt)
{
  check_pair(pred, gt, "metric_fde");
  return std::hypot(pred.back().x - gt.back().x, pred.back().y - gt.back().y);
}

std::vector<Point2> baseline_linear(std::span<const Point2> observed, std::size_t horizon)
{
  if (observed.empty()) {
    throw std::invalid_argument("baseline_linear: no observed points");
  }
  const std::size_t n = observed.size();
  std::vector<Point2> out;
  out.reserve(horizon);
  if (n == 1) {
    out.assign(horizon, observed.front());
    return out;
  }
  // Centered time axis keeps the normal equations well conditioned.
  const double t_mean = 0.5 * static_cast<double>(n - 1);
  double stt = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += observed[i].x;
    my += observed[i].y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double stx = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i) - t_mean;
    stt += dt * dt;
    stx += dt * (observed[i].x - mx);
    sty += dt * (observed[i].y - my);
  }
  const double bx = stx / stt;
  const double by = sty / stt;
  for (std::size_t k = 1; k <= horizon; ++k) {
    const double t = static_cast<double>(n - 1 + k) - t_mean;
    out.push_back({mx + bx * t, my + by * t});
  }
  return out;
}

std::vector<Point2> baseline_const_velocity(std::span<const Point2> observed, std::size_t horizon)
{
  if (observed.empty()) {
    throw std::invalid_argument("baseline_const_velocity: no observed points");
  }
  const Point2 last = observed.back();
  Point2 step{0.0, 0.0};
  if (observed.size() >= 2) {
    const Point2 prev = observed[observed.size() - 2];
    step = {last.x - prev.x, last.y - prev.y};
  }
  std::vector<Point2> out;
  out.reserve(horizon);
  for (std::size_t k = 1; k <= horizon; ++k) {
    out.push_back({last.x + step.x * static_cast<double>(k), last.y + step.y * static_cast<double>(k)});
  }
  return out;
}

}  // namespace visionnet
