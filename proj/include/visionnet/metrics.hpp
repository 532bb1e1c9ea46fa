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

#ifndef VISIONNET__METRICS_HPP_
#define VISIONNET__METRICS_HPP_

#include "visionnet/grid.hpp"

#include <span>
#include <vector>

namespace visionnet
{

/// Mean squared cell difference over every frame and cell.
double metric_mse(const OgmSequence & pred, const OgmSequence & gt);

/// Mean Euclidean distance over matching steps, meters.
double metric_ade(std::span<const Point2> pred, std::span<const Point2> gt);

/// Euclidean distance between the final points, meters.
double metric_fde(std::span<const Point2> pred, std::span<const Point2> gt);

/// Per-axis least-squares line in time over the observed points, extrapolated
/// `horizon` steps past the last observation.
std::vector<Point2> baseline_linear(std::span<const Point2> observed, std::size_t horizon);

/// Last observed displacement repeated `horizon` times.
std::vector<Point2> baseline_const_velocity(std::span<const Point2> observed, std::size_t horizon);

}  // namespace visionnet

#endif  // VISIONNET__METRICS_HPP_
