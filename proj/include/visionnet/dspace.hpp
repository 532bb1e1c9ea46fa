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

#ifndef VISIONNET__DSPACE_HPP_
#define VISIONNET__DSPACE_HPP_

#include "visionnet/grid.hpp"

#include <span>
#include <vector>

namespace visionnet
{

/// Per-obstacle driving spaces over the observed steps. `db` is the basic
/// (swept-rectangle) space, `dn` the unit-variance noise space. The learned
/// combination of the two is produced by the interaction network.
struct DrivingSpaces
{
  OgmSequence db;
  OgmSequence dn;
  double width_m = 0.6;
};

/// 1 - prod_i (1 - O_i) per cell. All grids must share one GridSpec.
Ogm static_gdas_oracle(std::span<const Ogm> ogms);

/// Cells whose centers lie in the rectangle swept from (x, y) along theta for
/// length `mu` (half-open, [0, mu)) with lateral half-width width_m / 2, plus the
/// cell containing (x, y) itself.
Ogm render_bdis(const GridSpec & spec, const MotionState & state, double mu, double width_m);

/// exp(-r^2 / (2 variance)) about (x + mu cos(theta), y + mu sin(theta)).
Ogm render_ndis(const GridSpec & spec, const MotionState & state, double mu, double variance);

/// Driving spaces for one agent; frames whose `present` flag is false stay zero.
/// `mu[t]` is the one-step traveled-distance mean, clamped at zero.
DrivingSpaces build_driving_spaces(
  const GridSpec & spec, std::span<const MotionState> states, std::span<const double> mu,
  const std::vector<bool> & present, double width_m);

struct MaskInputs
{
  OgmSequence one_minus_db;
  OgmSequence one_minus_dn;
};

MaskInputs ablation_mask_inputs(const DrivingSpaces & ds);

}  // namespace visionnet

#endif  // VISIONNET__DSPACE_HPP_
