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

#include "visionnet/dspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace visionnet
{

Ogm static_gdas_oracle(std::span<const Ogm> ogms)
{
  if (ogms.empty()) {
    throw std::invalid_argument("static_gdas_oracle: no grids");
  }
  const GridSpec & spec = ogms.front().spec;
  std::vector<double> free_prob(spec.cells(), 1.0);
  for (const auto & ogm : ogms) {
    if (!(ogm.spec == spec) || ogm.values.size() != spec.cells()) {
      throw std::invalid_argument("static_gdas_oracle: grids do not share one GridSpec");
    }
    for (std::size_t i = 0; i < free_prob.size(); ++i) {
      free_prob[i] *= 1.0 - ogm.values[i];
    }
  }
  Ogm out(spec);
  for (std::size_t i = 0; i < free_prob.size(); ++i) {
    out.values[i] = 1.0 - free_prob[i];
  }
  return out;
}

Ogm render_bdis(const GridSpec & spec, const MotionState & state, double mu, double width_m)
{
  spec.validate();
  if (mu < 0.0) {
    throw std::invalid_argument("render_bdis: mu must be non-negative");
  }
  if (!(width_m > 0.0)) {
    throw std::invalid_argument("render_bdis: width must be positive");
  }
  Ogm out(spec);
  CellIndex anchor;
  if (locate_cell(spec, {state.x, state.y}, anchor)) {
    out.at(static_cast<std::size_t>(anchor.h), static_cast<std::size_t>(anchor.w)) = 1.0;
  }
  if (mu == 0.0) {
    return out;
  }
  const double ux = std::cos(state.theta);
  const double uy = std::sin(state.theta);
  const double half_width = 0.5 * width_m;

  // Scan only the bounding box of the rectangle.
  const double reach = mu + half_width;
  const CellCoord lo = coords_to_cell(spec, {state.x - reach, state.y - reach});
  const CellCoord hi = coords_to_cell(spec, {state.x + reach, state.y + reach});
  const auto clamp_index = [](double v, std::size_t n) {
    return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(n)));
  };
  const std::size_t h0 = clamp_index(std::floor(lo.h) - 1.0, spec.height);
  const std::size_t h1 = clamp_index(std::floor(hi.h) + 2.0, spec.height);
  const std::size_t w0 = clamp_index(std::floor(lo.w) - 1.0, spec.width);
  const std::size_t w1 = clamp_index(std::floor(hi.w) + 2.0, spec.width);
  for (std::size_t h = h0; h < h1; ++h) {
    for (std::size_t w = w0; w < w1; ++w) {
      const Point2 c = cell_to_coords(spec, static_cast<std::int64_t>(h), static_cast<std::int64_t>(w));
      const double dx = c.x - state.x;
      const double dy = c.y - state.y;
      const double along = dx * ux + dy * uy;
      const double across = -dx * uy + dy * ux;
      if (along >= 0.0 && along < mu && std::abs(across) <= half_width) {
        out.at(h, w) = 1.0;
      }
    }
  }
  return out;
}

Ogm render_ndis(const GridSpec & spec, const MotionState & state, double mu, double variance)
{
  spec.validate();
  if (!(variance > 0.0)) {
    throw std::invalid_argument("render_ndis: variance must be positive");
  }
  const double cx = state.x + mu * std::cos(state.theta);
  const double cy = state.y + mu * std::sin(state.theta);
  const double inv = 1.0 / (2.0 * variance);
  Ogm out(spec);
  for (std::size_t h = 0; h < spec.height; ++h) {
    const double dx =
      spec.row_pitch() * (static_cast<double>(h) + 0.5) + spec.origin_x - cx;
    for (std::size_t w = 0; w < spec.width; ++w) {
      const double dy =
        spec.col_pitch() * (static_cast<double>(w) + 0.5) + spec.origin_y - cy;
      out.at(h, w) = std::exp(-(dx * dx + dy * dy) * inv);
    }
  }
  return out;
}

DrivingSpaces build_driving_spaces(
  const GridSpec & spec, std::span<const MotionState> states, std::span<const double> mu,
  const std::vector<bool> & present, double width_m)
{
  if (mu.size() != states.size() || present.size() != states.size()) {
    throw std::invalid_argument("build_driving_spaces: states, mu and presence differ in length");
  }
  DrivingSpaces ds{OgmSequence(spec, states.size()), OgmSequence(spec, states.size()), width_m};
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (!present[t]) {
      continue;
    }
    const double m = std::max(mu[t], 0.0);
    const Ogm b = render_bdis(spec, states[t], m, width_m);
    const Ogm n = render_ndis(spec, states[t], m, 1.0);
    std::copy(b.values.begin(), b.values.end(), ds.db.frame(t).begin());
    std::copy(n.values.begin(), n.values.end(), ds.dn.frame(t).begin());
  }
  return ds;
}

MaskInputs ablation_mask_inputs(const DrivingSpaces & ds)
{
  MaskInputs out{ds.db, ds.dn};
  for (auto & v : out.one_minus_db.values) {
    v = 1.0 - v;
  }
  for (auto & v : out.one_minus_dn.values) {
    v = 1.0 - v;
  }
  return out;
}

}  // namespace visionnet
