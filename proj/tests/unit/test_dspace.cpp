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


#include "doctest.h"
#include "visionnet/dspace.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace visionnet;

namespace
{

// Point-in-rectangle test over every cell center.
Ogm brute_bdis(const GridSpec & g, const MotionState & s, double mu, double width)
{
  Ogm out(g);
  for (std::size_t h = 0; h < g.height; ++h) {
    for (std::size_t w = 0; w < g.width; ++w) {
      const double cx = g.origin_x + g.row_pitch() * (static_cast<double>(h) + 0.5);
      const double cy = g.origin_y + g.col_pitch() * (static_cast<double>(w) + 0.5);
      const double along = (cx - s.x) * std::cos(s.theta) + (cy - s.y) * std::sin(s.theta);
      const double across = -(cx - s.x) * std::sin(s.theta) + (cy - s.y) * std::cos(s.theta);
      if (along >= 0.0 && along < mu && std::abs(across) <= 0.5 * width) {
        out.at(h, w) = 1.0;
      }
    }
  }
  const double fh = std::floor((s.x - g.origin_x) / g.row_pitch());
  const double fw = std::floor((s.y - g.origin_y) / g.col_pitch());
  if (fh >= 0 && fw >= 0 && fh < static_cast<double>(g.height) && fw < static_cast<double>(g.width)) {
    out.at(static_cast<std::size_t>(fh), static_cast<std::size_t>(fw)) = 1.0;
  }
  return out;
}

}  // namespace

TEST_CASE("static drivable space combines obstacle probabilities")
{
  const GridSpec g{2, 2, 2.0, 2.0, 0.0, 0.0};
  Ogm a(g);
  Ogm b(g);
  a.values = {0.5, 1.0, 0.0, 0.2};
  b.values = {0.5, 0.3, 0.0, 0.0};
  const std::vector<Ogm> both{a, b};
  const Ogm d = static_gdas_oracle(both);
  CHECK(d.values[0] == 0.75);
  CHECK(d.values[1] == 1.0);
  CHECK(d.values[2] == 0.0);
  CHECK(d.values[3] == doctest::Approx(0.2));
  const std::vector<Ogm> mismatched{a, Ogm(GridSpec{3, 3, 3.0, 3.0, 0.0, 0.0})};
  CHECK_THROWS(static_gdas_oracle(mismatched));
}

TEST_CASE("basic space is a strip ahead of the obstacle")
{
  const GridSpec g{16, 16, 8.0, 8.0, 0.0, 0.0};  // 0.5 m pitch
  const Point2 anchor = cell_to_coords(g, 4, 6);
  MotionState s{anchor.x, anchor.y, 1.0, 0.0, 0.0};
  const Ogm strip = render_bdis(g, s, 2.0, 0.6);
  for (std::size_t h = 0; h < 16; ++h) {
    for (std::size_t w = 0; w < 16; ++w) {
      const bool inside = w == 6 && h >= 4 && h < 8;
      CHECK(strip.at(h, w) == (inside ? 1.0 : 0.0));
    }
  }
  s.theta = std::numbers::pi;
  const Ogm mirrored = render_bdis(g, s, 2.0, 0.6);
  for (std::size_t h = 0; h < 16; ++h) {
    for (std::size_t w = 0; w < 16; ++w) {
      const std::size_t mh = 8 - h;
      const double expect = mh < 16 ? strip.at(mh, w) : 0.0;
      CHECK(mirrored.at(h, w) == expect);
    }
  }
}

TEST_CASE("zero distance leaves only the anchor cell")
{
  const GridSpec g = GridSpec::centered({0.0, 0.0}, 10.0, 64, 64);
  MotionState s{1.3, -2.2, 0.0, 0.0, 0.7};
  const Ogm b = render_bdis(g, s, 0.0, 0.6);
  Trajectory tr;
  tr.states = {s};
  const OgmSequence one = rasterize_trajectory(g, tr, 0, 1);
  CHECK(b.values == one.values);
  CHECK_THROWS(render_bdis(g, s, -1.0, 0.6));
  CHECK_THROWS(render_bdis(g, s, 1.0, 0.0));
}

TEST_CASE("basic space matches a full-grid brute force")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-12.0, 12.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> len(0.0, 6.0);
  std::uniform_real_distribution<double> wid(0.2, 2.0);
  const GridSpec g = GridSpec::centered({0.5, -0.5}, 10.0, 48, 48);
  for (int trial = 0; trial < 200; ++trial) {
    const MotionState s{pos(rng), pos(rng), 1.0, 0.0, ang(rng)};
    const double mu = len(rng);
    const double w = wid(rng);
    CHECK(render_bdis(g, s, mu, w).values == brute_bdis(g, s, mu, w).values);
  }
}

TEST_CASE("noise space is a unit-peak Gaussian")
{
  const GridSpec g{21, 21, 21.0, 21.0, -10.5, -10.5};  // cell centers on integers
  MotionState s{0.0, 0.0, 0.0, 0.0, 0.0};
  const Ogm n = render_ndis(g, s, 0.0, 1.0);
  CHECK(n.at(10, 10) == 1.0);
  CHECK(n.at(11, 10) == doctest::Approx(std::exp(-0.5)));
  CHECK(n.at(11, 10) == doctest::Approx(0.6065).epsilon(1e-4));

  s.theta = 0.4;
  const Ogm unit = render_ndis(g, s, 1.7, 1.0);
  const Ogm quarter = render_ndis(g, s, 1.7, 0.25);
  for (std::size_t i = 0; i < unit.values.size(); ++i) {
    CHECK(std::pow(unit.values[i], 4.0) == doctest::Approx(quarter.values[i]).epsilon(1e-12));
  }
  CHECK_THROWS(render_ndis(g, s, 1.0, 0.0));
}

TEST_CASE("driving spaces skip absent steps and feed complements")
{
  const GridSpec g = GridSpec::centered({0.0, 0.0}, 10.0, 32, 32);
  const std::vector<MotionState> states{{0, 0, 1, 0, 0}, {0.4, 0, 1, 0, 0}, {0.8, 0, 1, 0, 0}};
  const std::vector<double> mu{0.4, -0.2, 0.4};
  const std::vector<bool> present{true, true, false};
  const DrivingSpaces ds = build_driving_spaces(g, states, mu, present, 0.6);
  for (double v : ds.db.frame(2)) {
    CHECK(v == 0.0);
  }
  for (double v : ds.dn.frame(2)) {
    CHECK(v == 0.0);
  }
  // negative distance clamps to the anchor cell
  double sum1 = 0.0;
  for (double v : ds.db.frame(1)) {
    sum1 += v;
  }
  CHECK(sum1 == 1.0);

  const MaskInputs m = ablation_mask_inputs(ds);
  for (double v : m.one_minus_db.frame(2)) {
    CHECK(v == 1.0);
  }
  for (std::size_t i = 0; i < m.one_minus_db.values.size(); ++i) {
    CHECK(1.0 - m.one_minus_db.values[i] == ds.db.values[i]);
    CHECK(m.one_minus_dn.values[i] == 1.0 - ds.dn.values[i]);
  }
  const std::vector<double> short_mu{0.4};
  CHECK_THROWS(build_driving_spaces(g, states, short_mu, present, 0.6));
}
