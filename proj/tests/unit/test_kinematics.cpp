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
#include "visionnet/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace visionnet;

TEST_CASE("difference method on a straight constant-speed path")
{
  const std::vector<Point2> p{{0, 0}, {1, 0}, {2, 0}};
  const Trajectory tr = derive_states(p, 0.4, 5, 3);
  REQUIRE(tr.states.size() == 3);
  CHECK(tr.agent_id == 5);
  CHECK(tr.t0 == 3);
  CHECK(tr.states[2].v == doctest::Approx(2.5));
  CHECK(tr.states[2].a == doctest::Approx(0.0));
  CHECK(tr.states[2].theta == doctest::Approx(0.0));
  // back-filled leading steps
  CHECK(tr.states[0].v == tr.states[1].v);
  CHECK(tr.states[0].a == tr.states[2].a);
}

TEST_CASE("stationary agent has zero motion and zero heading")
{
  const std::vector<Point2> p{{4, 4}, {4, 4}, {4, 4}, {4, 4}};
  const Trajectory tr = derive_states(p, 0.4);
  for (const auto & s : tr.states) {
    CHECK(s.v == 0.0);
    CHECK(s.a == 0.0);
    CHECK(s.theta == 0.0);
  }
}

TEST_CASE("heading follows the displacement direction")
{
  const std::vector<Point2> p{{0, 0}, {0, 1}, {0, 2}};
  const Trajectory tr = derive_states(p, 1.0);
  CHECK(tr.states[2].theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(tr.states[2].v == doctest::Approx(1.0));
}

TEST_CASE("acceleration is signed along the heading")
{
  const std::vector<Point2> speeding{{0, 0}, {1, 0}, {3, 0}, {6, 0}};
  const Trajectory up = derive_states(speeding, 1.0);
  CHECK(up.states[3].v == doctest::Approx(3.0));
  CHECK(up.states[3].a == doctest::Approx(1.0));
  const std::vector<Point2> slowing{{6, 0}, {3, 0}, {1, 0}, {0, 0}};
  const Trajectory down = derive_states(slowing, 1.0);
  CHECK(down.states[3].theta == doctest::Approx(std::numbers::pi));
  CHECK(down.states[3].a == doctest::Approx(-1.0));
}

TEST_CASE("a pause keeps the previous heading")
{
  const std::vector<Point2> p{{0, 0}, {0, 1}, {0, 1}, {0, 2}};
  const Trajectory tr = derive_states(p, 1.0);
  CHECK(tr.states[2].v == 0.0);
  CHECK(tr.states[2].theta == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("derive_states rejects short tracks and bad steps")
{
  const std::vector<Point2> two{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(derive_states(two, 0.4), std::invalid_argument);
  const std::vector<Point2> three{{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS(derive_states(three, 0.0), std::invalid_argument);
}

TEST_CASE("wrap_angle lands in (-pi, pi]")
{
  CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
  CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
}

TEST_CASE("traveled distance mean and variance")
{
  MotionState s;
  s.v = 2.0;
  s.a = 1.0;
  NoiseParams unit{1.0, 1.0, 1.0, 1.0, 1.0};
  const auto d = distance_distribution(s, unit, 0.4);
  CHECK(d.mean == doctest::Approx(0.88));
  CHECK(d.variance == doctest::Approx(0.224));
  NoiseParams none{0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(distance_distribution(s, none, 0.4).variance == 0.0);
  NoiseParams bad;
  bad.meas_speed = -1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Monte-Carlo distance draws agree with the closed form")
{
  MotionState s;
  s.v = 2.0;
  s.a = 1.0;
  NoiseParams unit{1.0, 1.0, 1.0, 1.0, 1.0};
  const auto mc = mc_distance_oracle(s, unit, 0.4, 1000000, 11);
  CHECK(mc.mean == doctest::Approx(0.88).epsilon(0.01));
  CHECK(mc.variance == doctest::Approx(0.224).epsilon(0.02));

  NoiseParams none{0.0, 0.0, 0.0, 0.0, 0.0};
  const auto exact = mc_distance_oracle(s, none, 0.4, 1000, 11);
  CHECK(exact.mean == doctest::Approx(0.88).epsilon(1e-14));
  CHECK(exact.variance == doctest::Approx(0.0).epsilon(1e-14));

  const auto again = mc_distance_oracle(s, unit, 0.4, 10000, 3);
  const auto twice = mc_distance_oracle(s, unit, 0.4, 10000, 3);
  CHECK(again.mean == twice.mean);
  CHECK(again.variance == twice.variance);
}
