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
#include "visionnet/io.hpp"
#include "visionnet/metrics.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace visionnet;

TEST_CASE("grid MSE")
{
  const GridSpec g{4, 4, 4.0, 4.0, 0.0, 0.0};
  OgmSequence a(g, 3);
  OgmSequence b(g, 3);
  CHECK(metric_mse(a, b) == 0.0);
  for (std::size_t t = 0; t < 3; ++t) {
    a.frame(t)[t + 2] = 1.0;
  }
  CHECK(metric_mse(a, b) == doctest::Approx(1.0 / 16.0));
  CHECK(metric_mse(a, b) == metric_mse(b, a));
  CHECK_THROWS(metric_mse(a, OgmSequence(g, 2)));
}

TEST_CASE("displacement errors")
{
  std::vector<Point2> gt;
  std::vector<Point2> shifted;
  for (int t = 0; t < 12; ++t) {
    gt.push_back({0.5 * t, -0.2 * t});
    shifted.push_back({0.5 * t + 1.0, -0.2 * t});
  }
  CHECK(metric_ade(gt, gt) == 0.0);
  CHECK(metric_fde(gt, gt) == 0.0);
  CHECK(metric_ade(shifted, gt) == doctest::Approx(1.0));
  const std::vector<Point2> one{{3.0, 4.0}};
  const std::vector<Point2> origin{{0.0, 0.0}};
  CHECK(metric_ade(one, origin) == metric_fde(one, origin));
  CHECK(metric_fde(one, origin) == 5.0);
  std::vector<Point2> end_off = gt;
  end_off.back() = {gt.back().x + 3.0, gt.back().y + 4.0};
  end_off[3].x += 10.0;
  CHECK(metric_fde(end_off, gt) == doctest::Approx(5.0));
  CHECK_THROWS(metric_ade(one, gt));
}

TEST_CASE("linear and constant-velocity baselines")
{
  std::vector<Point2> line;
  for (int t = 0; t < 8; ++t) {
    line.push_back({1.0 + 0.4 * t, 2.0 - 0.3 * t});
  }
  for (const auto & pred : {baseline_linear(line, 12), baseline_const_velocity(line, 12)}) {
    REQUIRE(pred.size() == 12);
    for (int k = 0; k < 12; ++k) {
      CHECK(pred[k].x == doctest::Approx(1.0 + 0.4 * (8 + k)));
      CHECK(pred[k].y == doctest::Approx(2.0 - 0.3 * (8 + k)));
    }
  }
  const std::vector<Point2> still(8, Point2{3.0, -1.0});
  for (const auto & p : baseline_linear(still, 4)) {
    CHECK(p.x == doctest::Approx(3.0));
    CHECK(p.y == doctest::Approx(-1.0));
  }
  for (const auto & p : baseline_const_velocity(still, 4)) {
    CHECK(p.x == 3.0);
  }

  // least squares averages out observation noise
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<Point2> noisy;
  for (int t = 0; t < 8; ++t) {
    noisy.push_back({0.4 * t + noise(rng), 0.1 * t + noise(rng)});
  }
  const auto fit = baseline_linear(noisy, 1);
  CHECK(std::abs(fit[0].x - 0.4 * 8) < 3 * 0.05);
  CHECK(std::abs(fit[0].y - 0.1 * 8) < 3 * 0.05);
}

TEST_CASE("trajectory CSV layout")
{
  std::ostringstream os;
  const std::vector<TrajectoryRow> rows{{0, 7, 0, 1.5, -2.25}, {0, 7, 1, 1.0 / 3.0, 0.0}};
  write_trajectory_csv(os, rows);
  CHECK(os.str() == "sample_id,agent_id,t,x,y\n0,7,0,1.500000,-2.250000\n0,7,1,0.333333,0.000000\n");
}

TEST_CASE("PGM export re-parses to the quantized grid")
{
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  std::vector<double> frame(6 * 5);
  for (auto & v : frame) {
    v = u(rng);
  }
  frame[0] = 0.5 / 255.0;  // rounds half away from zero
  std::stringstream ss;
  write_pgm(ss, frame, 6, 5);
  const PgmImage img = read_pgm(ss);
  CHECK(img.height == 6);
  CHECK(img.width == 5);
  CHECK(img.maxval == 255);
  CHECK(img.pixels == quantize_frame(frame));
  CHECK(img.pixels[0] == 1);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const double c = std::clamp(frame[i], 0.0, 1.0);
    CHECK(std::abs(img.pixels[i] / 255.0 - c) <= 0.5 / 255.0 + 1e-12);
  }
  std::stringstream bad("P5 1 1 255 0");
  CHECK_THROWS(read_pgm(bad));
  CHECK_THROWS(write_pgm(ss, frame, 5, 5));
}
