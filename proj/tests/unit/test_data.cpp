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
#include "visionnet/data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace visionnet;

namespace
{

Scene parse(const std::string & text, ParseReport * report = nullptr)
{
  std::istringstream is(text);
  return parse_annotations(is, 0.4, report);
}

std::string error_of(const std::string & text)
{
  try {
    parse(text);
  } catch (const std::runtime_error & e) {
    return e.what();
  }
  return "";
}

// Straight track at 1 m per step along x, `n` frames starting at frame 10 * first.
std::string straight(int agent, int first, int n, double y)
{
  std::string s;
  for (int k = 0; k < n; ++k) {
    s += std::to_string(10 * (first + k)) + " " + std::to_string(agent) + " " +
         std::to_string(static_cast<double>(k)) + " " + std::to_string(y) + "\n";
  }
  return s;
}

}  // namespace

TEST_CASE("minimal single-agent file")
{
  const Scene s = parse("# frame id x y\n0 1 0.0 0.0\n\n10 1 1.0 0.0\n20 1 2.0 0.0\n");
  REQUIRE(s.agents.size() == 1);
  CHECK(s.agents[0].agent_id == 1);
  CHECK(s.agents[0].states.size() == 3);
  CHECK(s.frame_stride == 10.0);
  CHECK(s.agents[0].states[2].v == doctest::Approx(2.5));
}

TEST_CASE("interleaved agents parse independently of line order")
{
  const Scene a = parse("0 1 0 0\n0 2 5 5\n10 1 1 0\n10 2 5 6\n20 2 5 7\n20 1 2 0\n");
  const Scene b = parse("0 2 5 5\n10 2 5 6\n20 2 5 7\n0 1 0 0\n10 1 1 0\n20 1 2 0\n");
  REQUIRE(a.agents.size() == 2);
  REQUIRE(b.agents.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(a.agents[i].agent_id == b.agents[i].agent_id);
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(a.agents[i].states[t].x == b.agents[i].states[t].x);
      CHECK(a.agents[i].states[t].y == b.agents[i].states[t].y);
    }
  }
  CHECK(a.agents[1].states[1].y == 6.0);
  CHECK(a.bounds.max_x == 5.0);
  CHECK(a.bounds.max_y == 7.0);
}

TEST_CASE("parse errors name the line")
{
  CHECK(error_of("1 2 x 4\n").find("line 1") != std::string::npos);
  CHECK(error_of("0 1 0 0\n10 1 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("0 1.5 0 0\n").find("line 1") != std::string::npos);
  CHECK(error_of("0 1 0 0\n10 1 1 0\n10 1 2 0\n").find("duplicate") != std::string::npos);
  const std::string gap = error_of("0 1 0 0\n10 1 1 0\n30 1 3 0\n40 1 4 0\n");
  CHECK(gap.find("line 3") != std::string::npos);
  CHECK(gap.find("inconsistent frame stride") != std::string::npos);
  CHECK(error_of("0 1 0 0\n10 1 1 0\n15 2 1 0\n20 1 2 0\n").find("line") != std::string::npos);
}

TEST_CASE("short agents are skipped and counted")
{
  ParseReport report;
  const Scene s = parse("0 1 0 0\n10 1 1 0\n0 2 0 0\n10 2 1 0\n20 2 2 0\n", &report);
  CHECK(s.agents.size() == 1);
  CHECK(report.skipped_short_agents == 1);
  CHECK(report.lines == 5);
}

TEST_CASE("annotations round-trip through the writer")
{
  const Scene s = parse(straight(3, 0, 5, 0.125) + straight(4, 2, 4, -1.0 / 3.0));
  std::ostringstream os;
  write_annotations(os, s);
  const Scene back = parse(os.str());
  REQUIRE(back.agents.size() == 2);
  CHECK(back.agents[1].t0 == s.agents[1].t0);
  CHECK(back.agents[1].states[0].y == s.agents[1].states[0].y);
}

TEST_CASE("window counts follow track length")
{
  WindowConfig cfg;
  cfg.height = 16;
  cfg.width = 16;
  CHECK(window_samples(parse(straight(1, 0, 20, 0.0)), cfg).size() == 1);
  CHECK(window_samples(parse(straight(1, 0, 21, 0.0)), cfg).size() == 2);
  WindowReport report;
  CHECK(window_samples(parse(straight(1, 0, 19, 0.0)), cfg, &report).empty());
  CHECK(report.skipped_agents == 1);
  cfg.stride = 2;
  CHECK(window_samples(parse(straight(1, 0, 24, 0.0)), cfg).size() == 3);
}

TEST_CASE("windows are centered on the target and carry partial neighbors")
{
  // target frames 0..19, neighbor frames 3..7 overlap observed steps 3..7
  const Scene s = parse(straight(1, 0, 20, 0.0) + straight(2, 3, 5, 2.0));
  WindowConfig cfg;
  cfg.height = 16;
  cfg.width = 16;
  const auto samples = window_samples(s, cfg);
  REQUIRE(samples.size() == 1);
  const Sample & sample = samples[0];
  CHECK(sample.target_id == 1);
  CHECK(sample.center().x == 7.0);
  CHECK(sample.center().y == 0.0);
  CHECK(sample.grid.origin_x == 7.0 - 10.0);
  CHECK(sample.future.size() == 12);
  CHECK(sample.future.front().x == 8.0);
  REQUIRE(sample.observed.size() == 2);
  const AgentWindow & n = sample.observed[1];
  CHECK(n.agent_id == 2);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(n.present[k] == (k >= 3));
    if (k < 3) {
      CHECK(n.states[k].x == 0.0);
      CHECK(n.states[k].y == 0.0);
    } else {
      CHECK(n.states[k].y == 2.0);
    }
  }
}

TEST_CASE("synthetic scenes")
{
  SyntheticConfig straight_cfg;
  straight_cfg.avoidance_gain = 0.0;
  for (const auto & scene : gen_synthetic(Scenario::crossing, 5, 1, straight_cfg)) {
    REQUIRE(scene.agents.size() == 2);
    for (const auto & agent : scene.agents) {
      REQUIRE(agent.states.size() == 20);
      const auto & s = agent.states;
      for (std::size_t t = 2; t < s.size(); ++t) {
        CHECK(s[t].x - s[t - 1].x == doctest::Approx(s[1].x - s[0].x).epsilon(1e-9));
        CHECK(s[t].y - s[t - 1].y == doctest::Approx(s[1].y - s[0].y).epsilon(1e-9));
      }
    }
  }
  const auto a = gen_synthetic(Scenario::overtake, 3, 9);
  const auto b = gen_synthetic(Scenario::overtake, 3, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a[i].agents.size(); ++k) {
      for (std::size_t t = 0; t < 20; ++t) {
        CHECK(a[i].agents[k].states[t].x == b[i].agents[k].states[t].x);
        CHECK(a[i].agents[k].states[t].y == b[i].agents[k].states[t].y);
      }
    }
  }
  for (Scenario sc : {Scenario::crossing, Scenario::overtake, Scenario::parallel}) {
    for (const auto & scene : gen_synthetic(sc, 20, 4)) {
      CHECK(min_pairwise_distance(scene) > 0.3);
    }
    CHECK(parse_scenario(to_string(sc)) == sc);
  }
  CHECK_THROWS(parse_scenario("merge"));
  CHECK_THROWS(gen_synthetic(Scenario::crossing, 0, 1));
}
