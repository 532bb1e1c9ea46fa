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

#include "visionnet/data.hpp"

#include "visionnet/kinematics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace visionnet
{

namespace
{

struct Record
{
  double frame;
  double x;
  double y;
  std::size_t line;
};

bool parse_double(std::string_view token, double & out)
{
  const char * first = token.data();
  const char * last = token.data() + token.size();
  if (first != last && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::runtime_error parse_error(std::size_t line, const std::string & what)
{
  return std::runtime_error("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Bounds compute_bounds(const std::vector<Trajectory> & agents)
{
  Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (const auto & a : agents) {
    for (const auto & s : a.states) {
      any = true;
      b.min_x = std::min(b.min_x, s.x);
      b.min_y = std::min(b.min_y, s.y);
      b.max_x = std::max(b.max_x, s.x);
      b.max_y = std::max(b.max_y, s.y);
    }
  }
  return any ? b : Bounds{};
}

Scene parse_annotations(std::istream & is, double dt, ParseReport * report)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("parse_annotations: dt must be positive");
  }
  std::map<std::int64_t, std::vector<Record>> tracks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) {
      tokens.push_back(tok);
    }
    if (tokens.empty() || tokens[0][0] == '#') {
      continue;
    }
    if (tokens.size() != 4) {
      throw parse_error(line_no, "expected 4 fields 'frame agent_id x y', got " +
                                   std::to_string(tokens.size()));
    }
    double v[4];
    static const char * names[4] = {"frame", "agent_id", "x", "y"};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!parse_double(tokens[k], v[k])) {
        throw parse_error(line_no, std::string("non-numeric ") + names[k] + " '" + tokens[k] + "'");
      }
    }
    if (v[1] != std::floor(v[1])) {
      throw parse_error(line_no, "agent_id '" + tokens[1] + "' is not an integer");
    }
    tracks[static_cast<std::int64_t>(v[1])].push_back({v[0], v[2], v[3], line_no});
  }

  Scene scene;
  scene.dt = dt;
  if (report) {
    report->lines = line_no;
  }
  if (tracks.empty()) {
    return scene;
  }

  std::vector<double> frames;
  for (const auto & [id, recs] : tracks) {
    for (const auto & r : recs) {
      frames.push_back(r.frame);
    }
  }
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());
  const double origin = frames.front();
  double stride = 0.0;
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const double d = frames[i] - frames[i - 1];
    stride = stride == 0.0 ? d : std::min(stride, d);
  }
  if (stride == 0.0) {
    stride = 1.0;
  }
  scene.frame_origin = origin;
  scene.frame_stride = stride;

  const auto step_of = [&](const Record & r) {
    const double q = (r.frame - origin) / stride;
    const double k = std::round(q);
    if (std::abs(q - k) > 1e-6) {
      throw parse_error(r.line, "frame " + std::to_string(r.frame) +
                                  " breaks the frame stride " + std::to_string(stride));
    }
    return static_cast<std::int64_t>(k);
  };

  for (auto & [id, recs] : tracks) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const Record & a, const Record & b) { return a.frame < b.frame; });
    std::vector<Point2> pos;
    std::int64_t first = step_of(recs.front());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const std::int64_t k = step_of(recs[i]);
      if (i > 0) {
        const std::int64_t prev = first + static_cast<std::int64_t>(i) - 1;
        if (k == prev) {
          throw parse_error(recs[i].line, "duplicate frame for agent " + std::to_string(id));
        }
        if (k != prev + 1) {
          throw parse_error(recs[i].line, "inconsistent frame stride: agent " +
                                            std::to_string(id) + " skips from step " +
                                            std::to_string(prev) + " to " + std::to_string(k));
        }
      }
      pos.push_back({recs[i].x, recs[i].y});
    }
    if (pos.size() < 3) {
      if (report) {
        ++report->skipped_short_agents;
      }
      continue;
    }
    scene.agents.push_back(derive_states(pos, dt, id, first));
  }
  scene.bounds = compute_bounds(scene.agents);
  return scene;
}

Scene load_annotations(const std::filesystem::path & path, double dt, ParseReport * report)
{
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open annotation file " + path.string());
  }
  try {
    Scene scene = parse_annotations(is, dt, report);
    scene.name = path.stem().string();
    return scene;
  } catch (const std::runtime_error & e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_annotations(std::ostream & os, const Scene & scene)
{
  struct Row
  {
    std::int64_t step;
    std::int64_t id;
    double x;
    double y;
  };
  std::vector<Row> rows;
  for (const auto & a : scene.agents) {
    for (std::size_t i = 0; i < a.states.size(); ++i) {
      rows.push_back({a.t0 + static_cast<std::int64_t>(i), a.agent_id, a.states[i].x,
                      a.states[i].y});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row & a, const Row & b) {
    return a.step != b.step ? a.step < b.step : a.id < b.id;
  });
  // Round-trip precision for positions.
  os << std::setprecision(17);
  for (const auto & r : rows) {
    os << scene.frame_origin + scene.frame_stride * static_cast<double>(r.step) << ' ' << r.id
       << ' ' << r.x << ' ' << r.y << '\n';
  }
}

Point2 Sample::center() const
{
  if (!observed.empty() && !observed.front().states.empty()) {
    const auto & last = observed.front().states.back();
    return {last.x, last.y};
  }
  return {grid.origin_x + 0.5 * grid.extent_rows, grid.origin_y + 0.5 * grid.extent_cols};
}

std::vector<Sample> window_samples(
  const Scene & scene, const WindowConfig & config, WindowReport * report)
{
  if (config.stride < 1) {
    throw std::invalid_argument("window_samples: stride must be >= 1");
  }
  if (config.t_obs < 1 || config.t_pred <= config.t_obs) {
    throw std::invalid_argument("window_samples: need 1 <= t_obs < t_pred");
  }
  std::vector<Sample> samples;
  const auto t_obs = static_cast<std::int64_t>(config.t_obs);
  const auto t_pred = static_cast<std::int64_t>(config.t_pred);
  for (const auto & target : scene.agents) {
    if (static_cast<std::int64_t>(target.states.size()) < t_pred) {
      if (report) {
        ++report->skipped_agents;
      }
      continue;
    }
    for (std::int64_t s = target.t0; s + t_pred <= target.t_end();
         s += static_cast<std::int64_t>(config.stride)) {
      Sample sample;
      sample.sample_id = samples.size();
      sample.target_id = target.agent_id;
      sample.t_start = s;
      const auto & last = target.states[static_cast<std::size_t>(s + t_obs - 1 - target.t0)];
      sample.grid = GridSpec::centered({last.x, last.y}, config.grid_range, config.height,
                                       config.width);
      const auto window_of = [&](const Trajectory & agent) {
        AgentWindow w;
        w.agent_id = agent.agent_id;
        w.states.resize(config.t_obs);
        w.present.assign(config.t_obs, false);
        for (std::int64_t k = 0; k < t_obs; ++k) {
          const std::int64_t step = s + k;
          if (step >= agent.t0 && step < agent.t_end()) {
            w.states[static_cast<std::size_t>(k)] =
              agent.states[static_cast<std::size_t>(step - agent.t0)];
            w.present[static_cast<std::size_t>(k)] = true;
          }
        }
        return w;
      };
      sample.observed.push_back(window_of(target));
      for (const auto & other : scene.agents) {
        if (other.agent_id == target.agent_id) {
          continue;
        }
        AgentWindow w = window_of(other);
        if (std::find(w.present.begin(), w.present.end(), true) != w.present.end()) {
          sample.observed.push_back(std::move(w));
        }
      }
      const auto first_future = static_cast<std::size_t>(s + t_obs - target.t0);
      sample.future.assign(target.states.begin() + static_cast<std::ptrdiff_t>(first_future),
                           target.states.begin() +
                             static_cast<std::ptrdiff_t>(first_future + config.t_pred - config.t_obs));
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

Scenario parse_scenario(std::string_view name)
{
  if (name == "crossing") {
    return Scenario::crossing;
  }
  if (name == "overtake") {
    return Scenario::overtake;
  }
  if (name == "parallel") {
    return Scenario::parallel;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string to_string(Scenario s)
{
  switch (s) {
    case Scenario::crossing:
      return "crossing";
    case Scenario::overtake:
      return "overtake";
    case Scenario::parallel:
      return "parallel";
  }
  return "unknown";
}

namespace
{

struct Body
{
  Point2 p;
  Point2 v;
  Point2 pref;
};

Point2 rotate(Point2 p, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Initial layout in a canonical frame (main travel direction +x), before the
// global rotation. Agents are placed so that without avoidance they meet near
// the origin at `meet_time`.
std::vector<Body> layout(Scenario scenario, const SyntheticConfig & cfg, std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const double duration = static_cast<double>(cfg.frames - 1) * cfg.dt;
  std::vector<Body> bodies;
  for (std::size_t k = 0; k < cfg.agents; ++k) {
    const double meet_time = duration * uniform(0.35, 0.65);
    double speed = uniform(cfg.speed_min, cfg.speed_max);
    double heading = 0.0;
    Point2 meet{uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
    switch (scenario) {
      case Scenario::crossing:
        heading = (k % 2 == 0 ? 0.0 : 0.5 * std::numbers::pi) + uniform(-0.25, 0.25);
        if (k >= 2) {
          heading += std::numbers::pi;
        }
        break;
      case Scenario::overtake:
        // Even agents walk slowly, odd agents catch up from behind.
        speed = k % 2 == 0 ? uniform(0.6 * cfg.speed_min, 0.8 * cfg.speed_min)
                           : uniform(1.1 * cfg.speed_max, 1.3 * cfg.speed_max);
        heading = uniform(-0.1, 0.1);
        meet.y = uniform(-0.25, 0.25);
        break;
      case Scenario::parallel:
        heading = uniform(-0.1, 0.1);
        meet = {uniform(-0.3, 0.3), (static_cast<double>(k) - 0.5 * (cfg.agents - 1)) * 0.9};
        speed = uniform(cfg.speed_min, cfg.speed_max);
        break;
    }
    const Point2 vel{speed * std::cos(heading), speed * std::sin(heading)};
    Body b;
    b.p = {meet.x - vel.x * meet_time, meet.y - vel.y * meet_time};
    b.v = vel;
    b.pref = vel;
    bodies.push_back(b);
  }
  return bodies;
}

}  // namespace

std::vector<Scene> gen_synthetic(
  Scenario scenario, std::size_t n, std::uint64_t seed, const SyntheticConfig & cfg)
{
  if (n < 1) {
    throw std::invalid_argument("gen_synthetic: n must be >= 1");
  }
  if (cfg.frames < 3 || cfg.agents < 1 || !(cfg.dt > 0.0) || cfg.substeps < 1) {
    throw std::invalid_argument("gen_synthetic: need frames >= 3, agents >= 1, dt > 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Scene> scenes;
  scenes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Body> bodies = layout(scenario, cfg, rng);
    const double global = cfg.heading_spread * (2.0 * unit(rng) - 1.0);
    const Point2 shift{10.0 * (unit(rng) - 0.5), 10.0 * (unit(rng) - 0.5)};
    for (auto & b : bodies) {
      b.p = rotate(b.p, global);
      b.p = {b.p.x + shift.x, b.p.y + shift.y};
      b.v = rotate(b.v, global);
      b.pref = rotate(b.pref, global);
    }
    std::vector<std::vector<Point2>> tracks(bodies.size());
    const double h = cfg.dt / static_cast<double>(cfg.substeps);
    for (std::size_t f = 0; f < cfg.frames; ++f) {
      for (std::size_t k = 0; k < bodies.size(); ++k) {
        tracks[k].push_back(bodies[k].p);
      }
      if (f + 1 == cfg.frames) {
        break;
      }
      for (std::size_t sub = 0; sub < cfg.substeps; ++sub) {
        std::vector<Point2> acc(bodies.size());
        for (std::size_t k = 0; k < bodies.size(); ++k) {
          acc[k] = {(bodies[k].pref.x - bodies[k].v.x) / cfg.relaxation_time,
                    (bodies[k].pref.y - bodies[k].v.y) / cfg.relaxation_time};
          if (cfg.avoidance_gain == 0.0) {
            continue;
          }
          for (std::size_t j = 0; j < bodies.size(); ++j) {
            if (j == k) {
              continue;
            }
            const double dx = bodies[k].p.x - bodies[j].p.x;
            const double dy = bodies[k].p.y - bodies[j].p.y;
            const double d = std::max(std::hypot(dx, dy), 1e-6);
            const double mag =
              cfg.avoidance_gain * std::exp((cfg.contact_distance - d) / cfg.avoidance_range);
            acc[k].x += mag * dx / d;
            acc[k].y += mag * dy / d;
          }
        }
        for (std::size_t k = 0; k < bodies.size(); ++k) {
          bodies[k].v.x += h * acc[k].x;
          bodies[k].v.y += h * acc[k].y;
          bodies[k].p.x += h * bodies[k].v.x;
          bodies[k].p.y += h * bodies[k].v.y;
        }
      }
    }
    Scene scene;
    scene.name = to_string(scenario) + "_" + std::to_string(i);
    scene.dt = cfg.dt;
    scene.frame_stride = 10.0;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      if (cfg.position_noise > 0.0) {
        for (auto & p : tracks[k]) {
          p.x += cfg.position_noise * gauss(rng);
          p.y += cfg.position_noise * gauss(rng);
        }
      }
      scene.agents.push_back(derive_states(tracks[k], cfg.dt, static_cast<std::int64_t>(k), 0));
    }
    scene.bounds = compute_bounds(scene.agents);
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

double min_pairwise_distance(const Scene & scene)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < scene.agents.size(); ++j) {
      const auto & a = scene.agents[i];
      const auto & b = scene.agents[j];
      const std::int64_t lo = std::max(a.t0, b.t0);
      const std::int64_t hi = std::min(a.t_end(), b.t_end());
      for (std::int64_t t = lo; t < hi; ++t) {
        const auto & sa = a.states[static_cast<std::size_t>(t - a.t0)];
        const auto & sb = b.states[static_cast<std::size_t>(t - b.t0)];
        best = std::min(best, std::hypot(sa.x - sb.x, sa.y - sb.y));
      }
    }
  }
  return best;
}

}  // namespace visionnet
