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

#include "visionnet/run_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

namespace visionnet
{

namespace
{

std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string & key, const std::string & v)
{
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string & key, const std::string & v)
{
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

}  // namespace

void RunConfig::set(const std::string & key, const std::string & value)
{
  const auto sz = [&] { return static_cast<std::size_t>(to_uint(key, value)); };
  if (key == "grid_range") {
    grid_range = to_double(key, value);
  } else if (key == "height") {
    height = sz();
  } else if (key == "width") {
    width = sz();
  } else if (key == "t_obs") {
    t_obs = sz();
  } else if (key == "t_pred") {
    t_pred = sz();
  } else if (key == "window_stride") {
    window_stride = sz();
  } else if (key == "dt") {
    dt = to_double(key, value);
  } else if (key == "alpha") {
    alpha = to_double(key, value);
  } else if (key == "beta") {
    beta = to_double(key, value);
  } else if (key == "lr") {
    lr = to_double(key, value);
  } else if (key == "epochs") {
    epochs = sz();
  } else if (key == "seed") {
    seed = to_uint(key, value);
  } else if (key == "obstacle_width") {
    obstacle_width = to_double(key, value);
  } else if (key == "variant") {
    variant = value;
  } else if (key == "train_data") {
    train_data = value;
  } else if (key == "test_data") {
    test_data = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void RunConfig::validate() const
{
  if (t_obs >= t_pred) {
    throw ConfigError("config: t_obs must be smaller than t_pred");
  }
  if (!(lr > 0.0)) {
    throw ConfigError("config: lr must be positive");
  }
  if (epochs < 1) {
    throw ConfigError("config: epochs must be >= 1");
  }
  if (!(grid_range > 0.0) || !(dt > 0.0) || !(obstacle_width > 0.0)) {
    throw ConfigError("config: grid_range, dt and obstacle_width must be positive");
  }
  if (alpha < 0.0 || beta < 0.0) {
    throw ConfigError("config: alpha and beta must be non-negative");
  }
  if (window_stride < 1) {
    throw ConfigError("config: window_stride must be >= 1");
  }
  try {
    model_config().validate();
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
}

ModelConfig RunConfig::model_config() const
{
  ModelConfig m;
  m.height = height;
  m.width = width;
  m.t_obs = t_obs;
  m.t_pred = t_pred;
  m.seed = seed;
  try {
    m.variant = parse_variant(variant);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
  return m;
}

PipelineConfig RunConfig::pipeline_config() const
{
  PipelineConfig p;
  p.grid_range = grid_range;
  p.obstacle_width = obstacle_width;
  p.dt = dt;
  return p;
}

WindowConfig RunConfig::window_config() const
{
  return {t_obs, t_pred, window_stride, grid_range, height, width};
}

TrainConfig RunConfig::train_config() const
{
  TrainConfig t;
  t.epochs = epochs;
  t.adam.lr = lr;
  t.weights = {alpha, beta};
  t.seed = seed;
  return t;
}

RunConfig parse_run_config(std::istream & is, RunConfig base)
{
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path & path, RunConfig base)
{
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open config file " + path.string());
  }
  return parse_run_config(is, std::move(base));
}

}  // namespace visionnet
