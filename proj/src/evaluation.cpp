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


#include "visionnet/evaluation.hpp"

#include "visionnet/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace visionnet
{

std::vector<Scene> load_scene_path(const std::filesystem::path & path, double dt)
{
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto & entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw std::runtime_error("no .txt annotation files in " + path.string());
    }
  } else {
    files.push_back(path);
  }
  std::vector<Scene> scenes;
  for (const auto & f : files) {
    Scene s = load_annotations(f, dt);
    s.name = f.stem().string();
    scenes.push_back(std::move(s));
  }
  return scenes;
}

std::vector<Sample> build_samples(std::span<const Scene> scenes, const WindowConfig & config)
{
  std::vector<Sample> out;
  for (const auto & scene : scenes) {
    for (auto & s : window_samples(scene, config)) {
      s.sample_id = out.size();
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace
{

OgmSequence points_to_ogm(const GridSpec & grid, std::span<const Point2> points)
{
  Trajectory traj;
  for (const auto & p : points) {
    traj.states.push_back({p.x, p.y, 0.0, 0.0, 0.0});
  }
  return rasterize_trajectory(grid, traj, 0, traj.states.size());
}

void accumulate(Scores & s, const OgmSequence & pred_ogm, const OgmSequence & gt_ogm,
                std::span<const Point2> pred, std::span<const Point2> gt)
{
  s.mse += metric_mse(pred_ogm, gt_ogm);
  s.ade += metric_ade(pred, gt);
  s.fde += metric_fde(pred, gt);
  ++s.samples;
}

}  // namespace

SetEvaluation evaluate_set(const std::string & name, std::span<const Sample> samples,
                           const ModelConfig & model, const PipelineConfig & pipeline,
                           const VisionNet * net, const ExternalPredictions * external)
{
  SetEvaluation ev;
  ev.name = name;
  ev.methods = {"Linear", "ConstVel"};
  if (net) {
    ev.methods.push_back("VisionNet");
  }
  if (external) {
    ev.methods.push_back("Predictions");
  }
  ev.scores.assign(ev.methods.size(), {});
  const std::size_t horizon = model.horizon();
  for (const auto & sample : samples) {
    const SampleInputs in = prepare_sample(sample, model, pipeline);
    const OgmSequence gt = to_ogm_sequence(in.gt, in.grid);
    const auto lin = baseline_linear(in.observed_world, horizon);
    const auto cv = baseline_const_velocity(in.observed_world, horizon);
    accumulate(ev.scores[0], points_to_ogm(in.grid, lin), gt, lin, in.future_world);
    accumulate(ev.scores[1], points_to_ogm(in.grid, cv), gt, cv, in.future_world);
    std::size_t k = 2;
    if (net) {
      const SamplePrediction p = predict_sample(*net, in);
      accumulate(ev.scores[k++], p.ogm, gt, p.points, in.future_world);
    }
    if (external) {
      const auto it = external->find(sample.sample_id);
      if (it == external->end() || it->second.size() != horizon) {
        throw std::runtime_error(
          "predictions lack " + std::to_string(horizon) + " points for sample " +
          std::to_string(sample.sample_id));
      }
      accumulate(ev.scores[k], points_to_ogm(in.grid, it->second), gt, it->second,
                 in.future_world);
    }
  }
  for (auto & s : ev.scores) {
    if (s.samples) {
      const double n = static_cast<double>(s.samples);
      s.mse /= n;
      s.ade /= n;
      s.fde /= n;
    }
  }
  return ev;
}

void write_metrics_table(std::ostream & os, const std::vector<SetEvaluation> & sets)
{
  if (sets.empty()) {
    return;
  }
  const auto & methods = sets.front().methods;
  for (const auto & s : sets) {
    if (s.methods != methods) {
      throw std::invalid_argument("write_metrics_table: sets score different methods");
    }
  }
  const auto number = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  os << "metric,set";
  for (const auto & m : methods) {
    os << ',' << m;
  }
  os << '\n';
  const std::pair<const char *, double Scores::*> metrics[] = {
    {"ADE", &Scores::ade}, {"FDE", &Scores::fde}, {"MSE", &Scores::mse}};
  for (const auto & [label, field] : metrics) {
    for (const auto & s : sets) {
      os << label << ',' << s.name;
      for (const auto & sc : s.scores) {
        os << ',' << number(sc.*field);
      }
      os << '\n';
    }
    os << "Average " << label << ",-";
    for (std::size_t m = 0; m < methods.size(); ++m) {
      double total = 0.0;
      for (const auto & s : sets) {
        total += s.scores[m].*field;
      }
      os << ',' << number(total / static_cast<double>(sets.size()));
    }
    os << '\n';
  }
}

ExternalPredictions read_trajectory_csv(std::istream & is)
{
  ExternalPredictions out;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::size_t, std::map<std::size_t, Point2>> by_step;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.rfind("sample_id", 0) == 0) {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::size_t sample = 0;
    long long agent = 0;
    std::size_t t = 0;
    Point2 p;
    if (!(fields >> sample >> agent >> t >> p.x >> p.y)) {
      throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) + ": malformed row");
    }
    by_step[sample][t] = p;
  }
  for (const auto & [sample, steps] : by_step) {
    auto & pts = out[sample];
    for (const auto & [t, p] : steps) {
      pts.push_back(p);
    }
  }
  return out;
}

}  // namespace visionnet
