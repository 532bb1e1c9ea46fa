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


#include "CLI11.hpp"
#include "visionnet/evaluation.hpp"
#include "visionnet/io.hpp"
#include "visionnet/run_config.hpp"
#include "visionnet/visionnet.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace visionnet;

namespace
{

struct CommonOptions
{
  std::string config;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = ".";
};

// Config file first, then `--set key=value` pairs, then --seed.
RunConfig resolve_config(const CommonOptions & opt)
{
  RunConfig cfg;
  if (!opt.config.empty()) {
    cfg = load_run_config(opt.config);
  }
  for (const auto & kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opt.seed_given) {
    cfg.seed = opt.seed;
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App & cmd, CommonOptions & opt)
{
  cmd.add_option("--config", opt.config, "key = value configuration file");
  cmd.add_option("--set", opt.overrides, "override one configuration key (key=value)");
  cmd.add_option("--seed", opt.seed, "random seed")->each([&opt](const std::string &) {
    opt.seed_given = true;
  });
  cmd.add_option("--out", opt.out, "output directory");
}

std::ofstream open_output(const fs::path & path)
{
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return os;
}

std::vector<Sample> load_samples(const std::string & path, const WindowConfig & window, double dt)
{
  if (path.empty()) {
    throw ConfigError("no dataset given (use --data or train_data / test_data)");
  }
  const auto scenes = load_scene_path(path, dt);
  auto samples = build_samples(scenes, window);
  if (samples.empty()) {
    throw std::runtime_error("no agent in " + path + " is long enough for one window");
  }
  return samples;
}

WindowConfig model_window(const VisionNet & net, std::size_t stride)
{
  const auto & m = net.config();
  return {m.t_obs, m.t_pred, stride, net.pipeline().grid_range, m.height, m.width};
}

int cmd_gen(const CommonOptions & opt, const std::string & scenario, std::size_t scenes,
            const SyntheticConfig & synth)
{
  const RunConfig cfg = resolve_config(opt);
  SyntheticConfig sc = synth;
  sc.dt = cfg.dt;
  const Scenario kind = [&] {
    try {
      return parse_scenario(scenario);
    } catch (const std::invalid_argument & e) {
      throw ConfigError(e.what());
    }
  }();
  if (scenes < 1) {
    throw ConfigError("--scenes must be >= 1");
  }
  fs::create_directories(opt.out);
  const auto generated = gen_synthetic(kind, scenes, cfg.seed, sc);
  for (const auto & scene : generated) {
    auto os = open_output(fs::path(opt.out) / (scene.name + ".txt"));
    write_annotations(os, scene);
  }
  std::cout << "wrote " << generated.size() << " " << scenario << " scenes to " << opt.out << "\n";
  return 0;
}

int cmd_train(const CommonOptions & opt, const std::string & data)
{
  const RunConfig cfg = resolve_config(opt);
  const std::string path = data.empty() ? cfg.train_data : data;
  const auto samples = load_samples(path, cfg.window_config(), cfg.dt);
  VisionNet net(cfg.model_config(), cfg.pipeline_config());
  fs::create_directories(opt.out);
  auto log = open_output(fs::path(opt.out) / "loss.csv");
  log << "epoch,L_r,L_d,L\n";
  char line[160];
  train(net, samples, cfg.train_config(), [&](const EpochLog & e) {
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n", e.epoch, e.recon, e.inter,
                  e.total);
    log << line << std::flush;
    std::cout << "epoch " << e.epoch << " L_r " << e.recon << " L_d " << e.inter << " L "
              << e.total << std::endl;
  });
  net.save(fs::path(opt.out) / "model.vnet");
  std::cout << "trained on " << samples.size() << " samples; model written to "
            << (fs::path(opt.out) / "model.vnet").string() << "\n";
  return 0;
}

int cmd_predict(const CommonOptions & opt, const std::string & model_path,
                const std::string & data, bool heatmaps)
{
  const RunConfig cfg = resolve_config(opt);
  if (!fs::exists(model_path)) {
    throw std::runtime_error("model file not found: " + model_path);
  }
  const VisionNet net = VisionNet::load(model_path);
  const std::string path = data.empty() ? cfg.test_data : data;
  const auto samples =
    load_samples(path, model_window(net, cfg.window_stride), net.pipeline().dt);
  fs::create_directories(opt.out);
  std::vector<TrajectoryRow> pred_rows;
  std::vector<TrajectoryRow> truth_rows;
  for (const auto & sample : samples) {
    const SampleInputs in = prepare_sample(sample, net.config(), net.pipeline());
    const SamplePrediction p = predict_sample(net, in);
    for (std::size_t t = 0; t < p.points.size(); ++t) {
      pred_rows.push_back({sample.sample_id, sample.target_id, t, p.points[t].x, p.points[t].y});
      truth_rows.push_back(
        {sample.sample_id, sample.target_id, t, in.future_world[t].x, in.future_world[t].y});
    }
    if (heatmaps) {
      char dir[64];
      std::snprintf(dir, sizeof(dir), "sample_%05zu", sample.sample_id);
      const fs::path base = fs::path(opt.out) / "heatmaps" / dir;
      fs::create_directories(base);
      const auto export_stream = [&](const OgmSequence & seq, const char * stem) {
        for (std::size_t t = 0; t < seq.frames; ++t) {
          char file[64];
          std::snprintf(file, sizeof(file), "%s_t%02zu.pgm", stem, t);
          save_pgm(base / file, seq.frame(t), seq.spec.height, seq.spec.width);
        }
      };
      export_stream(p.ogm, "ogm");
      if (p.masked_gdas.frames) {
        export_stream(p.masked_gdas, "masked_gdas");
      }
    }
  }
  auto pred_os = open_output(fs::path(opt.out) / "predictions.csv");
  write_trajectory_csv(pred_os, pred_rows);
  auto truth_os = open_output(fs::path(opt.out) / "truth.csv");
  write_trajectory_csv(truth_os, truth_rows);
  std::cout << "predicted " << samples.size() << " samples into " << opt.out << "\n";
  return 0;
}

int cmd_eval(const CommonOptions & opt, const std::string & model_path,
             std::vector<std::string> data, const std::string & predictions)
{
  const RunConfig cfg = resolve_config(opt);
  if (model_path.empty() && predictions.empty()) {
    throw ConfigError("eval needs --model or --predictions");
  }
  if (data.empty() && !cfg.test_data.empty()) {
    data.push_back(cfg.test_data);
  }
  if (data.empty()) {
    throw ConfigError("no dataset given (use --data or test_data)");
  }
  if (!predictions.empty() && data.size() != 1) {
    throw ConfigError("--predictions applies to exactly one --data set");
  }
  std::optional<VisionNet> net;
  if (!model_path.empty()) {
    if (!fs::exists(model_path)) {
      throw std::runtime_error("model file not found: " + model_path);
    }
    net = VisionNet::load(model_path);
  }
  const ModelConfig model = net ? net->config() : cfg.model_config();
  const PipelineConfig pipeline = net ? net->pipeline() : cfg.pipeline_config();
  const WindowConfig window = net ? model_window(*net, cfg.window_stride) : cfg.window_config();
  ExternalPredictions external;
  if (!predictions.empty()) {
    std::ifstream is(predictions);
    if (!is) {
      throw std::runtime_error("cannot open predictions " + predictions);
    }
    external = read_trajectory_csv(is);
  }
  std::vector<SetEvaluation> sets;
  for (const auto & d : data) {
    const auto samples = load_samples(d, window, pipeline.dt);
    sets.push_back(evaluate_set(fs::path(d).stem().string(), samples, model, pipeline,
                                net ? &*net : nullptr,
                                predictions.empty() ? nullptr : &external));
  }
  fs::create_directories(opt.out);
  auto os = open_output(fs::path(opt.out) / "metrics.csv");
  write_metrics_table(os, sets);
  write_metrics_table(std::cout, sets);
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"VisionNet interaction-aware trajectory forecasting"};
  app.require_subcommand(1);

  CommonOptions gen_opt;
  std::string scenario = "crossing";
  std::size_t scenes = 10;
  SyntheticConfig synth;
  auto * gen = app.add_subcommand("gen", "generate synthetic interacting scenes");
  add_common(*gen, gen_opt);
  gen->add_option("--scenario", scenario, "crossing, overtake or parallel");
  gen->add_option("--scenes", scenes, "number of scenes");
  gen->add_option("--frames", synth.frames, "frames per scene");
  gen->add_option("--agents", synth.agents, "agents per scene");
  gen->add_option("--avoidance-gain", synth.avoidance_gain, "repulsion at contact, m/s^2");
  gen->add_option("--heading-spread", synth.heading_spread, "global heading range, radians");
  gen->add_option("--position-noise", synth.position_noise, "recorded position noise, meters");

  CommonOptions train_opt;
  std::string train_data;
  auto * train_cmd = app.add_subcommand("train", "train a model and write model.vnet and loss.csv");
  add_common(*train_cmd, train_opt);
  train_cmd->add_option("--data", train_data, "annotation file or directory");

  CommonOptions predict_opt;
  std::string predict_model;
  std::string predict_data;
  bool heatmaps = false;
  auto * predict = app.add_subcommand("predict", "forecast trajectories and export heatmaps");
  add_common(*predict, predict_opt);
  predict->add_option("--model", predict_model, "VNET1 model file")->required();
  predict->add_option("--data", predict_data, "annotation file or directory");
  predict->add_flag("--heatmaps", heatmaps, "write PGM grids per sample and step");

  CommonOptions eval_opt;
  std::string eval_model;
  std::vector<std::string> eval_data;
  std::string eval_predictions;
  auto * eval = app.add_subcommand("eval", "score the model and baselines per dataset");
  add_common(*eval, eval_opt);
  eval->add_option("--model", eval_model, "VNET1 model file");
  eval->add_option("--data", eval_data, "annotation file or directory, one per set");
  eval->add_option("--predictions", eval_predictions, "trajectory CSV to score as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      return cmd_gen(gen_opt, scenario, scenes, synth);
    }
    if (*train_cmd) {
      return cmd_train(train_opt, train_data);
    }
    if (*predict) {
      return cmd_predict(predict_opt, predict_model, predict_data, heatmaps);
    }
    return cmd_eval(eval_opt, eval_model, eval_data, eval_predictions);
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
