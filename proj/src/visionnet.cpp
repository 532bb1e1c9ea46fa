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

#include "visionnet/visionnet.hpp"

#include "visionnet/dspace.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace visionnet
{

Tensor state_features(const AgentWindow & window, Point2 center)
{
  const std::size_t t_obs = window.states.size();
  Tensor f({1, 5 * t_obs}, 0.0);
  for (std::size_t t = 0; t < t_obs; ++t) {
    if (!window.present[t]) {
      continue;
    }
    const auto & s = window.states[t];
    f[5 * t + 0] = s.x - center.x;
    f[5 * t + 1] = s.y - center.y;
    f[5 * t + 2] = s.v;
    f[5 * t + 3] = s.a;
    f[5 * t + 4] = s.theta;
  }
  return f;
}

SampleInputs prepare_sample(const Sample & sample, const ModelConfig & model,
                            const PipelineConfig & pipeline)
{
  if (sample.observed.empty()) {
    throw std::invalid_argument("prepare_sample: sample has no target window");
  }
  const GridSpec & grid = sample.grid;
  if (grid.height != model.height || grid.width != model.width) {
    throw std::invalid_argument("prepare_sample: sample grid does not match the model grid");
  }
  const AgentWindow & target = sample.observed.front();
  if (target.states.size() != model.t_obs || sample.future.size() != model.horizon()) {
    throw std::invalid_argument("prepare_sample: sample horizon does not match the model");
  }
  SampleInputs in;
  in.grid = grid;
  in.center = sample.center();
  const Shape obs_shape{1, model.t_obs, model.height, model.width};
  const Shape fut_shape{1, model.horizon(), model.height, model.width};

  in.observed = Tensor(obs_shape, 0.0);
  for (std::size_t t = 0; t < model.t_obs; ++t) {
    const auto & s = target.states[t];
    in.observed_world.push_back({s.x, s.y});
    CellIndex c;
    if (target.present[t] && locate_cell(grid, {s.x, s.y}, c)) {
      in.observed[(t * grid.height + static_cast<std::size_t>(c.h)) * grid.width +
                  static_cast<std::size_t>(c.w)] = 1.0;
    }
  }

  in.gt = Tensor(fut_shape, 0.0);
  for (std::size_t t = 0; t < model.horizon(); ++t) {
    const auto & s = sample.future[t];
    in.future_world.push_back({s.x, s.y});
    in.future_rel.push_back({s.x - in.center.x, s.y - in.center.y});
    CellIndex c;
    if (locate_cell(grid, {s.x, s.y}, c)) {
      in.gt[(t * grid.height + static_cast<std::size_t>(c.h)) * grid.width +
            static_cast<std::size_t>(c.w)] = 1.0;
    }
  }

  for (const auto & window : sample.observed) {
    in.features.push_back(state_features(window, in.center));
    std::vector<double> mu(window.states.size());
    for (std::size_t t = 0; t < mu.size(); ++t) {
      mu[t] = distance_distribution(window.states[t], pipeline.noise, pipeline.dt).mean;
    }
    const DrivingSpaces ds =
      build_driving_spaces(grid, window.states, mu, window.present, pipeline.obstacle_width);
    in.db.emplace_back(obs_shape, ds.db.values);
    in.dn.emplace_back(obs_shape, ds.dn.values);
  }
  return in;
}

VisionNet::VisionNet(ModelConfig config, PipelineConfig pipeline)
: config_(std::move(config)), pipeline_(pipeline)
{
  config_.validate();
  Initializer init(config_.seed);
  if (config_.uses_interaction()) {
    interaction = InteractionModel(config_, init);
  }
  prediction = PredictionModel(config_, init);
}

ForwardResult VisionNet::forward(const SampleInputs & in) const
{
  ForwardResult out;
  const Var observed = constant(in.observed);
  if (!config_.uses_interaction()) {
    out.prediction = prediction.predict(observed, Var(), Var());
    return out;
  }
  for (std::size_t i = 0; i < in.features.size(); ++i) {
    out.driving_spaces.push_back(interaction.dis_head(
      constant(in.features[i]), constant(in.db[i]), constant(in.dn[i])));
  }
  out.gdas = interaction.fuse_and_predict(out.driving_spaces);
  const auto complement = [](const Tensor & t) {
    Tensor c = t;
    for (auto & v : c.values()) {
      v = 1.0 - v;
    }
    return constant(std::move(c));
  };
  out.mask = prediction.ablation_mask(
    complement(in.db.front()), config_.uses_noise_spaces() ? complement(in.dn.front()) : Var());
  out.masked_gdas = mul(out.mask, out.gdas);
  out.prediction = prediction.predict(observed, out.gdas, out.mask);
  return out;
}

LossTerms VisionNet::losses(
  const ForwardResult & out, const SampleInputs & in, const LossWeights & weights) const
{
  LossTerms terms;
  terms.recon = recon_loss(out.prediction, in.gt, in.future_rel, pipeline_.grid_range);
  terms.inter = out.masked_gdas ? interactive_loss(in.gt, out.masked_gdas)
                                : constant(Tensor::scalar(0.0));
  terms.total = total_loss(terms.recon, terms.inter, weights);
  return terms;
}

ParamList VisionNet::parameters() const
{
  ParamList params;
  if (config_.uses_interaction()) {
    interaction.collect(params);
  }
  prediction.collect(params);
  return params;
}

std::vector<NamedTensor> VisionNet::state() const
{
  const auto d = [](auto v) { return static_cast<double>(v); };
  std::vector<NamedTensor> entries;
  entries.push_back(
    {"meta.model",
     Tensor({12}, {d(config_.height), d(config_.width), d(config_.t_obs), d(config_.t_pred),
                   d(config_.encoder_widths[0]), d(config_.encoder_widths[1]),
                   d(config_.encoder_widths[2]), d(config_.decoder_widths[0]),
                   d(config_.decoder_widths[1]), d(config_.decoder_widths[2]),
                   d(static_cast<int>(config_.variant)), d(config_.seed)})});
  const auto & n = pipeline_.noise;
  entries.push_back(
    {"meta.pipeline",
     Tensor({8}, {pipeline_.grid_range, pipeline_.obstacle_width, pipeline_.dt, n.process_accel,
                  n.process_orient, n.meas_accel, n.meas_speed, n.meas_orient})});
  for (const auto & p : parameters()) {
    entries.push_back({p.name, p.var.value()});
  }
  return entries;
}

void VisionNet::save(const std::filesystem::path & path) const { save_vnet(path, state()); }

VisionNet VisionNet::from_state(const std::vector<NamedTensor> & entries)
{
  if (entries.size() < 2 || entries[0].name != "meta.model" || entries[1].name != "meta.pipeline" ||
      entries[0].tensor.size() != 12 || entries[1].tensor.size() != 8) {
    throw std::runtime_error("model file lacks metadata entries");
  }
  const Tensor & m = entries[0].tensor;
  const auto u = [&](std::size_t i) { return static_cast<std::size_t>(m[i]); };
  ModelConfig config;
  config.height = u(0);
  config.width = u(1);
  config.t_obs = u(2);
  config.t_pred = u(3);
  config.encoder_widths = {u(4), u(5), u(6)};
  config.decoder_widths = {u(7), u(8), u(9)};
  const auto variant = u(10);
  if (variant > static_cast<std::size_t>(Variant::full)) {
    throw std::runtime_error("model file has an unknown variant");
  }
  config.variant = static_cast<Variant>(variant);
  config.seed = static_cast<std::uint64_t>(m[11]);
  const Tensor & p = entries[1].tensor;
  PipelineConfig pipeline;
  pipeline.grid_range = p[0];
  pipeline.obstacle_width = p[1];
  pipeline.dt = p[2];
  pipeline.noise = {p[3], p[4], p[5], p[6], p[7]};

  VisionNet net(config, pipeline);
  ParamList params = net.parameters();
  if (entries.size() != params.size() + 2) {
    throw std::runtime_error(
      "model file holds " + std::to_string(entries.size() - 2) + " parameters, architecture needs " +
      std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const NamedTensor & e = entries[i + 2];
    if (e.name != params[i].name || e.tensor.shape() != params[i].var.shape()) {
      throw std::runtime_error(
        "model file entry '" + e.name + "' " + shape_str(e.tensor.shape()) + " does not match '" +
        params[i].name + "' " + shape_str(params[i].var.shape()));
    }
    params[i].var.mutable_value() = e.tensor;
  }
  return net;
}

VisionNet VisionNet::load(const std::filesystem::path & path)
{
  return from_state(load_vnet(path));
}

void TrainConfig::validate() const
{
  if (epochs < 1) {
    throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  }
  if (!(adam.lr > 0.0)) {
    throw std::invalid_argument("TrainConfig: learning rate must be positive");
  }
  weights.validate();
}

std::vector<EpochLog> train(VisionNet & net, std::span<const Sample> samples,
                            const TrainConfig & config,
                            const std::function<void(const EpochLog &)> & on_epoch)
{
  config.validate();
  if (samples.empty()) {
    throw std::invalid_argument("train: no samples");
  }
  Adam adam(net.parameters(), config.adam);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);
  std::vector<EpochLog> logs;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
    }
    EpochLog log{epoch, 0.0, 0.0, 0.0};
    for (std::size_t idx : order) {
      const SampleInputs in = prepare_sample(samples[idx], net.config(), net.pipeline());
      const ForwardResult out = net.forward(in);
      const LossTerms terms = net.losses(out, in, config.weights);
      backward(terms.total);
      adam.step();
      adam.zero_grad();
      log.recon += terms.recon.item();
      log.inter += terms.inter.item();
      log.total += terms.total.item();
    }
    const double n = static_cast<double>(samples.size());
    log.recon /= n;
    log.inter /= n;
    log.total /= n;
    logs.push_back(log);
    if (on_epoch) {
      on_epoch(log);
    }
  }
  return logs;
}

OgmSequence to_ogm_sequence(const Tensor & t, const GridSpec & spec)
{
  if (t.size() % spec.cells() != 0) {
    throw std::invalid_argument("to_ogm_sequence: tensor size is not a whole number of frames");
  }
  OgmSequence seq(spec, t.size() / spec.cells());
  std::copy(t.values().begin(), t.values().end(), seq.values.begin());
  return seq;
}

SamplePrediction predict_sample(const VisionNet & net, const SampleInputs & in)
{
  const ForwardResult out = net.forward(in);
  SamplePrediction result;
  result.ogm = to_ogm_sequence(out.prediction.value(), in.grid);
  if (out.masked_gdas) {
    result.masked_gdas = to_ogm_sequence(out.masked_gdas.value(), in.grid);
  }
  result.points = extract_trajectory(result.ogm);
  return result;
}

double energy_at_truth(const OgmSequence & masked_gdas, const SampleInputs & in)
{
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t t = 0; t < in.future_world.size() && t < masked_gdas.frames; ++t) {
    CellIndex c;
    if (locate_cell(in.grid, in.future_world[t], c)) {
      total += masked_gdas.frame(t)[static_cast<std::size_t>(c.h) * in.grid.width +
                                    static_cast<std::size_t>(c.w)];
      ++count;
    }
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

}  // namespace visionnet
