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


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "visionnet/dspace.hpp"
#include "visionnet/evaluation.hpp"
#include "visionnet/metrics.hpp"
#include "visionnet/run_config.hpp"
#include "visionnet/visionnet.hpp"

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace visionnet;

namespace
{

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point2> to_points(const Array & a)
{
  if (a.ndim() != 2 || a.shape(1) != 2) {
    throw std::invalid_argument("expected an (n, 2) array of points");
  }
  std::vector<Point2> pts(static_cast<std::size_t>(a.shape(0)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    pts[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
  }
  return pts;
}

Array from_points(const std::vector<Point2> & pts)
{
  Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(static_cast<py::ssize_t>(i), 0) = pts[i].x;
    w(static_cast<py::ssize_t>(i), 1) = pts[i].y;
  }
  return out;
}

Array from_states(const std::vector<MotionState> & states)
{
  Array out({static_cast<py::ssize_t>(states.size()), py::ssize_t{5}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto & s = states[i];
    const auto k = static_cast<py::ssize_t>(i);
    w(k, 0) = s.x;
    w(k, 1) = s.y;
    w(k, 2) = s.v;
    w(k, 3) = s.a;
    w(k, 4) = s.theta;
  }
  return out;
}

Array from_grid(const std::vector<double> & values, std::size_t frames, const GridSpec & g)
{
  Array out({static_cast<py::ssize_t>(frames), static_cast<py::ssize_t>(g.height),
             static_cast<py::ssize_t>(g.width)});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

Array from_ogm(const Ogm & o)
{
  Array out({static_cast<py::ssize_t>(o.spec.height), static_cast<py::ssize_t>(o.spec.width)});
  std::copy(o.values.begin(), o.values.end(), out.mutable_data());
  return out;
}

OgmSequence to_sequence(const Array & a, const GridSpec & g)
{
  if (a.ndim() != 3 || static_cast<std::size_t>(a.shape(1)) != g.height ||
      static_cast<std::size_t>(a.shape(2)) != g.width) {
    throw std::invalid_argument("expected a (frames, height, width) array matching the grid");
  }
  OgmSequence seq(g, static_cast<std::size_t>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), seq.values.begin());
  return seq;
}

MotionState to_state(const Array & a)
{
  if (a.ndim() != 1 || a.shape(0) != 5) {
    throw std::invalid_argument("expected a state (x, y, v, a, theta)");
  }
  return {a.at(0), a.at(1), a.at(2), a.at(3), a.at(4)};
}

py::dict scene_dict(const Scene & s)
{
  py::dict agents;
  for (const auto & a : s.agents) {
    agents[py::int_(a.agent_id)] = from_states(a.states);
  }
  py::dict d;
  d["name"] = s.name;
  d["dt"] = s.dt;
  d["agents"] = agents;
  return d;
}

RunConfig config_from(const py::dict & overrides)
{
  RunConfig cfg;
  for (const auto & [k, v] : overrides) {
    cfg.set(py::str(k), py::str(v));
  }
  cfg.validate();
  return cfg;
}

py::dict scores_dict(const SetEvaluation & ev)
{
  py::dict out;
  for (std::size_t m = 0; m < ev.methods.size(); ++m) {
    py::dict s;
    s["mse"] = ev.scores[m].mse;
    s["ade"] = ev.scores[m].ade;
    s["fde"] = ev.scores[m].fde;
    s["samples"] = ev.scores[m].samples;
    out[py::str(ev.methods[m])] = s;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "VisionNet core bindings";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<GridSpec>(m, "GridSpec")
    .def(py::init([](std::size_t h, std::size_t w, double extent_rows, double extent_cols,
                     double ox, double oy) {
           GridSpec g{h, w, extent_rows, extent_cols, ox, oy};
           g.validate();
           return g;
         }),
         py::arg("height"), py::arg("width"), py::arg("extent_rows"), py::arg("extent_cols"),
         py::arg("origin_x") = 0.0, py::arg("origin_y") = 0.0)
    .def_static("centered",
                [](double cx, double cy, double half_side, std::size_t h, std::size_t w) {
                  return GridSpec::centered({cx, cy}, half_side, h, w);
                },
                py::arg("cx"), py::arg("cy"), py::arg("half_side"), py::arg("height"),
                py::arg("width"))
    .def_readonly("height", &GridSpec::height)
    .def_readonly("width", &GridSpec::width)
    .def_readonly("extent_rows", &GridSpec::extent_rows)
    .def_readonly("extent_cols", &GridSpec::extent_cols)
    .def_readonly("origin_x", &GridSpec::origin_x)
    .def_readonly("origin_y", &GridSpec::origin_y)
    .def_property_readonly("row_pitch", &GridSpec::row_pitch)
    .def_property_readonly("col_pitch", &GridSpec::col_pitch);

  m.def("coords_to_cell", [](const GridSpec & g, double x, double y) {
    const CellCoord c = coords_to_cell(g, {x, y});
    return py::make_tuple(c.h, c.w);
  }, py::arg("grid"), py::arg("x"), py::arg("y"));
  m.def("cell_to_coords", [](const GridSpec & g, std::int64_t h, std::int64_t w) {
    const Point2 p = cell_to_coords(g, h, w);
    return py::make_tuple(p.x, p.y);
  }, py::arg("grid"), py::arg("h"), py::arg("w"));
  m.def("rasterize", [](const GridSpec & g, const Array & points) {
    Trajectory traj;
    for (const auto & p : to_points(points)) {
      traj.states.push_back({p.x, p.y, 0.0, 0.0, 0.0});
    }
    const OgmSequence seq = rasterize_trajectory(g, traj, 0, traj.states.size());
    return from_grid(seq.values, seq.frames, g);
  }, py::arg("grid"), py::arg("points"), "One-hot grids (frames, H, W) for (n, 2) points.");
  m.def("extract_trajectory", [](const GridSpec & g, const Array & grids) {
    return from_points(extract_trajectory(to_sequence(grids, g)));
  }, py::arg("grid"), py::arg("grids"));

  m.def("derive_states", [](const Array & positions, double dt) {
    return from_states(derive_states(to_points(positions), dt).states);
  }, py::arg("positions"), py::arg("dt") = 0.4, "Columns x, y, v, a, theta.");
  m.def("distance_distribution",
        [](double v, double a, double dt, double q, double u, double s) {
          MotionState st;
          st.v = v;
          st.a = a;
          const auto d = distance_distribution(st, {q, 0.25, s, u, 0.25}, dt);
          return py::make_tuple(d.mean, d.variance);
        },
        py::arg("v"), py::arg("a"), py::arg("dt") = 0.4, py::arg("q") = 0.25,
        py::arg("u") = 0.25, py::arg("s") = 0.25, "Mean and variance of the one-step distance.");
  m.def("mc_distance",
        [](double v, double a, double dt, double q, double u, double s, std::size_t n,
           std::uint64_t seed) {
          MotionState st;
          st.v = v;
          st.a = a;
          const auto d = mc_distance_oracle(st, {q, 0.25, s, u, 0.25}, dt, n, seed);
          return py::make_tuple(d.mean, d.variance);
        },
        py::arg("v"), py::arg("a"), py::arg("dt") = 0.4, py::arg("q") = 0.25,
        py::arg("u") = 0.25, py::arg("s") = 0.25, py::arg("n") = 100000, py::arg("seed") = 0);

  m.def("render_bdis", [](const GridSpec & g, const Array & state, double mu, double width) {
    return from_ogm(render_bdis(g, to_state(state), mu, width));
  }, py::arg("grid"), py::arg("state"), py::arg("mu"), py::arg("width") = 0.6);
  m.def("render_ndis", [](const GridSpec & g, const Array & state, double mu, double variance) {
    return from_ogm(render_ndis(g, to_state(state), mu, variance));
  }, py::arg("grid"), py::arg("state"), py::arg("mu"), py::arg("variance") = 1.0);
  m.def("static_gdas", [](const GridSpec & g, const Array & grids) {
    const OgmSequence seq = to_sequence(grids, g);
    std::vector<Ogm> ogms;
    for (std::size_t t = 0; t < seq.frames; ++t) {
      Ogm o(g);
      std::copy(seq.frame(t).begin(), seq.frame(t).end(), o.values.begin());
      ogms.push_back(std::move(o));
    }
    return from_ogm(static_gdas_oracle(ogms));
  }, py::arg("grid"), py::arg("grids"), "1 - prod(1 - O) over the leading axis.");

  m.def("ade", [](const Array & pred, const Array & gt) {
    return metric_ade(to_points(pred), to_points(gt));
  }, py::arg("pred"), py::arg("gt"));
  m.def("fde", [](const Array & pred, const Array & gt) {
    return metric_fde(to_points(pred), to_points(gt));
  }, py::arg("pred"), py::arg("gt"));

  m.def("gen_synthetic", [](const std::string & scenario, std::size_t n, std::uint64_t seed,
                            std::size_t agents, double position_noise, double heading_spread) {
    SyntheticConfig sc;
    sc.agents = agents;
    sc.position_noise = position_noise;
    sc.heading_spread = heading_spread;
    py::list out;
    for (const auto & s : gen_synthetic(parse_scenario(scenario), n, seed, sc)) {
      out.append(scene_dict(s));
    }
    return out;
  }, py::arg("scenario") = "crossing", py::arg("n") = 1, py::arg("seed") = 0,
     py::arg("agents") = 2, py::arg("position_noise") = 0.0,
     py::arg("heading_spread") = SyntheticConfig{}.heading_spread);
  m.def("write_synthetic", [](const std::string & scenario, std::size_t n, std::uint64_t seed,
                              const std::filesystem::path & out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto & s : gen_synthetic(parse_scenario(scenario), n, seed)) {
      std::ofstream os(out_dir / (s.name + ".txt"));
      write_annotations(os, s);
    }
  }, py::arg("scenario"), py::arg("n"), py::arg("seed"), py::arg("out_dir"));
  m.def("load_scenes", [](const std::filesystem::path & path, double dt) {
    py::list out;
    for (const auto & s : load_scene_path(path, dt)) {
      out.append(scene_dict(s));
    }
    return out;
  }, py::arg("path"), py::arg("dt") = 0.4);

  py::class_<VisionNet>(m, "Model")
    .def(py::init([](const py::dict & config) {
           const RunConfig cfg = config_from(config);
           return VisionNet(cfg.model_config(), cfg.pipeline_config());
         }),
         py::arg("config") = py::dict(), "Fresh model; `config` holds run-config keys.")
    .def_static("load", &VisionNet::load, py::arg("path"))
    .def("save", &VisionNet::save, py::arg("path"))
    .def_property_readonly("variant", [](const VisionNet & n) {
      return to_string(n.config().variant);
    })
    .def_property_readonly("parameter_count", [](const VisionNet & n) {
      std::size_t total = 0;
      for (const auto & p : n.parameters()) {
        total += p.var.size();
      }
      return total;
    })
    .def("train", [](VisionNet & net, const std::filesystem::path & data, const py::dict & config) {
      const RunConfig cfg = config_from(config);
      const auto scenes = load_scene_path(data, net.pipeline().dt);
      const auto & mc = net.config();
      const auto samples = build_samples(
        scenes, {mc.t_obs, mc.t_pred, cfg.window_stride, net.pipeline().grid_range, mc.height,
                 mc.width});
      std::vector<EpochLog> logs;
      {
        py::gil_scoped_release release;
        logs = train(net, samples, cfg.train_config());
      }
      py::list log;
      for (const auto & e : logs) {
        log.append(py::make_tuple(e.epoch, e.recon, e.inter, e.total));
      }
      return log;
    }, py::arg("data"), py::arg("config") = py::dict(),
       "Trains in place; returns (epoch, L_r, L_d, L) per epoch.")
    .def("predict", [](const VisionNet & net, const std::filesystem::path & data) {
      const auto & mc = net.config();
      const auto samples = build_samples(
        load_scene_path(data, net.pipeline().dt),
        {mc.t_obs, mc.t_pred, 1, net.pipeline().grid_range, mc.height, mc.width});
      py::list out;
      for (const auto & s : samples) {
        const SampleInputs in = prepare_sample(s, mc, net.pipeline());
        const SamplePrediction p = predict_sample(net, in);
        py::dict d;
        d["sample_id"] = s.sample_id;
        d["agent_id"] = s.target_id;
        d["points"] = from_points(p.points);
        d["truth"] = from_points(in.future_world);
        d["ogm"] = from_grid(p.ogm.values, p.ogm.frames, p.ogm.spec);
        out.append(d);
      }
      return out;
    }, py::arg("data"))
    .def("evaluate", [](const VisionNet & net, const std::filesystem::path & data) {
      const auto & mc = net.config();
      const auto samples = build_samples(
        load_scene_path(data, net.pipeline().dt),
        {mc.t_obs, mc.t_pred, 1, net.pipeline().grid_range, mc.height, mc.width});
      return scores_dict(evaluate_set("data", samples, mc, net.pipeline(), &net));
    }, py::arg("data"), "MSE/ADE/FDE for the model and the Linear and ConstVel baselines.");
}
