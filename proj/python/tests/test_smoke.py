# Copyright 2026 The VisionNet Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import visionnet as vn


def test_grid_round_trip():
    g = vn.GridSpec.centered(0.0, 0.0, 10.0, 64, 64)
    assert g.height == 64 and g.width == 64
    assert g.row_pitch == pytest.approx(20.0 / 64)
    h, w = vn.coords_to_cell(g, 1.3, -2.7)
    x, y = vn.cell_to_coords(g, math.floor(h), math.floor(w))
    assert abs(x - 1.3) <= g.col_pitch and abs(y + 2.7) <= g.row_pitch


def test_rasterize_and_extract():
    g = vn.GridSpec.centered(0.0, 0.0, 10.0, 32, 32)
    pts = np.array([[0.0, 0.0], [1.0, 0.5], [2.0, 1.0]])
    grids = vn.rasterize(g, pts)
    assert grids.shape == (3, 32, 32)
    assert np.allclose(grids.sum(axis=(1, 2)), 1.0)
    back = vn.extract_trajectory(g, grids)
    assert np.abs(back - pts).max() <= g.row_pitch


def test_invalid_grid_raises():
    with pytest.raises(Exception):
        vn.GridSpec(0, 4, 1.0, 1.0)


def test_states_and_distance_law():
    pts = np.array([[0.0, 0.0], [0.4, 0.0], [0.9, 0.0], [1.5, 0.0]])
    states = vn.derive_states(pts, 0.4)
    assert states.shape == (4, 5)
    assert states[-1, 2] == pytest.approx(0.6 / 0.4)
    mean, var = vn.distance_distribution(1.0, 0.5, dt=0.4)
    assert mean == pytest.approx(1.0 * 0.4 + 0.5 * 0.5 * 0.16)
    mc_mean, mc_var = vn.mc_distance(1.0, 0.5, dt=0.4, n=200000, seed=3)
    assert abs(mc_mean - mean) <= 4 * math.sqrt(var / 200000)
    assert mc_var == pytest.approx(var, rel=0.05)


def test_static_gdas_matches_numpy():
    g = vn.GridSpec.centered(0.0, 0.0, 5.0, 8, 8)
    rng = np.random.default_rng(0)
    o = rng.uniform(size=(4, 8, 8))
    expected = 1.0 - np.prod(1.0 - o, axis=0)
    assert np.abs(vn.static_gdas(g, o) - expected).max() <= 1e-12


def test_driving_space_rendering():
    g = vn.GridSpec.centered(0.0, 0.0, 5.0, 32, 32)
    state = np.array([0.0, 0.0, 1.0, 0.0, 0.0])
    b = vn.render_bdis(g, state, mu=2.0)
    n = vn.render_ndis(g, state, mu=2.0)
    assert set(np.unique(b)) <= {0.0, 1.0} and b.sum() > 1
    assert 0.0 < n.max() <= 1.0


def test_metrics():
    a = np.array([[0.0, 0.0], [1.0, 0.0]])
    b = np.array([[0.0, 3.0], [1.0, 4.0]])
    assert vn.ade(a, b) == pytest.approx(3.5)
    assert vn.fde(a, b) == pytest.approx(4.0)


def test_synthetic_scenes():
    scenes = vn.gen_synthetic("crossing", n=2, seed=5)
    assert len(scenes) == 2
    agents = scenes[0]["agents"]
    assert len(agents) == 2
    assert all(s.shape[1] == 5 for s in agents.values())


@pytest.fixture(scope="module")
def small_data(tmp_path_factory):
    d = tmp_path_factory.mktemp("scenes")
    vn.write_synthetic("crossing", 2, 11, str(d))
    return d


def test_model_train_predict_save(small_data, tmp_path):
    cfg = {"height": "16", "width": "16", "epochs": "1", "seed": "1"}
    model = vn.Model(cfg)
    assert model.variant == "full"
    assert model.parameter_count > 0
    log = model.train(str(small_data), cfg)
    assert len(log) == 1 and all(math.isfinite(v) for v in log[0][1:])
    preds = model.predict(str(small_data))
    assert preds and preds[0]["points"].shape == (12, 2)
    assert preds[0]["ogm"].shape == (12, 16, 16)
    path = tmp_path / "m.vnet"
    model.save(str(path))
    again = vn.Model.load(str(path))
    assert np.array_equal(again.predict(str(small_data))[0]["ogm"], preds[0]["ogm"])
    scores = model.evaluate(str(small_data))
    assert {"Linear", "ConstVel", "VisionNet"} <= set(scores)


def test_bad_config_raises():
    with pytest.raises(ValueError):
        vn.Model({"epochs": "0"})
