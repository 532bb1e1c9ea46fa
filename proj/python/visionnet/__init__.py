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
"""Interaction-aware trajectory forecasting on occupancy grids."""

from visionnet._core import (
    ConfigError,
    GridSpec,
    Model,
    ade,
    cell_to_coords,
    coords_to_cell,
    derive_states,
    distance_distribution,
    extract_trajectory,
    fde,
    gen_synthetic,
    load_scenes,
    mc_distance,
    rasterize,
    render_bdis,
    render_ndis,
    static_gdas,
    write_synthetic,
)

__all__ = [
    "ConfigError",
    "GridSpec",
    "Model",
    "ade",
    "cell_to_coords",
    "coords_to_cell",
    "derive_states",
    "distance_distribution",
    "extract_trajectory",
    "fde",
    "gen_synthetic",
    "load_scenes",
    "mc_distance",
    "rasterize",
    "render_bdis",
    "render_ndis",
    "static_gdas",
    "write_synthetic",
]
