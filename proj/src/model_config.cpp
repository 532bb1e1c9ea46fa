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

#include "visionnet/model_config.hpp"

#include <stdexcept>

namespace visionnet
{

std::string to_string(Variant v)
{
  switch (v) {
    case Variant::baseline:
      return "baseline";
    case Variant::basic_spaces:
      return "basic_spaces";
    case Variant::full:
      return "full";
  }
  return "unknown";
}

Variant parse_variant(const std::string & s)
{
  if (s == "baseline") {
    return Variant::baseline;
  }
  if (s == "basic_spaces" || s == "v1") {
    return Variant::basic_spaces;
  }
  if (s == "full") {
    return Variant::full;
  }
  throw std::invalid_argument("unknown model variant '" + s + "'");
}

void ModelConfig::validate() const
{
  if (height == 0 || width == 0 || height % 8 != 0 || width % 8 != 0) {
    throw std::invalid_argument("ModelConfig: grid height and width must be positive multiples of 8");
  }
  if (t_obs < 2 || t_obs % 2 != 0) {
    throw std::invalid_argument("ModelConfig: t_obs must be even and >= 2");
  }
  if (t_pred <= t_obs) {
    throw std::invalid_argument("ModelConfig: t_obs must be smaller than t_pred");
  }
  if (encoder_widths.size() != 3 || decoder_widths.size() != 3) {
    throw std::invalid_argument("ModelConfig: encoder and decoder need three widths each");
  }
  for (auto w : encoder_widths) {
    if (w == 0) {
      throw std::invalid_argument("ModelConfig: zero encoder width");
    }
  }
  for (auto w : decoder_widths) {
    if (w == 0) {
      throw std::invalid_argument("ModelConfig: zero decoder width");
    }
  }
}

}  // namespace visionnet
