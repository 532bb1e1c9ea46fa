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

#ifndef VISIONNET__MODEL_CONFIG_HPP_
#define VISIONNET__MODEL_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace visionnet
{

/// Which parts of the network are active. `baseline` is a plain encoder-decoder
/// over the target's own grids; `basic_spaces` drops the noise driving spaces.
enum class Variant { baseline, basic_spaces, full };

std::string to_string(Variant v);
Variant parse_variant(const std::string & s);

struct ModelConfig
{
  std::size_t height = 128;
  std::size_t width = 128;
  std::size_t t_obs = 8;
  std::size_t t_pred = 20;
  std::vector<std::size_t> encoder_widths{16, 32, 64};
  std::vector<std::size_t> decoder_widths{16, 32, 64};
  Variant variant = Variant::full;
  std::uint64_t seed = 0;

  std::size_t horizon() const { return t_pred - t_obs; }
  std::size_t state_features() const { return 5 * t_obs; }
  bool uses_interaction() const { return variant != Variant::baseline; }
  bool uses_noise_spaces() const { return variant == Variant::full; }

  /// Throws std::invalid_argument on inconsistent sizes.
  void validate() const;
};

}  // namespace visionnet

#endif  // VISIONNET__MODEL_CONFIG_HPP_
