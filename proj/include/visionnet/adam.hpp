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

#ifndef VISIONNET__ADAM_HPP_
#define VISIONNET__ADAM_HPP_

#include "visionnet/layers.hpp"

#include <cstdint>
#include <vector>

namespace visionnet
{

struct AdamConfig
{
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-12;  // per-cell normalized losses give gradients near 1e-10
};

/// Bias-corrected Adam over a fixed parameter list.
class Adam
{
public:
  Adam(ParamList params, AdamConfig config);

  /// Applies one update. Throws std::logic_error when a parameter has no gradient.
  void step();
  void zero_grad();

  std::uint64_t step_count() const { return t_; }
  const AdamConfig & config() const { return config_; }

private:
  struct Slot
  {
    NamedParam param;
    std::vector<double> m;
    std::vector<double> v;
  };
  std::vector<Slot> slots_;
  AdamConfig config_;
  std::uint64_t t_ = 0;
};

}  // namespace visionnet

#endif  // VISIONNET__ADAM_HPP_
