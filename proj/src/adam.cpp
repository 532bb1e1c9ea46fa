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

#include "visionnet/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace visionnet
{

Adam::Adam(ParamList params, AdamConfig config) : config_(config)
{
  if (!(config_.lr > 0.0)) {
    throw std::invalid_argument("Adam: learning rate must be positive");
  }
  slots_.reserve(params.size());
  for (auto & p : params) {
    const std::size_t n = p.var.size();
    slots_.push_back({std::move(p), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});
  }
}

void Adam::step()
{
  for (const auto & s : slots_) {
    if (!s.param.var.has_grad()) {
      throw std::logic_error("Adam: parameter '" + s.param.name + "' has no gradient");
    }
  }
  ++t_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (auto & s : slots_) {
    Var var = s.param.var;
    auto value = var.mutable_value().values();
    const auto grad = var.grad().values();
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      s.m[i] = b1 * s.m[i] + (1.0 - b1) * g;
      s.v[i] = b2 * s.v[i] + (1.0 - b2) * g * g;
      const double m_hat = s.m[i] / c1;
      const double v_hat = s.v[i] / c2;
      value[i] -= config_.lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
  }
}

void Adam::zero_grad()
{
  for (auto & s : slots_) {
    s.param.var.zero_grad();
  }
}

}  // namespace visionnet
