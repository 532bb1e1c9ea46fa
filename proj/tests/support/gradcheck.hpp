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


#ifndef VISIONNET_TESTS__GRADCHECK_HPP_
#define VISIONNET_TESTS__GRADCHECK_HPP_

#include "visionnet/autograd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace visionnet::testing
{

struct GradCheckResult
{
  double max_rel_error = 0.0;
  double pooled_rel_error = 0.0;  // same measure over all probed entries at once
  std::string worst;
  std::size_t checked = 0;
};

/// Central finite differences against reverse mode for every leaf in `leaves`.
/// `loss` must rebuild the graph from the leaves on each call. At most
/// `max_entries` entries per leaf are probed, chosen with `seed`. The error
/// of a leaf is ||analytic - numeric|| / max(||analytic||, ||numeric||) over
/// the probed entries; leaves whose gradients are both below `zero_floor`
/// in norm count as exact.
inline GradCheckResult grad_check(const std::function<Var()> & loss, std::vector<Var> leaves,
                                  const std::vector<std::string> & names, double step = 1e-5,
                                  std::size_t max_entries = 0, std::uint64_t seed = 0,
                                  double zero_floor = 1e-10)
{
  for (auto & leaf_var : leaves) {
    leaf_var.zero_grad();
  }
  backward(loss());
  std::vector<Tensor> analytic;
  for (const auto & leaf_var : leaves) {
    analytic.push_back(leaf_var.has_grad() ? leaf_var.grad() : Tensor(leaf_var.shape(), 0.0));
  }
  std::mt19937_64 rng(seed);
  GradCheckResult result;
  double pooled_diff2 = 0.0;
  double pooled_a2 = 0.0;
  double pooled_n2 = 0.0;
  for (std::size_t p = 0; p < leaves.size(); ++p) {
    Tensor & value = leaves[p].mutable_value();
    std::vector<std::size_t> idx(value.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (max_entries && idx.size() > max_entries) {
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(max_entries);
    }
    double diff2 = 0.0;
    double a2 = 0.0;
    double n2 = 0.0;
    for (std::size_t i : idx) {
      const double saved = value[i];
      value[i] = saved + step;
      const double up = loss().item();
      value[i] = saved - step;
      const double down = loss().item();
      value[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic[p][i];
      diff2 += (a - numeric) * (a - numeric);
      a2 += a * a;
      n2 += numeric * numeric;
      ++result.checked;
    }
    pooled_diff2 += diff2;
    pooled_a2 += a2;
    pooled_n2 += n2;
    const double denom = std::max(std::sqrt(a2), std::sqrt(n2));
    const double rel = denom < zero_floor ? 0.0 : std::sqrt(diff2) / denom;
    if (rel > result.max_rel_error || std::isnan(rel)) {
      result.max_rel_error = std::isnan(rel) ? INFINITY : rel;
      result.worst = p < names.size() ? names[p] : std::to_string(p);
    }
  }
  const double pooled = std::max(std::sqrt(pooled_a2), std::sqrt(pooled_n2));
  result.pooled_rel_error = pooled < zero_floor ? 0.0 : std::sqrt(pooled_diff2) / pooled;
  if (std::isnan(result.pooled_rel_error)) {
    result.pooled_rel_error = INFINITY;
  }
  return result;
}

/// Uniform random tensor in [lo, hi).
inline Tensor random_tensor(Shape shape, std::mt19937_64 & rng, double lo = -1.0, double hi = 1.0)
{
  std::uniform_real_distribution<double> dist(lo, hi);
  Tensor t(std::move(shape));
  for (auto & v : t.values()) {
    v = dist(rng);
  }
  return t;
}

}  // namespace visionnet::testing

#endif  // VISIONNET_TESTS__GRADCHECK_HPP_
