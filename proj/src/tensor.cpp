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

#include "visionnet/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace visionnet
{

std::size_t shape_size(const Shape & shape)
{
  std::size_t n = 1;
  for (auto d : shape) {
    n *= d;
  }
  return n;
}

std::string shape_str(const Shape & shape)
{
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) {
      s += ", ";
    }
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

static void check_rank(const Shape & shape)
{
  if (shape.empty() || shape.size() > Tensor::kMaxRank) {
    throw std::invalid_argument("Tensor: rank must be 1..4, got shape " + shape_str(shape));
  }
}

Tensor::Tensor(Shape shape, double fill) : shape_(std::move(shape))
{
  check_rank(shape_);
  data_.assign(shape_size(shape_), fill);
}

Tensor::Tensor(Shape shape, std::vector<double> values)
: shape_(std::move(shape)), data_(std::move(values))
{
  check_rank(shape_);
  if (data_.size() != shape_size(shape_)) {
    throw std::invalid_argument(
      "Tensor: " + std::to_string(data_.size()) + " values do not fill shape " +
      shape_str(shape_));
  }
}

double Tensor::item() const
{
  if (data_.size() != 1) {
    throw std::invalid_argument("Tensor::item on shape " + shape_str(shape_));
  }
  return data_[0];
}

Tensor Tensor::reshaped(Shape shape) const
{
  if (shape_size(shape) != data_.size()) {
    throw std::invalid_argument(
      "cannot reshape " + shape_str(shape_) + " to " + shape_str(shape));
  }
  return Tensor(std::move(shape), data_);
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

}  // namespace visionnet
