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

#ifndef VISIONNET__SERIALIZE_HPP_
#define VISIONNET__SERIALIZE_HPP_

#include "visionnet/tensor.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace visionnet
{

struct NamedTensor
{
  std::string name;
  Tensor tensor;
};

/// VNET1 container, little-endian:
///   "VNET1" | u64 count | count x { u64 name_len | name | u64 rank | rank x u64 dim | f64 values }
void write_vnet(std::ostream & os, const std::vector<NamedTensor> & entries);
std::vector<NamedTensor> read_vnet(std::istream & is);

void save_vnet(const std::filesystem::path & path, const std::vector<NamedTensor> & entries);
std::vector<NamedTensor> load_vnet(const std::filesystem::path & path);

}  // namespace visionnet

#endif  // VISIONNET__SERIALIZE_HPP_
