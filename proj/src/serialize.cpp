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

#include "visionnet/serialize.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace visionnet
{

namespace
{

constexpr std::array<char, 5> kMagic{'V', 'N', 'E', 'T', '1'};
constexpr std::uint64_t kMaxNameLength = 1u << 16;

void put_u64(std::ostream & os, std::uint64_t v)
{
  std::array<char, 8> bytes;
  for (std::size_t i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  }
  os.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream & is)
{
  std::array<unsigned char, 8> bytes;
  is.read(reinterpret_cast<char *>(bytes.data()), bytes.size());
  if (!is) {
    throw std::runtime_error("VNET1: truncated file");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return v;
}

}  // namespace

void write_vnet(std::ostream & os, const std::vector<NamedTensor> & entries)
{
  os.write(kMagic.data(), kMagic.size());
  put_u64(os, entries.size());
  for (const auto & e : entries) {
    put_u64(os, e.name.size());
    os.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    put_u64(os, e.tensor.rank());
    for (auto d : e.tensor.shape()) {
      put_u64(os, d);
    }
    for (double v : e.tensor.values()) {
      put_u64(os, std::bit_cast<std::uint64_t>(v));
    }
  }
  if (!os) {
    throw std::runtime_error("VNET1: write failed");
  }
}

std::vector<NamedTensor> read_vnet(std::istream & is)
{
  std::array<char, 5> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) {
    throw std::runtime_error("VNET1: bad magic");
  }
  const std::uint64_t count = get_u64(is);
  std::vector<NamedTensor> entries;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t name_len = get_u64(is);
    if (name_len > kMaxNameLength) {
      throw std::runtime_error("VNET1: implausible name length");
    }
    std::string name(name_len, '\0');
    is.read(name.data(), static_cast<std::streamsize>(name_len));
    const std::uint64_t rank = get_u64(is);
    if (rank == 0 || rank > Tensor::kMaxRank) {
      throw std::runtime_error("VNET1: bad rank for '" + name + "'");
    }
    Shape shape(rank);
    for (auto & d : shape) {
      d = get_u64(is);
    }
    std::vector<double> values(shape_size(shape));
    for (auto & v : values) {
      v = std::bit_cast<double>(get_u64(is));
    }
    entries.push_back({std::move(name), Tensor(std::move(shape), std::move(values))});
  }
  return entries;
}

void save_vnet(const std::filesystem::path & path, const std::vector<NamedTensor> & entries)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_vnet(os, entries);
}

std::vector<NamedTensor> load_vnet(const std::filesystem::path & path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open model file " + path.string());
  }
  return read_vnet(is);
}

}  // namespace visionnet
