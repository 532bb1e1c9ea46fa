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


#include "doctest.h"
#include "gradcheck.hpp"
#include "visionnet/adam.hpp"
#include "visionnet/layers.hpp"
#include "visionnet/serialize.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace visionnet;
using visionnet::testing::grad_check;
using visionnet::testing::random_tensor;

TEST_CASE("layer output shapes")
{
  Initializer init(1);
  const Var x = constant(Tensor({1, 3, 16, 16}, 0.5));
  Conv2d conv(3, {LayerKind::conv, 3, 2, 8, 1}, init);
  CHECK(conv(x).shape() == Shape{1, 8, 8, 8});
  Deconv2d up(3, {LayerKind::deconv, 4, 2, 5, 1}, init);
  CHECK(up(x).shape() == Shape{1, 5, 32, 32});
  DepthwiseConv2d dw(3, {LayerKind::depthwise_conv, 3, 1, 3, 1}, init);
  CHECK(dw(x).shape() == Shape{1, 3, 16, 16});
  Linear lin(3 * 16 * 16, 7, init);
  CHECK(lin(x).shape() == Shape{1, 7});
  ResidualBlock same(3, 3, 1, init);
  CHECK(same(x).shape() == Shape{1, 3, 16, 16});
  ResidualBlock down(3, 6, 2, init);
  CHECK(down(x).shape() == Shape{1, 6, 8, 8});
  Encoder enc(3, {16, 32, 64}, init);
  CHECK(enc(x).shape() == Shape{1, 64, 2, 2});
  CHECK(enc.out_channels() == 64);
  Decoder dec(64, {16, 32, 64}, 12, init);
  CHECK(dec(enc(x)).shape() == Shape{1, 12, 16, 16});
}

TEST_CASE("layer specs and initializers")
{
  CHECK_THROWS(LayerSpec{LayerKind::conv, 0, 1, 1, 0}.validate());
  CHECK_THROWS(LayerSpec{LayerKind::conv, 3, 0, 1, 0}.validate());
  Initializer a(42);
  Initializer b(42);
  const Tensor ta = a.uniform({100}, 0.3);
  CHECK(ta == b.uniform({100}, 0.3));
  for (double v : ta.values()) {
    CHECK(std::abs(v) <= 0.3);
  }
  Initializer c(3);
  Conv2d conv(4, {LayerKind::conv, 3, 1, 2, 1}, c);
  for (double v : conv.weight.value().values()) {
    CHECK(std::abs(v) <= std::sqrt(6.0 / 36.0));
  }
  for (double v : conv.bias.value().values()) {
    CHECK(v == 0.0);
  }
}

TEST_CASE("parameter names are hierarchical")
{
  Initializer init(1);
  Encoder enc(2, {4, 4, 8}, init);
  ParamList params;
  enc.collect("enc", params);
  REQUIRE_FALSE(params.empty());
  CHECK(params.front().name == "enc.stem.weight");
  for (const auto & p : params) {
    CHECK(p.name.rfind("enc.", 0) == 0);
    CHECK(p.var.requires_grad());
  }
}

TEST_CASE("residual, encoder and decoder gradients")
{
  std::mt19937_64 rng(8);
  Initializer init(8);
  ResidualBlock block(2, 3, 2, init);
  Encoder enc(2, {3, 4, 4}, init);
  Decoder dec(4, {3, 2, 2}, 2, init);
  const Var x = constant(random_tensor({1, 2, 8, 8}, rng));
  const Var p_block = constant(random_tensor({1, 3, 4, 4}, rng));
  const Var p_dec = constant(random_tensor({1, 2, 8, 8}, rng));
  for (const auto & [name, f, owner] :
       std::vector<std::tuple<std::string, std::function<Var()>, int>>{
         {"residual", [&] { return sum(mul(block(x), p_block)); }, 0},
         {"encoder-decoder", [&] { return sum(mul(dec(enc(x)), p_dec)); }, 1}}) {
    ParamList params;
    if (owner == 0) {
      block.collect("b", params);
    } else {
      enc.collect("e", params);
      dec.collect("d", params);
    }
    std::vector<Var> leaves;
    std::vector<std::string> names;
    for (auto & p : params) {
      // zero biases put ReLU inputs exactly on the kink
      if (p.name.ends_with(".bias")) {
        p.var.mutable_value() = random_tensor(p.var.shape(), rng, -0.1, 0.1);
      }
      leaves.push_back(p.var);
      names.push_back(p.name);
    }
    const auto r = grad_check(f, leaves, names);
    INFO(name << " worst " << r.worst);
    CHECK(r.max_rel_error < 1e-4);
  }
}

TEST_CASE("Adam first step moves each parameter by about lr")
{
  const Var w = leaf(Tensor({3}, std::vector<double>{1.0, -2.0, 0.5}));
  Adam adam({{"w", w}}, {1e-3, 0.9, 0.999, 1e-8});
  backward(sum(mul(w, constant(Tensor({3}, std::vector<double>{5.0, -0.01, 0.0})))));
  adam.step();
  CHECK(w.value()[0] == doctest::Approx(1.0 - 1e-3).epsilon(1e-6));
  CHECK(w.value()[1] == doctest::Approx(-2.0 + 1e-3).epsilon(1e-6));
  CHECK(w.value()[2] == 0.5);
  CHECK(adam.step_count() == 1);
  adam.zero_grad();
  CHECK_FALSE(w.has_grad());
  CHECK_THROWS_AS(adam.step(), std::logic_error);
  CHECK_THROWS(Adam({{"w", w}}, {0.0, 0.9, 0.999, 1e-8}));
}

TEST_CASE("Adam runs are deterministic")
{
  const auto run = [] {
    Initializer init(5);
    Linear lin(4, 2, init);
    ParamList params;
    lin.collect("lin", params);
    Adam adam(params, {});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const Var x = constant(random_tensor({1, 4}, rng));
      backward(sum(square(lin(x))));
      adam.step();
      adam.zero_grad();
    }
    return lin.weight.value();
  };
  CHECK(run() == run());
}

TEST_CASE("VNET1 round trip is bit-identical")
{
  std::mt19937_64 rng(12);
  std::vector<NamedTensor> entries{
    {"a", random_tensor({2, 3}, rng)},
    {"b.weight", random_tensor({1, 2, 3, 4}, rng)},
    {"tiny", Tensor({1}, std::vector<double>{-0.0})},
    {"special", Tensor({3}, std::vector<double>{1e-310, 1.7976931348623157e308, -3.25})}};
  std::stringstream ss;
  write_vnet(ss, entries);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 5) == "VNET1");
  const auto back = read_vnet(ss);
  REQUIRE(back.size() == entries.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].name == entries[i].name);
    CHECK(back[i].tensor.shape() == entries[i].tensor.shape());
    CHECK(std::memcmp(back[i].tensor.data(), entries[i].tensor.data(),
                      entries[i].tensor.size() * sizeof(double)) == 0);
  }
  std::stringstream again;
  write_vnet(again, back);
  CHECK(again.str() == bytes);

  const auto path = std::filesystem::temp_directory_path() / "visionnet_unit_roundtrip.vnet";
  save_vnet(path, entries);
  CHECK(load_vnet(path).size() == entries.size());
  std::filesystem::remove(path);
  CHECK_THROWS(load_vnet(path));
}

TEST_CASE("VNET1 rejects damaged input")
{
  std::stringstream bad_magic("VNET2xxxxxxxx");
  CHECK_THROWS(read_vnet(bad_magic));
  std::stringstream ss;
  write_vnet(ss, {{"w", Tensor({4}, 1.0)}});
  const std::string bytes = ss.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_vnet(truncated));
}
