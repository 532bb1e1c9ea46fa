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
#include "visionnet/run_config.hpp"

#include <sstream>
#include <stdexcept>

using namespace visionnet;

TEST_CASE("run config parsing")
{
  std::istringstream is(
    "# desk run\n"
    "height = 64\nwidth=64\n"
    "grid_range = 10   # meters\n"
    "beta = 0\nepochs = 3\nseed = 17\nvariant = basic_spaces\n"
    "train_data = data/train.txt\n");
  const RunConfig c = parse_run_config(is);
  CHECK(c.height == 64);
  CHECK(c.width == 64);
  CHECK(c.beta == 0.0);
  CHECK(c.epochs == 3);
  CHECK(c.seed == 17);
  CHECK(c.train_data == "data/train.txt");
  CHECK_NOTHROW(c.validate());
  CHECK(c.model_config().variant == Variant::basic_spaces);
  CHECK(c.model_config().height == 64);
  CHECK(c.window_config().grid_range == 10.0);
  CHECK(c.train_config().epochs == 3);
  CHECK(c.train_config().weights.beta == 0.0);
  CHECK(c.train_config().adam.lr == 1e-4);
}

TEST_CASE("run config rejects bad values")
{
  const auto parsed = [](const char * text) {
    std::istringstream is(text);
    return parse_run_config(is);
  };
  CHECK_THROWS_AS(parsed("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parsed("height 64\n"), ConfigError);
  CHECK_THROWS_AS(parsed("height = sixty\n"), ConfigError);
  CHECK_THROWS_AS(parsed("height = -4\n"), ConfigError);
  CHECK_THROWS_AS(parsed("epochs = 0\n").validate(), ConfigError);
  CHECK_THROWS_AS(parsed("lr = 0\n").validate(), ConfigError);
  CHECK_THROWS_AS(parsed("t_obs = 20\n").validate(), ConfigError);
  CHECK_THROWS_AS(parsed("variant = v7\n").validate(), ConfigError);
  CHECK_THROWS_AS(parsed("height = 60\n").validate(), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/visionnet.cfg"), ConfigError);
}
