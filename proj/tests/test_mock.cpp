//===-- test_mock.cpp -----------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "mock_model.hpp"

#include "errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace optprefix;
using namespace test_support;

TEST_SUITE_BEGIN("mock-model");

namespace {

CostModel tiny_model() {
  CostModel model;
  model.base["demo"] = {1.0, 2.0, 1000.0};
  model.factors["demo"][0] = {0.5, 0.5, 1.0};
  model.factors["demo"][2] = {2.0, 2.0, 1.1};
  return model;
}

OptConfig config_with_flags(std::size_t count) {
  OptConfig config;
  config.index = count; // close enough for model purposes
  for (std::size_t i = 0; i < count; ++i)
    config.flags.push_back("p" + std::to_string(i));
  if (count)
    config.last_transformation = config.flags.back();
  return config;
}

} // namespace

TEST_CASE("model: the empty config costs exactly the base") {
  CostModel model = tiny_model();
  ResourceTriple r = model.resources("demo", OptConfig{});
  CHECK(r.time_s == 1.0);
  CHECK(r.energy_j == 2.0);
  CHECK(r.size_b == 1000.0);
}

TEST_CASE("model: factors at covered positions multiply") {
  CostModel model = tiny_model();
  // Positions {0,2} carry 0.5 and 2.0; base time 1.0 lands back at 1.0.
  ResourceTriple r = model.resources("demo", config_with_flags(3));
  CHECK(r.time_s == doctest::Approx(1.0));
  // Cutting before position 2 keeps only the 0.5 factor.
  CHECK(model.resources("demo", config_with_flags(2)).time_s ==
        doctest::Approx(0.5));
}

TEST_CASE("model: unknown benchmarks are errors") {
  CostModel model = tiny_model();
  CHECK_THROWS_AS(model.resources("nope", OptConfig{}), ModelError);
  CHECK(model.covers("demo"));
  CHECK_FALSE(model.covers("nope"));
}

TEST_CASE("property: model equals an independent fold over the factors") {
  Gen gen(31);
  for (int round = 0; round < 100; ++round) {
    CostModel model;
    model.base["b"] = {gen.uniform(0.1, 2.0), gen.uniform(0.1, 4.0),
                       gen.uniform(1000.0, 9000.0)};
    std::size_t positions = gen.below(30);
    for (std::size_t p = 0; p < positions; ++p)
      if (gen.chance(0.6))
        model.factors["b"][p] = {gen.uniform(0.8, 1.2),
                                 gen.uniform(0.8, 1.2),
                                 gen.uniform(0.99, 1.01)};

    std::size_t flag_count = gen.below(positions + 1);
    ResourceTriple got = model.resources_for_flag_count("b", flag_count);

    // Duplicate arithmetic, written as a plain loop over the positions.
    double time = model.base["b"].time_s;
    double energy = model.base["b"].energy_j;
    double size = model.base["b"].size_b;
    for (std::size_t p = 0; p < flag_count; ++p) {
      auto it = model.factors["b"].find(p);
      if (it == model.factors["b"].end())
        continue;
      time *= it->second.time;
      energy *= it->second.energy;
      size *= it->second.size;
    }
    CHECK(got.time_s == time);
    CHECK(got.energy_j == energy);
    CHECK(got.size_b == size);
  }
}

TEST_CASE("property: prefix consistency, one factor at a time") {
  PassPipeline pipeline = PassPipeline::parse(
      "T a\nA x\nT b\nT c\nA y\nT d\n");
  CostModel model = CostModel::generate(5, pipeline, {"bench"});
  std::vector<OptConfig> configs = generate_configs(pipeline);

  for (std::size_t i = 1; i < configs.size(); ++i) {
    ResourceTriple prev = model.resources("bench", configs[i - 1]);
    // Apply the factors of the positions added by config i on top.
    for (std::size_t p = configs[i - 1].total_flags();
         p < configs[i].total_flags(); ++p) {
      auto it = model.factors["bench"].find(p);
      if (it == model.factors["bench"].end())
        continue;
      prev.time_s *= it->second.time;
      prev.energy_j *= it->second.energy;
      prev.size_b *= it->second.size;
    }
    ResourceTriple direct = model.resources("bench", configs[i]);
    CHECK(prev.time_s == doctest::Approx(direct.time_s).epsilon(1e-12));
    CHECK(prev.energy_j == doctest::Approx(direct.energy_j).epsilon(1e-12));
    CHECK(prev.size_b == doctest::Approx(direct.size_b).epsilon(1e-12));
  }
}

TEST_CASE("generate: pure function of the seed") {
  PassPipeline pipeline = PassPipeline::parse("T a\nA x\nT b\nT c\n");
  CostModel m1 = CostModel::generate(99, pipeline, {"p", "q"});
  CostModel m2 = CostModel::generate(99, pipeline, {"p", "q"});
  CHECK(m1.base["p"].time_s == m2.base["p"].time_s);
  CHECK(m1.factors["q"] == m2.factors["q"]);
  CostModel m3 = CostModel::generate(100, pipeline, {"p", "q"});
  CHECK(m1.base["p"].time_s != m3.base["p"].time_s);
}

TEST_CASE("generate: analyses stay neutral, resources stay positive") {
  PassPipeline pipeline =
      PassPipeline::parse("A a0\nT t0\nA a1\nT t1\nT t2\nA a2\n");
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CostModel model = CostModel::generate(seed, pipeline, {"x", "y", "z"});
    for (const auto &[bench, positions] : model.factors)
      for (const auto &[position, factor] : positions) {
        CHECK(pipeline.entries()[position].kind == PassKind::Transformation);
        CHECK(factor.time > 0.0);
        CHECK(factor.energy > 0.0);
        CHECK(factor.size > 0.0);
      }
    for (const std::string bench : {"x", "y", "z"})
      for (const OptConfig &config : generate_configs(pipeline)) {
        ResourceTriple r = model.resources(bench, config);
        CHECK(r.time_s > 0.0);
        CHECK(r.energy_j > 0.0);
        CHECK(r.size_b > 0.0);
      }
  }
}

TEST_CASE("generate: some benchmark's final transformation hurts") {
  PassPipeline pipeline = PassPipeline::parse("T a\nT b\nT c\nT d\nT e\n");
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CostModel model =
        CostModel::generate(seed, pipeline, {"b0", "b1", "b2"});
    bool some_late_penalty = false;
    for (const std::string bench : {"b0", "b1", "b2"}) {
      auto it = model.factors[bench].find(4);
      if (it != model.factors[bench].end() && it->second.time > 1.0)
        some_late_penalty = true;
    }
    CHECK(some_late_penalty);
  }
}

TEST_CASE("save/load round-trips exactly") {
  TempDir dir("optprefix-mock");
  PassPipeline pipeline = PassPipeline::parse("T a\nA x\nT b\nT c\n");
  CostModel model = CostModel::generate(1234, pipeline, {"p", "q"});
  model.mark_invalid("p", generate_configs(pipeline)[2]);

  model.save(dir / "model.txt");
  CostModel loaded = CostModel::load(dir / "model.txt");

  CHECK(loaded.seed == model.seed);
  REQUIRE(loaded.base.size() == model.base.size());
  for (const auto &[bench, b] : model.base) {
    CHECK(loaded.base.at(bench).time_s == b.time_s);
    CHECK(loaded.base.at(bench).energy_j == b.energy_j);
    CHECK(loaded.base.at(bench).size_b == b.size_b);
  }
  CHECK(loaded.factors == model.factors);
  CHECK(loaded.invalid == model.invalid);
}

TEST_CASE("load: corrupt model files are errors") {
  TempDir dir("optprefix-mock");
  write_file(dir / "bad1.txt", "bench p 1.0\n");
  CHECK_THROWS_AS(CostModel::load(dir / "bad1.txt"), ModelError);
  write_file(dir / "bad2.txt", "factor p zero 1 1 1\n");
  CHECK_THROWS_AS(CostModel::load(dir / "bad2.txt"), ModelError);
  write_file(dir / "bad3.txt", "what p\n");
  CHECK_THROWS_AS(CostModel::load(dir / "bad3.txt"), ModelError);
  CHECK_THROWS_AS(CostModel::load(dir / "missing.txt"), ModelError);
}

TEST_CASE("interior optimum: a late penalty beats the full pipeline") {
  CostModel model;
  model.base["demo"] = {1.0, 1.0, 1000.0};
  model.factors["demo"][0] = {0.9, 0.9, 1.0};  // helps
  model.factors["demo"][1] = {0.85, 0.85, 1.0}; // helps
  model.factors["demo"][2] = {1.3, 1.3, 1.0};  // hurts

  PassPipeline pipeline = PassPipeline::parse("T a\nT b\nT c\n");
  std::vector<OptConfig> configs = generate_configs(pipeline);

  std::size_t best = 0;
  for (std::size_t i = 1; i < configs.size(); ++i)
    if (model.resources("demo", configs[i]).time_s <
        model.resources("demo", configs[best]).time_s)
      best = i;
  CHECK(best == 2); // strict interior: not empty, not the full pipeline
  CHECK(model.resources("demo", configs[2]).time_s <
        model.resources("demo", configs[3]).time_s);
}

TEST_CASE("monotone decrease: all factors < 1 favor the full pipeline") {
  CostModel model;
  model.base["demo"] = {1.0, 1.0, 1000.0};
  for (std::size_t p = 0; p < 4; ++p)
    model.factors["demo"][p] = {0.95, 0.95, 1.0};

  PassPipeline pipeline = PassPipeline::parse("T a\nT b\nT c\nT d\n");
  std::vector<OptConfig> configs = generate_configs(pipeline);
  for (std::size_t i = 1; i < configs.size(); ++i)
    CHECK(model.resources("demo", configs[i]).time_s <
          model.resources("demo", configs[i - 1]).time_s);
}

TEST_SUITE_END();
