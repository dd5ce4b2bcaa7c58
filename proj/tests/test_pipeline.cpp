//===-- test_pipeline.cpp -------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "pipeline.hpp"

#include "errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace optprefix;
using test_support::Gen;

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("parse: three entries with kinds and counts") {
  PassPipeline p = PassPipeline::parse("T inline\nA loops\nT gvn");
  REQUIRE(p.size() == 3);
  CHECK(p.transformation_count() == 2);
  CHECK(p.entries()[0].name == "inline");
  CHECK(p.entries()[0].kind == PassKind::Transformation);
  CHECK(p.entries()[1].name == "loops");
  CHECK(p.entries()[1].kind == PassKind::Analysis);
  CHECK(p.entries()[2].name == "gvn");
  for (std::size_t i = 0; i < p.size(); ++i)
    CHECK(p.entries()[i].position == i);
}

TEST_CASE("parse: empty document yields an empty pipeline") {
  CHECK(PassPipeline::parse("").empty());
  CHECK(PassPipeline::parse("\n\n").empty());
}

TEST_CASE("parse: comments and blank lines are ignored") {
  PassPipeline p =
      PassPipeline::parse("# header\n\nT inline\n  # indented comment\nA aa\n");
  CHECK(p.size() == 2);
}

TEST_CASE("parse: occurrence counts same-named entries") {
  PassPipeline p =
      PassPipeline::parse("T instcombine\nA domtree\nT instcombine\nA domtree\n"
                          "T instcombine\n");
  CHECK(p.entries()[0].occurrence == 1);
  CHECK(p.entries()[2].occurrence == 2);
  CHECK(p.entries()[4].occurrence == 3);
  CHECK(p.entries()[1].occurrence == 1);
  CHECK(p.entries()[3].occurrence == 2);
}

TEST_CASE("parse: malformed lines name the line number") {
  CHECK_THROWS_WITH_AS(PassPipeline::parse("T inline\ngvn\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(PassPipeline::parse("X inline\n"),
                       doctest::Contains("unknown kind tag"), ParseError);
  CHECK_THROWS_WITH_AS(PassPipeline::parse("T \n"),
                       doctest::Contains("missing pass name"), ParseError);
  CHECK_THROWS_WITH_AS(PassPipeline::parse("T a\nA b\nT x y\n"),
                       doctest::Contains("line 3"), ParseError);
}

TEST_CASE("serialize/parse round-trip preserves entries") {
  Gen gen(7);
  const char *names[] = {"a", "bb", "instcombine", "loop-rotate", "x.y"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::pair<std::string, PassKind>> passes;
    std::size_t n = gen.below(30);
    for (std::size_t i = 0; i < n; ++i)
      passes.emplace_back(names[gen.below(5)], gen.chance(0.5)
                                                   ? PassKind::Transformation
                                                   : PassKind::Analysis);
    PassPipeline p = PassPipeline::from_passes(passes);
    PassPipeline q = PassPipeline::parse(p.serialize());
    CHECK(p.entries() == q.entries());
  }
}

TEST_CASE("fixture: the llvm-5.0 -O2 transcription") {
  PassPipeline p =
      PassPipeline::load(std::filesystem::path(OPTPREFIX_SAMPLES_DIR) /
                         "pipelines" / "llvm-5.0-O2.pipeline");
  CHECK(p.size() == 241);
  CHECK(p.transformation_count() == 64);

  // 65 configs in total: the 64 non-empty ones plus the -O0 equivalent.
  std::vector<OptConfig> configs = generate_configs(p);
  CHECK(configs.size() == 65);

  // The cut described for the Levenstein profile: flag 91, -loop-deletion.
  bool found = false;
  for (const OptConfig &config : configs)
    if (config.total_flags() == 91) {
      found = true;
      CHECK(config.last_transformation == "loop-deletion");
      CHECK(config.label() == "loop-deletion (91)");
    }
  CHECK(found);
}

TEST_CASE("generate_configs: forced truncation example") {
  PassPipeline p = PassPipeline::parse("T a\nA x\nT b\nT c\n");
  std::vector<OptConfig> configs = generate_configs(p);
  REQUIRE(configs.size() == 4);
  CHECK(configs[0].flags.empty());
  CHECK(configs[1].flags == std::vector<std::string>{"a"});
  CHECK(configs[2].flags == std::vector<std::string>{"a", "x", "b"});
  CHECK(configs[3].flags == std::vector<std::string>{"a", "x", "b", "c"});
  CHECK(configs[2].label() == "b (3)");
  CHECK(configs[0].label() == "-O0 (0)");
}

TEST_CASE("generate_configs: trailing analyses are dropped") {
  PassPipeline p = PassPipeline::parse("T a\nA x\nT b\nA y\nA z\n");
  std::vector<OptConfig> configs = generate_configs(p);
  REQUIRE(configs.size() == 3);
  CHECK(configs.back().flags == std::vector<std::string>{"a", "x", "b"});
}

TEST_CASE("generate_configs: empty pipeline yields the single empty config") {
  std::vector<OptConfig> configs = generate_configs(PassPipeline::parse(""));
  REQUIRE(configs.size() == 1);
  CHECK(configs[0].index == 0);
  CHECK(configs[0].flags.empty());
  CHECK(configs[0].label() == "-O0 (0)");
}

namespace {

// Independent oracle: enumerate every literal prefix of the entry-name
// list and keep those ending at a transformation, plus the empty one.
std::vector<std::vector<std::string>>
brute_force_prefixes(const PassPipeline &p) {
  std::vector<std::vector<std::string>> expected;
  expected.push_back({});
  std::vector<std::string> names;
  for (const PassEntry &entry : p.entries())
    names.push_back(entry.name);
  for (std::size_t len = 1; len <= names.size(); ++len)
    if (p.entries()[len - 1].kind == PassKind::Transformation)
      expected.emplace_back(names.begin(), names.begin() + len);
  return expected;
}

PassPipeline random_pipeline(Gen &gen, std::size_t max_entries) {
  const char *names[] = {"p0", "p1", "p2", "p3", "p4", "p5", "p6", "p7"};
  std::vector<std::pair<std::string, PassKind>> passes;
  std::size_t n = gen.below(max_entries + 1);
  for (std::size_t i = 0; i < n; ++i)
    passes.emplace_back(names[gen.below(8)], gen.chance(0.5)
                                                 ? PassKind::Transformation
                                                 : PassKind::Analysis);
  return PassPipeline::from_passes(passes);
}

} // namespace

TEST_CASE("property: configs equal the brute-force prefix enumeration") {
  Gen gen(11);
  for (int round = 0; round < 200; ++round) {
    PassPipeline p = random_pipeline(gen, 50);
    std::vector<OptConfig> configs = generate_configs(p);
    std::vector<std::vector<std::string>> expected = brute_force_prefixes(p);

    REQUIRE(configs.size() == expected.size());
    REQUIRE(configs.size() == p.transformation_count() + 1);
    for (std::size_t i = 0; i < configs.size(); ++i) {
      CHECK(configs[i].flags == expected[i]);
      CHECK(configs[i].index == i);
      CHECK(configs[i].total_flags() == configs[i].flags.size());
    }
  }
}

TEST_CASE("property: monotone nesting and per-transformation cuts") {
  Gen gen(13);
  for (int round = 0; round < 100; ++round) {
    PassPipeline p = random_pipeline(gen, 40);
    std::vector<OptConfig> configs = generate_configs(p);

    // For i < j, config i's flags are a strict prefix of config j's.
    for (std::size_t i = 1; i < configs.size(); ++i) {
      const auto &shorter = configs[i - 1].flags;
      const auto &longer = configs[i].flags;
      REQUIRE(shorter.size() < longer.size());
      CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
    }

    // Every transformation entry is the last flag of exactly one config.
    std::multiset<std::size_t> cut_lengths;
    for (std::size_t i = 1; i < configs.size(); ++i)
      cut_lengths.insert(configs[i].total_flags());
    for (const PassEntry &entry : p.entries())
      if (entry.kind == PassKind::Transformation)
        CHECK(cut_lengths.count(entry.position + 1) == 1);
  }
}

TEST_SUITE_END();
