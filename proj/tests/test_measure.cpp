//===-- test_measure.cpp --------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "measure.hpp"

#include "errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace optprefix;
using namespace test_support;

TEST_SUITE_BEGIN("measure");

namespace {

// Deterministic provider: a fixed per-iteration duration, optional energy,
// optional per-sample noise sequence.
class StubProvider final : public MeasurementProvider {
public:
  explicit StubProvider(double iteration_s, std::optional<double> energy = {})
      : iteration_s_(iteration_s), energy_per_iteration_(energy) {}

  Sample run(const std::filesystem::path &, const BenchmarkSpec &,
             std::uint64_t loop_count) override {
    double noise = 0.0;
    if (!noise_.empty()) {
      noise = noise_[noise_cursor_ % noise_.size()];
      ++noise_cursor_;
    }
    Sample sample;
    sample.time_s = iteration_s_ * static_cast<double>(loop_count) + noise;
    if (energy_per_iteration_)
      sample.energy_j =
          *energy_per_iteration_ * static_cast<double>(loop_count);
    ++runs;
    return sample;
  }

  std::string_view name() const override { return "stub"; }

  std::vector<double> noise_;
  int runs = 0;

private:
  double iteration_s_;
  std::optional<double> energy_per_iteration_;
  std::size_t noise_cursor_ = 0;
};

BenchmarkSpec stub_bench() {
  BenchmarkSpec bench;
  bench.name = "stub";
  bench.run_cmd = "{exe}";
  return bench;
}

} // namespace

TEST_CASE("median: order statistics") {
  CHECK(median({3.0}) == 3.0);
  CHECK(median({5.0, 1.0, 9.0}) == 5.0);
  CHECK(median({1.0, 2.0, 3.0, 100.0}) == 2.5);
  // One outlier among five repeats does not move the result.
  CHECK(median({1.0, 1.0, 1.0, 1.0, 50.0}) == 1.0);
  CHECK_THROWS_AS(median({}), MeasureError);
}

TEST_CASE("calibrate: a long-enough single run needs no looping") {
  StubProvider provider(0.75);
  MeasurementPlan plan;
  CHECK(calibrate("x", stub_bench(), provider, plan) == 1);
}

TEST_CASE("calibrate: doubling reaches the documented loop count") {
  // A ~1 ms iteration against the default 0.5 s floor settles at 512.
  StubProvider provider(0.001);
  MeasurementPlan plan;
  CHECK(calibrate("x", stub_bench(), provider, plan) == 512);
}

TEST_CASE("calibrate: nanosecond-scale stubs hit the cap with a warning") {
  StubProvider provider(1e-9);
  MeasurementPlan plan;
  std::string warning;
  CHECK(calibrate("x", stub_bench(), provider, plan, &warning) ==
        kMaxLoopCount);
  CHECK(warning.find("capped") != std::string::npos);
}

TEST_CASE("measure: median over repeats, warmups uncounted") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", std::string(1024, 'x'));

  StubProvider provider(0.010, 0.002);
  provider.noise_ = {0.0, 0.0, 0.5, 0.0, 0.0, 0.0}; // one outlier run
  MeasurementPlan plan;
  plan.repeats = 5;
  plan.warmups = 1;

  ResourceMeasurement m =
      measure(dir / "app", stub_bench(), provider, plan, 100);
  CHECK(provider.runs == 6); // 1 warmup + 5 measured
  CHECK(m.repeats == 5);
  CHECK(m.loop_count == 100);
  // The single outlier run does not move the median.
  CHECK(m.exec_time_s == doctest::Approx(0.010).epsilon(1e-9));
  REQUIRE(m.energy_j.has_value());
  CHECK(*m.energy_j == doctest::Approx(0.002).epsilon(1e-9));
  REQUIRE(m.avg_power_w.has_value());
  CHECK(*m.avg_power_w == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(m.code_size_b == 1024);
}

TEST_CASE("measure: power/energy/time stay consistent within 1%") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "x");
  StubProvider provider(0.020, 0.004);
  MeasurementPlan plan;
  ResourceMeasurement m =
      measure(dir / "app", stub_bench(), provider, plan, 8);
  REQUIRE(m.avg_power_w);
  REQUIRE(m.energy_j);
  CHECK(std::abs(*m.avg_power_w - *m.energy_j / m.exec_time_s) <=
        0.01 * *m.avg_power_w);
}

TEST_CASE("measure: per-iteration time invariant under loop doubling") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "x");
  StubProvider provider(0.005);
  MeasurementPlan plan;
  double at_64 =
      measure(dir / "app", stub_bench(), provider, plan, 64).exec_time_s;
  double at_128 =
      measure(dir / "app", stub_bench(), provider, plan, 128).exec_time_s;
  CHECK(std::abs(at_64 - at_128) <= 0.10 * at_64);
}

TEST_CASE("measure: providers without energy leave the field absent") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "x");
  StubProvider provider(0.010); // no energy
  MeasurementPlan plan;
  ResourceMeasurement m =
      measure(dir / "app", stub_bench(), provider, plan, 4);
  CHECK_FALSE(m.energy_j.has_value());
  CHECK_FALSE(m.avg_power_w.has_value());
}

TEST_CASE("command provider: parses the documented JSON wire format") {
  auto sample = [](const std::string &json) {
    TempDir dir("optprefix-measure");
    auto script = write_script(dir / "probe.sh", "echo '" + json + "'\n");
    auto provider = make_command_provider(script.string() + " {exe} {loops}");
    return provider->run("exe", stub_bench(), 1);
  };

  auto full = sample(R"({"time_s": 1.5, "energy_j": 3.0, "power_w": 2.0})");
  CHECK(full.time_s == 1.5);
  CHECK(full.energy_j == 3.0);
  CHECK(full.power_w == 2.0);

  auto time_only = sample(R"({"time_s": 0.25})");
  CHECK(time_only.time_s == 0.25);
  CHECK_FALSE(time_only.energy_j.has_value());

  CHECK_THROWS_AS(sample(R"({"energy_j": 3.0})"), MeasureError);
  CHECK_THROWS_AS(sample("not json at all"), MeasureError);
}

TEST_CASE("command provider: nonzero exit is a failure") {
  TempDir dir("optprefix-measure");
  auto script = write_script(dir / "probe.sh", "exit 9\n");
  auto provider = make_command_provider(script.string() + " {exe}");
  CHECK_THROWS_AS(provider->run("exe", stub_bench(), 1), MeasureError);
}

TEST_CASE("timer provider: wall clock over the run command") {
  TempDir dir("optprefix-measure");
  auto exe = write_script(dir / "app", "sleep 0.05\n");
  BenchmarkSpec bench;
  bench.name = "sleepy";
  bench.run_cmd = "{exe}";
  auto provider = make_timer_provider();
  auto sample = provider->run(exe, bench, 1);
  CHECK(sample.time_s >= 0.045);
  CHECK_FALSE(sample.energy_j.has_value());
}

TEST_CASE("timer provider: wrong exit code fails the measurement") {
  TempDir dir("optprefix-measure");
  auto exe = write_script(dir / "app", "exit 3\n");
  BenchmarkSpec bench;
  bench.name = "broken";
  bench.run_cmd = "{exe}";
  auto provider = make_timer_provider();
  CHECK_THROWS_AS(provider->run(exe, bench, 1), MeasureError);
}

TEST_CASE("synthetic provider: decodes mock binaries and scales by loops") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "time_s=0.5 energy_j=1.25 size_b=4096\n");
  auto provider = make_synthetic_provider();
  auto sample = provider->run(dir / "app", stub_bench(), 4);
  CHECK(sample.time_s == doctest::Approx(2.0));
  REQUIRE(sample.energy_j);
  CHECK(*sample.energy_j == doctest::Approx(5.0));
}

TEST_CASE("synthetic provider: corrupted mock binaries fail") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "garbage\n");
  auto provider = make_synthetic_provider();
  CHECK_THROWS_AS(provider->run(dir / "app", stub_bench(), 1), MeasureError);
  write_file(dir / "app", "time_s=not-a-number\n");
  CHECK_THROWS_AS(provider->run(dir / "app", stub_bench(), 1), MeasureError);
}

TEST_CASE("code_size: file length without a size command") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", std::string(1024, 'b'));
  CHECK(code_size(dir / "app") == 1024);
  CHECK_THROWS_AS(code_size(dir / "missing"), MeasureError);
}

TEST_CASE("code_size: size command output sums the sections") {
  TempDir dir("optprefix-measure");
  write_file(dir / "app", "x");
  auto script =
      write_script(dir / "size.sh", "echo 'text=100 data=20 bss=8'\n");
  CHECK(code_size(dir / "app", script.string() + " {exe}") == 128);

  auto bad = write_script(dir / "bad.sh", "echo 'text=abc'\n");
  CHECK_THROWS_AS(code_size(dir / "app", bad.string() + " {exe}"),
                  MeasureError);
  auto empty = write_script(dir / "empty.sh", "true\n");
  CHECK_THROWS_AS(code_size(dir / "app", empty.string() + " {exe}"),
                  MeasureError);
}

TEST_SUITE_END();
