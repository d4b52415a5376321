// Copyright 2026 The tribar Authors
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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "tribar/error.hpp"
#include "tribar/gait.hpp"
#include "tribar/gait_io.hpp"
#include "tribar/symmetry.hpp"

using namespace tribar;

namespace {

struct Row {
  double min_mm, range_mm, tol_high_pct, tol_low_pct, max_speed, kp;
};

void CheckParams(const GaitParams& p, const Row& r) {
  CHECK(p.min_length == doctest::Approx(r.min_mm / 1000.0));
  CHECK(p.range_left == doctest::Approx(r.range_mm / 1000.0));
  CHECK(p.range_right == doctest::Approx(r.range_mm / 1000.0));
  CHECK(p.tolerance_high == doctest::Approx(r.tol_high_pct / 100.0));
  CHECK(p.tolerance_low == doctest::Approx(r.tol_low_pct / 100.0));
  CHECK(p.max_speed == r.max_speed);
  CHECK(p.kp == r.kp);
  CHECK(p.ki == 0.01);
  CHECK(p.kd == 0.5);
}

FirstOrderPlant RestPlant(double length = 0.200) {
  std::array<double, kNumActuated> l;
  l.fill(length);
  return FirstOrderPlant(l, 0.10, 0.0, 1.0);
}

}  // namespace

TEST_CASE("normalization by min plus range") {
  CHECK(Normalize(0.100, 0.100, 0.090) == 0.0);
  CHECK(Normalize(0.190, 0.100, 0.090) == doctest::Approx(0.09 / 0.19));
  CHECK(Normalize(0.190, 0.100, 0.090) == doctest::Approx(0.4737).epsilon(1e-4));
  // The alternative divides by the range alone.
  CHECK(Normalize(0.190, 0.100, 0.090, Normalization::kRangeSpan) == doctest::Approx(1.0));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 0.4);
  for (auto mode : {Normalization::kMinPlusRange, Normalization::kRangeSpan}) {
    for (int i = 0; i < 200; ++i) {
      const double a = u(rng), b = u(rng);
      const double lo = std::min(a, b), hi = std::max(a, b);
      if (hi > lo) CHECK(Normalize(hi, 0.1, 0.09, mode) > Normalize(lo, 0.1, 0.09, mode));
      CHECK(std::abs(Denormalize(Normalize(a, 0.1, 0.09, mode), 0.1, 0.09, mode) - a) < 1e-12);
    }
  }
}

TEST_CASE("pid command") {
  GaitParams p = presets::Floor();
  const std::vector<double> zeros(5, 0.0);
  CHECK(PidCommand(zeros, p) == 0.0);

  p.kp = 8.0;
  p.ki = 0.0;
  p.kd = 0.0;
  const std::vector<double> half{0.5};
  CHECK(PidCommand(half, p) == 99.0);

  // u = Kp e + Ki sum + Kd (e_T - e_{T-1}), scaled by max speed.
  GaitParams g = presets::Floor();
  const std::vector<double> hist{0.02, 0.015, 0.01};
  const double u = 8 * 0.01 + 0.01 * 0.045 + 0.5 * (0.01 - 0.015);
  CHECK(PidCommand(hist, g) == doctest::Approx(u * 99.0));

  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> e(-2.0, 2.0);
  PidController c;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> h(1 + i % 7);
    for (auto& x : h) x = e(rng);
    const double v = PidCommand(h, g);
    CHECK(std::abs(v) <= g.max_speed);
    CHECK(std::abs(c.Update(e(rng), g)) <= g.max_speed);
  }
}

TEST_CASE("pid controller matches the batch formula") {
  const GaitParams g = presets::Floor();
  PidController c;
  std::vector<double> hist;
  for (double err : {0.3, 0.2, 0.12, 0.05, -0.01}) {
    hist.push_back(err);
    CHECK(c.Update(err, g) == doctest::Approx(PidCommand(hist, g)));
  }
}

TEST_CASE("step already reached latches on the first tick") {
  const GaitParams p = presets::Floor();
  auto plant = RestPlant(0.150);
  GaitStep step;
  step.fill(Normalize(0.150, p));
  const StepResult r = StepUntilReached(plant, step, p, {});
  CHECK(r.ticks == 1);
}

TEST_CASE("single tendon approach is monotone and latches in band") {
  GaitParams p = presets::Floor();
  p.SetRange(0.100);
  p.normalization = Normalization::kRangeSpan;
  auto plant = RestPlant(0.150);  // every tendon at position 0.5
  GaitStep step;
  step.fill(0.5);
  step[2] = 1.0;  // tendon C is 0.5 below its target
  StepOptions opts;
  opts.record_trace = true;
  const StepResult r = StepUntilReached(plant, step, p, opts);
  double prev = -1.0;
  bool latched_seen = false;
  for (const auto& rec : r.trace) {
    CHECK(rec.positions[2] >= prev - 1e-12);
    prev = rec.positions[2];
    if (latched_seen) CHECK(rec.commands[2] == 0.0);
    if (rec.latched[2]) latched_seen = true;
  }
  CHECK(latched_seen);
  CHECK(std::abs(r.trace.back().positions[2] - 1.0) <= p.tolerance_high);
}

TEST_CASE("latched tendons receive no further commands") {
  const GaitParams p = presets::Floor();
  auto plant = RestPlant();
  StepOptions opts;
  opts.record_trace = true;
  for (const GaitStep& step : LibraryGait("quasistatic").steps) {
    const StepResult r = StepUntilReached(plant, step, p, opts);
    std::array<bool, kNumActuated> was{};
    for (const auto& rec : r.trace) {
      for (int i = 0; i < kNumActuated; ++i) {
        if (was[i]) {
          CHECK(rec.latched[i]);
          CHECK(rec.commands[i] == 0.0);
        }
        was[i] = rec.latched[i];
      }
    }
  }
}

TEST_CASE("unreachable targets time out") {
  const GaitParams p = presets::Floor();
  std::array<double, kNumActuated> l;
  l.fill(0.2);
  FirstOrderPlant stuck(l, 0.10, 0.15, 0.25);  // hard stops inside the range
  GaitStep step;
  step.fill(0.0);
  StepOptions opts;
  opts.max_ticks = 300;
  try {
    StepUntilReached(stuck, step, p, opts);
    FAIL("expected StepTimeout");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStepTimeout);
  }
}

TEST_CASE("library gaits are verbatim") {
  using S = std::vector<GaitStep>;
  CHECK(LibraryGait("quasistatic").steps == S{{1, 1, 0.1, 1, 1, 0.1}, {0, 1, 1, 0, 1, 0.1}});
  CHECK(LibraryGait("dynamic").steps == S{{0, 1, 1, 0, 1, 0.1}});
  CHECK(LibraryGait("ccw_turn").steps ==
        S{{1, 1, 1, 0, 1, 1}, {1, 0, 1, 0, 1, 1}, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}});
  CHECK(LibraryGait("cw_turn").steps ==
        S{{0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 1}, {0, 0, 0.8, 0, 1, 1}, {1, 1, 1, 1, 1, 1}});
  CHECK(LibraryGait("cw_turn").steps[2][2] == 0.8);
  CHECK(LibraryGait("crawl_left_cw").steps ==
        S{{0, 0, 0, 0.1, 0.1, 0.1}, {0, 0, 0, 1, 0.1, 1}, {0, 0, 0, 1, 1, 0.1}});
  CHECK(LibraryGait("crawl_left_ccw").steps ==
        S{{0, 0, 0, 0.1, 0.1, 0.1}, {0, 0, 0, 1, 1, 0.1}, {0, 0, 0, 1, 0.1, 1}});
  CHECK(LibraryGait("quasistatic_impact").steps ==
        S{{1, 1, 0.1, 1, 1, 0.1}, {0, 1, 1, 0, 1, 0.1}, {1, 1, 1, 1, 1, 1}});
  // The dynamic gait skips the transition step.
  CHECK(LibraryGait("dynamic").steps.front() == LibraryGait("quasistatic").steps.back());
  CHECK_THROWS_AS(LibraryGait("moonwalk"), Error);
}

TEST_CASE("parameter tables") {
  CheckParams(presets::Floor(), {100, 90, 12, 12, 99, 8});
  CheckParams(presets::Terrain("grass"), {100, 90, 10, 10, 99, 6});
  CheckParams(presets::Terrain("ice"), {100, 100, 10, 10, 99, 6});
  CheckParams(presets::Terrain("pebbles"), {100, 90, 10, 10, 99, 6});
  CheckParams(presets::Terrain("sand"), {100, 100, 15, 15, 99, 6});
  const int angles[] = {0, 5, 10, 15, 20, 25, 28};
  const double ranges[] = {140, 140, 140, 140, 140, 140, 180};
  const double highs[] = {20, 20, 20, 20, 15, 15, 20};
  for (int i = 0; i < 7; ++i) {
    CheckParams(presets::Incline(angles[i]), {100, ranges[i], highs[i], 10, 99, 10});
  }
  CheckParams(presets::ShapeMorphing(90), {100, 90, 12, 12, 99, 8});
  CheckParams(presets::ShapeMorphing(120), {100, 120, 12, 12, 99, 8});
  CheckParams(presets::ShapeMorphing(150), {100, 150, 15, 15, 99, 8});
  CheckParams(presets::ShapeMorphing(180), {100, 180, 15, 15, 99, 8});
  CheckParams(presets::TurnInPlace(), {100, 100, 15, 15, 80, 6});
  CheckParams(presets::CrawlingTurn(), {100, 90, 17, 17, 99, 6});
  const GaitParams ccw = presets::GradualTurn(true);
  CHECK(ccw.range_left == doctest::Approx(0.080));
  CHECK(ccw.range_right == doctest::Approx(0.160));
  CHECK(ccw.tolerance_high == doctest::Approx(0.10));
  const GaitParams cw = presets::GradualTurn(false);
  CHECK(cw.range_left == doctest::Approx(0.160));
  CHECK(cw.range_right == doctest::Approx(0.080));
  const GaitParams impact = presets::Impact();
  CHECK(impact.range_left == doctest::Approx(0.100));
  CHECK(impact.kp == 6.0);
}

TEST_CASE("shipped presets file matches the tables") {
  const std::string path = tribar::testing::DataPath("presets.json");
  const GaitParams floor = PresetFromFile(path, "floor");
  CheckParams(floor, {100, 90, 12, 12, 99, 8});
  const GaitParams incline = PresetFromFile(path, "incline_10");
  CheckParams(incline, {100, 140, 20, 10, 99, 10});
  CHECK_THROWS_AS(PresetFromFile(path, "no_such_preset"), Error);
}

TEST_CASE("gait JSON round trip") {
  for (const auto& [name, g] : GaitLibrary()) {
    const Gait back = GaitFromJson(ToJson(g));
    CHECK(back.name == g.name);
    CHECK(back.steps == g.steps);
    CHECK(back.params.range_left == g.params.range_left);
    CHECK(back.params.range_right == g.params.range_right);
    CHECK(back.params.tolerance_high == g.params.tolerance_high);
    CHECK(back.params.tolerance_low == g.params.tolerance_low);
    CHECK(back.params.kp == g.params.kp);
    CHECK(back.params.max_speed == g.params.max_speed);
  }
  const Gait shipped = ReadGaitFile(tribar::testing::DataPath("gaits/cw_turn.json"));
  CHECK(shipped.steps == LibraryGait("cw_turn").steps);
}

TEST_CASE("parameter validation") {
  GaitParams p;
  p.range_left = 0.0;
  CHECK_THROWS_AS(p.Validate(), Error);
  p = GaitParams{};
  p.tolerance_high = 1.0;
  CHECK_THROWS_AS(p.Validate(), Error);
  p = GaitParams{};
  p.max_speed = 120;
  CHECK_THROWS_AS(p.Validate(), Error);
  Gait g;
  g.name = "empty";
  CHECK_THROWS_AS(g.Validate(), Error);
  g.steps = {{0, 0, 0, 0, 0, 1.5}};
  CHECK_THROWS_AS(g.Validate(), Error);
}

TEST_CASE("floor gait steps all latch on the first-order plant") {
  const GaitParams p = presets::Floor();
  auto plant = RestPlant();
  const Gait full = ExpandFullGait(LibraryGait("quasistatic"), Face::kF0, 1);
  StepOptions opts;
  opts.record_trace = true;
  for (int cycle = 0; cycle < 3; ++cycle) {
    for (const auto& step : full.steps) {
      const StepResult r = StepUntilReached(plant, step, p, opts);
      for (const auto& rec : r.trace) {
        for (double c : rec.commands) CHECK(std::abs(c) <= 99.0);
      }
    }
  }
}
