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

// Acceptance checks. Prints one line per criterion and exits nonzero when any
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "test_util.hpp"
#include "tribar/closed_loop.hpp"
#include "tribar/csv.hpp"
#include "tribar/error.hpp"
#include "tribar/estimation.hpp"
#include "tribar/gait.hpp"
#include "tribar/gait_io.hpp"
#include "tribar/planner.hpp"
#include "tribar/sensing.hpp"
#include "tribar/simulator.hpp"
#include "tribar/symmetry.hpp"

using namespace tribar;
using tribar::testing::RandomEquilibrium;
using tribar::testing::RandomRotation;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
  void Require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::vector<GaitStep> Oracle(const std::string& file) {
  const auto j = ReadJsonFile(tribar::testing::DataPath("oracles/" + file));
  std::vector<GaitStep> out;
  for (const auto& row : j.at("steps")) {
    GaitStep s;
    for (int k = 0; k < kNumActuated; ++k) s[k] = row.at(k).get<double>();
    out.push_back(s);
  }
  return out;
}

double RotationAngle(const Mat3& r) {
  return Eigen::AngleAxisd(r).angle();
}

Outcome GaitAlgebra() {
  Outcome o;
  const Gait& q = LibraryGait("quasistatic");
  o.Require(ExpandFullGait(q, Face::kF0, 1).steps == Oracle("quasistatic_full.json"), "quasistatic expansion");
  o.Require(ExpandFullGait(LibraryGait("cw_turn"), Face::kF0, LibraryFaceAdvance("cw_turn")).steps ==
                Oracle("cw_turn_full.json"),
            "cw_turn expansion");
  o.Require(ReverseGait(ExpandFullGait(q, Face::kF0, 1), Face::kF0).steps == Oracle("quasistatic_backward.json"),
            "backward gait");
  o.Require(SwapPivot(LibraryGait("crawl_left_cw"), Face::kF0).steps == Oracle("crawl_right_cw.json"),
            "right-pivot cw crawl");
  o.Require(SwapPivot(LibraryGait("crawl_left_ccw"), Face::kF0).steps == Oracle("crawl_right_ccw.json"),
            "right-pivot ccw crawl");
  if (o.ok) o.detail = "five listings equal";
  return o;
}

Outcome EstimatorRoundTrip() {
  Outcome o;
  std::mt19937_64 rng(2001);
  std::vector<RobotShape> shapes;
  std::vector<Mat3> rots;
  for (int i = 0; i < 200; ++i) {
    shapes.push_back(RandomEquilibrium(rng));
    rots.push_back(RandomRotation(rng));
  }
  std::vector<SensorFrame> clean, noisy;
  std::mt19937_64 noise_rng(2002);
  const NoiseSpec noise{0.02, kPi / 180.0};
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    clean.push_back(Measure(shapes[i], rots[i]));
    noisy.push_back(Measure(shapes[i], rots[i], noise, noise_rng));
  }
  const auto est = EstimateIndependent(clean, RestEstimate());
  double worst_rmse = 0.0, worst_angle = 0.0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    worst_rmse = std::max(worst_rmse, RmseNodes(est[i], shapes[i].Rotated(rots[i])));
    worst_angle = std::max(worst_angle, RotationAngle(est[i].rotation * rots[i].transpose()));
  }
  o.Require(worst_rmse < 1e-3, "noiseless rmse " + FormatDouble(worst_rmse));
  o.Require(worst_angle < 1e-6, "noiseless rotation " + FormatDouble(worst_angle));

  std::vector<double> errs;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    try {
      const StateEstimate e = EstimateState(noisy[i], RestEstimate());
      errs.push_back(RmseNodes(e, shapes[i].Rotated(rots[i])));
    } catch (const Error&) {
      // A failed estimate counts as an unbounded error.
      errs.push_back(std::numeric_limits<double>::infinity());
    }
  }
  std::sort(errs.begin(), errs.end());
  const double median = errs[errs.size() / 2];
  o.Require(median < 0.12, "noisy median rmse " + FormatDouble(median));
  if (o.ok) {
    o.detail = "noiseless max rmse " + FormatDouble(worst_rmse) + ", noisy median " + FormatDouble(median);
  }
  return o;
}

double BruteForceMinimum(const PlannerState& s, const ActionTable& table, const Trajectory& traj,
                         const CostWeights& w) {
  const auto& p = traj.waypoints;
  const int n = static_cast<int>(p.size()) - 1;
  auto cost = [&](double x, double y, double heading) {
    int i = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k) {
      const double d = std::hypot(p[k].x() - x, p[k].y() - y);
      if (d <= best) best = d, i = k;
    }
    const int a = i < n ? i : n - 1;
    const double tx = p[a + 1].x() - p[a].x(), ty = p[a + 1].y() - p[a].y();
    double dot = (std::cos(heading) * tx + std::sin(heading) * ty) / std::hypot(tx, ty);
    dot = std::clamp(dot, -1.0, 1.0);
    return w.w_d * best + w.w_a * std::acos(dot) + w.w_p * (1.0 - double(i) / n);
  };
  const double th0 = s.pose.theta + (s.direction == Direction::kReversed ? kPi : 0.0);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : table) {
    const double th1 = th0 + a.motion.theta;
    const double x1 = s.pose.t.x() + std::cos(th0) * a.motion.t.x() - std::sin(th0) * a.motion.t.y();
    const double y1 = s.pose.t.y() + std::sin(th0) * a.motion.t.x() + std::cos(th0) * a.motion.t.y();
    for (const auto& b : table) {
      const double th2 = th1 + b.motion.theta;
      const double x2 = x1 + std::cos(th1) * b.motion.t.x() - std::sin(th1) * b.motion.t.y();
      const double y2 = y1 + std::sin(th1) * b.motion.t.x() + std::cos(th1) * b.motion.t.y();
      best = std::min(best, cost(x2, y2, th2 + kPi / 2));
    }
  }
  return best;
}

Outcome PlannerOptimality() {
  Outcome o;
  std::mt19937_64 rng(3001);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> size(1, 60);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ActionTable table;
    const int m = size(rng);
    for (int k = 0; k < m; ++k) {
      table.push_back({ActionSpec{k}, Pose2D(0.4 * u(rng), Vec2(0.1 * u(rng), 0.2 * u(rng)))});
    }
    std::vector<Vec2> corners{Vec2(u(rng), u(rng))};
    for (int k = 0; k < 3; ++k) corners.push_back(corners.back() + Vec2(u(rng), u(rng)));
    Trajectory traj;
    for (const auto& seg : MakePolyline(corners, 0.05)) {
      for (const auto& p : seg.waypoints) {
        if (traj.waypoints.empty() || (p - traj.waypoints.back()).norm() > 0) traj.waypoints.push_back(p);
      }
    }
    PlannerState s;
    s.pose = Pose2D(kPi * u(rng), Vec2(u(rng), u(rng)));
    s.direction = trial % 2 ? Direction::kReversed : Direction::kForward;
    const CostWeights w{500.0, 200.0, 300.0};
    const Plan plan = PlanTwoPly(s, table, traj, w);
    worst = std::max(worst, std::abs(plan.cost - BruteForceMinimum(s, table, traj, w)));
  }
  o.Require(worst <= 1e-9, "cost gap " + FormatDouble(worst));
  if (o.ok) o.detail = "max cost gap " + FormatDouble(worst);
  return o;
}

Outcome CostHandCases() {
  Outcome o;
  Trajectory t;
  for (int k = 0; k <= 10; ++k) t.waypoints.emplace_back(0.1 * (k + 1), 0.0);
  const double c = Cost(Vec2(0, 0), Vec2(0, 1), t, CostWeights{500, 200, 300});
  o.Require(std::abs(c - 664.159) < 5e-4, "hand case cost " + FormatDouble(c));
  o.Require(LimboRange(0.300) == 0.140, "limbo 0.300");
  bool threw = false;
  try {
    LimboRange(0.130);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::kBarTooLow;
  }
  o.Require(threw, "limbo 0.130 must fail");
  if (o.ok) o.detail = "cost " + FormatDouble(c);
  return o;
}

Outcome SimulatorInvariants() {
  Outcome o;
  const SimConfig config;
  RolloutOptions opts;
  opts.face_advance = 1;
  const SimState start = RestState(config);
  const RolloutResult r = Rollout(LibraryGait("quasistatic"), 3, start, config, opts);
  double worst_bar = 0.0, lowest = 0.0;
  for (const auto& s : r.trace) {
    worst_bar = std::max(worst_bar, MaxBarLengthError(s.shape, config.bar_length));
    for (const auto& n : s.shape.nodes) lowest = std::min(lowest, n.z());
  }
  o.Require(worst_bar <= 1e-6 * config.bar_length, "bar error " + FormatDouble(worst_bar));
  o.Require(lowest >= -0.001, "penetration " + FormatDouble(-lowest));
  const bool faces = r.face_changes.size() == 3 && r.face_changes[0].from == Face::kF0 &&
                     r.face_changes[0].to == Face::kF1 && r.face_changes[1].to == Face::kF2 &&
                     r.face_changes[2].to == Face::kF0;
  o.Require(faces, "face sequence (" + std::to_string(r.face_changes.size()) + " transitions)");
  const Vec2 heading = PrincipalAxis2D(start.shape).heading;
  const double advance = (r.final_state.pose.t - start.pose.t).dot(heading);
  o.Require(advance > 0.5 * config.bar_length, "advance " + FormatDouble(advance));
  if (o.ok) o.detail = "advance " + FormatDouble(advance / config.bar_length) + " L";
  return o;
}

Outcome ClosedLoop() {
  Outcome o;
  const SimConfig config;
  const ActionTable table = TabulateActions(StandardActions(), config);
  const ClosedLoopResult line = StepAndReplan(RestState(config), {MakeLine(Vec2(0, 0), Vec2(0, 2))}, table,
                                              WeightsPreset("line"), config);
  o.Require(line.final_distance <= 0.27, "line final distance " + FormatDouble(line.final_distance));
  const SimState start = PlaceState(RestState(config), Pose2D(-kPi / 2, Vec2(0, 0)));
  const ClosedLoopResult tri = StepAndReplan(start, MakePolyline({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(0, 0)}),
                                             table, WeightsPreset("triangle"), config);
  o.Require(tri.segment_switches == 2, "switches " + std::to_string(tri.segment_switches));
  o.Require(tri.reversals >= 1, "reversals " + std::to_string(tri.reversals));
  if (o.ok) {
    o.detail = "line final " + FormatDouble(line.final_distance) + " m, triangle switches " +
               std::to_string(tri.segment_switches) + ", reversals " + std::to_string(tri.reversals);
  }
  return o;
}

Outcome Composition() {
  Outcome o;
  const Pose2D q = Compose(Pose2D(kPi / 2, Vec2::Zero()), Pose2D(0.0, Vec2(1.0, 0.0)));
  o.Require(std::abs(q.theta - kPi / 2) < 1e-12 && (q.t - Vec2(0, 1)).norm() < 1e-12, "quarter turn");
  auto act = [](const Pose2D& p, const Vec2& x) {
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    return Vec2(c * x.x() - s * x.y() + p.t.x(), s * x.x() + c * x.y() + p.t.y());
  };
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Pose2D a(kPi * u(rng) / 2, Vec2(u(rng), u(rng)));
    const Pose2D b(kPi * u(rng) / 2, Vec2(u(rng), u(rng)));
    const Pose2D c(kPi * u(rng) / 2, Vec2(u(rng), u(rng)));
    const Pose2D abc = Compose(Compose(a, b), c);
    for (int k = 0; k < 100; ++k) {
      const Vec2 x(u(rng), u(rng));
      worst = std::max(worst, (act(abc, x) - act(a, act(b, act(c, x)))).norm());
    }
  }
  o.Require(worst < 1e-9, "pointwise gap " + FormatDouble(worst));
  if (o.ok) o.detail = "max pointwise gap " + FormatDouble(worst);
  return o;
}

Outcome PidGait() {
  Outcome o;
  const GaitParams p = presets::Floor();
  o.Require(std::abs(p.min_length - 0.100) < 1e-12 && std::abs(p.range_left - 0.090) < 1e-12 &&
                p.kp == 8.0 && p.ki == 0.01 && p.kd == 0.5,
            "floor parameters");
  std::array<double, kNumActuated> l;
  l.fill(0.200);
  FirstOrderPlant plant(l, 0.10, 0.0, 1.0);
  StepOptions opts;
  opts.record_trace = true;
  double peak = 0.0;
  int steps = 0;
  try {
    for (const auto& step : ExpandFullGait(LibraryGait("quasistatic"), Face::kF0, 1).steps) {
      const StepResult r = StepUntilReached(plant, step, p, opts);
      ++steps;
      o.Require(!r.trace.empty() && std::all_of(r.trace.back().latched.begin(), r.trace.back().latched.end(),
                                                [](bool b) { return b; }),
                "step " + std::to_string(steps) + " not latched");
      for (const auto& rec : r.trace) {
        for (double c : rec.commands) peak = std::max(peak, std::abs(c));
      }
    }
  } catch (const Error& e) {
    o.Require(false, e.what());
  }
  o.Require(peak <= 99.0, "command " + FormatDouble(peak));
  if (o.ok) o.detail = std::to_string(steps) + " steps latched, peak command " + FormatDouble(peak);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 when unbounded
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gait algebra", 1.0, GaitAlgebra},
      {2, "estimator round trip", 60.0, EstimatorRoundTrip},
      {3, "planner optimality", 30.0, PlannerOptimality},
      {4, "cost and limbo hand cases", 0.0, CostHandCases},
      {5, "simulator invariants", 60.0, SimulatorInvariants},
      {6, "closed-loop following", 300.0, ClosedLoop},
      {7, "SE(2) composition", 0.0, Composition},
      {8, "PID gait engine", 0.0, PidGait},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      if (o.ok) o.detail = "over the time limit";
      o.ok = false;
    }
    failures += !o.ok;
    std::printf("criterion %d: %s  %s (%.2f s) %s\n", c.id, o.ok ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
