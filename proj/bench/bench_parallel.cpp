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

// Serial reference vs OpenMP kernels. Prints wall time of each and checks
// that both produce the same answer.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <omp.h>

#include "tribar/action_table.hpp"
#include "tribar/csv.hpp"
#include "tribar/estimation.hpp"
#include "tribar/form_find.hpp"
#include "tribar/planner.hpp"
#include "tribar/sensing.hpp"
#include "tribar/shape.hpp"

using namespace tribar;

namespace {

template <class F>
double Seconds(F&& f, int reps = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void Report(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << ": serial " << FormatDouble(serial * 1e3) << " ms, parallel "
            << FormatDouble(parallel * 1e3) << " ms, speedup "
            << FormatDouble(parallel > 0 ? serial / parallel : 0.0)
            << (same ? "" : "  MISMATCH") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const bool full = argc > 1 && std::string(argv[1]) == "--full";
  std::cout << "threads: " << omp_get_max_threads() << '\n';
  std::mt19937_64 rng(7);
  const SimConfig config;

  // Action tabulation: one rollout per action.
  auto actions = StandardActions();
  if (!full) actions.resize(8);
  ActionTable ts, tp;
  const double tab_s = Seconds([&] { ts = TabulateActionsSerial(actions, config); });
  const double tab_p = Seconds([&] { tp = TabulateActions(actions, config); });
  bool same = ts.size() == tp.size();
  for (std::size_t i = 0; same && i < ts.size(); ++i) {
    same = ts[i].motion.theta == tp[i].motion.theta && ts[i].motion.t == tp[i].motion.t;
  }
  Report("tabulate (" + std::to_string(actions.size()) + " actions)", tab_s, tab_p, same);

  // Two-ply search over a 51-entry table of random motions.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ActionTable table;
  for (const auto& a : StandardActions()) {
    table.push_back({a, Pose2D(0.3 * u(rng), Vec2(0.05 * u(rng), 0.15 + 0.05 * u(rng)))});
  }
  const auto traj = MakeLine({0.0, 0.0}, {0.0, 2.0});
  PlannerState ps;
  ps.pose = Pose2D(-1.5, Vec2(0.1, 0.3));
  const CostWeights w = WeightsPreset("line");
  Plan a, b;
  const double plan_s = Seconds([&] { a = PlanTwoPlySerial(ps, table, traj, w); }, 20);
  const double plan_p = Seconds([&] { b = PlanTwoPly(ps, table, traj, w); }, 20);
  Report("plan_two_ply (51x51)", plan_s, plan_p, a.first == b.first && a.second == b.second);

  // Independent shape estimates for a batch of frames.
  const RobotShape& rest = CanonicalRestShapeBody();
  std::vector<SensorFrame> frames;
  NoiseSpec noise{0.01, 0.005};
  for (int k = 0; k < (full ? 200 : 40); ++k) frames.push_back(Measure(rest, Mat3::Identity(), noise, rng));
  std::vector<StateEstimate> es, ep;
  const StateEstimate init = RestEstimate();
  const double est_s = Seconds([&] { es = EstimateIndependentSerial(frames, init); });
  const double est_p = Seconds([&] { ep = EstimateIndependent(frames, init); });
  same = es.size() == ep.size();
  for (std::size_t i = 0; same && i < es.size(); ++i) {
    same = es[i].shape.nodes == ep[i].shape.nodes;
  }
  Report("estimate batch (" + std::to_string(frames.size()) + " frames)", est_s, est_p, same);
  return 0;
}
