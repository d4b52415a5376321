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

#ifndef TRIBAR_CLOSED_LOOP_HPP_
#define TRIBAR_CLOSED_LOOP_HPP_

#include <iosfwd>
#include <vector>

#include "tribar/action_table.hpp"
#include "tribar/planner.hpp"
#include "tribar/sim_config.hpp"
#include "tribar/simulator.hpp"

namespace tribar {

struct ClosedLoopOptions {
  int max_actions = 300;
  // Consecutive plans without reducing the remaining path before giving up.
  int non_progress_limit = 10;
};

struct PlanRecord {
  int step = 0;
  int segment = 0;
  Direction direction = Direction::kForward;
  int action_id = -1;
  int followup_id = -1;
  double predicted_cost = 0.0;
  Pose2D predicted;  // effective pose expected after the executed action
  Pose2D measured;   // pose actually reached
  double remaining = 0.0;  // path length left, m
  bool switched = false;   // a segment switch happened before this plan
};

struct PathSample {
  double arclength = 0.0;  // along the whole trajectory, m
  double error = 0.0;      // distance to the nearest waypoint, m
};

struct ClosedLoopResult {
  std::vector<PlanRecord> log;
  std::vector<Vec2> com;  // centroid after each action, starting point first
  std::vector<PathSample> error_profile;
  int segment_switches = 0;
  int reversals = 0;
  SimState final_state;
  double final_distance = 0.0;  // centroid to the last waypoint, m
};

// Path length left from the nearest waypoint of `segment` to the end.
double RemainingLength(const std::vector<Trajectory>& segments, int segment, const Vec2& x);

// Plan two actions ahead, execute the first in the simulator, measure, and
// repeat until the endpoint rule fires on the last segment. Throws
// kNonProgress after too many plans that do not shorten the remaining path.
ClosedLoopResult StepAndReplan(const SimState& start, const std::vector<Trajectory>& segments,
                               const ActionTable& table, const CostWeights& weights,
                               const SimConfig& config, const ClosedLoopOptions& options = {});

// One JSON object per line.
void WritePlanLog(std::ostream& out, const std::vector<PlanRecord>& log);
// arclength_m,error_m
void WriteErrorProfileCsv(std::ostream& out, const std::vector<PathSample>& profile);

}  // namespace tribar

#endif  // TRIBAR_CLOSED_LOOP_HPP_
