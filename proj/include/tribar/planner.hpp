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

#ifndef TRIBAR_PLANNER_HPP_
#define TRIBAR_PLANNER_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tribar/action_table.hpp"
#include "tribar/pose2d.hpp"
#include "tribar/symmetry.hpp"

namespace tribar {

// Ordered waypoints of one straight (or smoothly curved) piece of path.
struct Trajectory {
  std::vector<Vec2> waypoints;
  double endpoint_radius = 0.27;  // m

  // Throws kInvalidArgument for fewer than two waypoints or repeats.
  void Validate() const;
  const Vec2& back() const { return waypoints.back(); }
  // Unit direction from the first to the last waypoint.
  Vec2 Direction() const;
};

// Waypoints every `spacing` metres along straight legs; one Trajectory per
// leg, so a polyline with k corners gives k+1 segments.
std::vector<Trajectory> MakePolyline(const std::vector<Vec2>& corners, double spacing = 0.02);
Trajectory MakeLine(const Vec2& from, const Vec2& to, double spacing = 0.02);
// Counter-clockwise arc from angle a0 to a1 (radians) about `center`.
Trajectory MakeArc(const Vec2& center, double radius, double a0, double a1,
                   double spacing = 0.02);

// Trajectory CSV: x_m,y_m,segment_id. Segments must be numbered 0.. in order.
std::vector<Trajectory> ReadTrajectoryCsv(std::istream& in);
void WriteTrajectoryCsv(std::ostream& out, const std::vector<Trajectory>& segments);

struct CostWeights {
  double w_d = 500.0;
  double w_a = 200.0;
  double w_p = 300.0;
};

// Hand-tuned weights: "line", "circle", "triangle".
CostWeights WeightsPreset(std::string_view name);

enum class Direction { kForward, kReversed };

// `pose.theta` is the measured principal axis. Rolling reversed turns the
// robot's notion of front around: axis and heading are both negated.
struct PlannerState {
  Pose2D pose;
  Face face = Face::kF0;
  Direction direction = Direction::kForward;

  // Pose whose x-axis is the principal axis in the current direction.
  Pose2D EffectivePose() const;
  Vec2 PrincipalAxis() const;
  Vec2 Heading() const;  // PrincipalAxis() turned +90 degrees
};

// Index of the waypoint nearest `x`; ties go to the larger index.
int NearestWaypoint(const Trajectory& traj, const Vec2& x);

// w_d |p_i - x| + w_a |acos(h . tangent_i)| + w_p (1 - i/n), with i the
// nearest waypoint and n the index of the last waypoint. The tangent at the
// last waypoint is that of the final leg.
double Cost(const Vec2& x, const Vec2& heading, const Trajectory& traj, const CostWeights& w);
double Cost(const PlannerState& state, const Trajectory& traj, const CostWeights& w);

// Effective pose after applying `motion` (a table entry) from `pose`.
Pose2D Predict(const Pose2D& effective_pose, const Pose2D& motion);

struct Plan {
  int first = -1;   // indices into the table
  int second = -1;
  Pose2D after_first;   // effective poses
  Pose2D after_second;
  double cost = 0.0;
};

// Exhaustive depth-two search. The pair minimizing the cost after the second
// action wins; equal costs go to the lexicographically smallest pair of
// action ids. Throws kEmptyTable.
Plan PlanTwoPly(const PlannerState& state, const ActionTable& table, const Trajectory& traj,
                const CostWeights& w);
Plan PlanTwoPlySerial(const PlannerState& state, const ActionTable& table,
                      const Trajectory& traj, const CostWeights& w);

// Whether the robot has finished `traj`: within its endpoint radius of the
// last waypoint, or the last waypoint is the nearest one.
bool EndpointReached(const Trajectory& traj, const Vec2& x);

// Direction to roll along `next`: forward iff axis x t >= 0, where axis is
// the measured principal axis and t the segment direction.
Direction ChooseDirection(const Vec2& principal_axis, const Vec2& segment_direction);

struct SegmentDecision {
  bool advance = false;
  int segment = 0;
  Direction direction = Direction::kForward;
};

SegmentDecision SegmentSwitch(const PlannerState& state, const std::vector<Trajectory>& segments,
                              int current_segment);

// Gait range for passing under a bar: height - 120 mm, at most 140 mm,
// rounded down to 10 mm. Throws kBarTooLow at or below 130 mm.
double LimboRange(double bar_height);

}  // namespace tribar

#endif  // TRIBAR_PLANNER_HPP_
