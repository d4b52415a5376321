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

#include "tribar/closed_loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <ostream>

#include <json.hpp>

#include "tribar/csv.hpp"
#include "tribar/error.hpp"
#include "tribar/gait_io.hpp"

namespace tribar {
namespace {

double SegmentLength(const Trajectory& t, int from) {
  double len = 0.0;
  for (std::size_t i = from + 1; i < t.waypoints.size(); ++i) {
    len += (t.waypoints[i] - t.waypoints[i - 1]).norm();
  }
  return len;
}

PathSample Sample(const std::vector<Trajectory>& segments, const Vec2& x) {
  double best = std::numeric_limits<double>::infinity();
  double at = 0.0;
  double offset = 0.0;
  for (const auto& seg : segments) {
    double s = offset;
    for (std::size_t i = 0; i < seg.waypoints.size(); ++i) {
      if (i > 0) s += (seg.waypoints[i] - seg.waypoints[i - 1]).norm();
      const double d = (seg.waypoints[i] - x).norm();
      if (d < best) {
        best = d;
        at = s;
      }
    }
    offset = s;
  }
  return {at, best};
}

PlannerState Measure(const SimState& s, Direction direction, Face face) {
  PlannerState p;
  p.pose = s.pose;
  p.face = face;
  p.direction = direction;
  return p;
}

}  // namespace

double RemainingLength(const std::vector<Trajectory>& segments, int segment, const Vec2& x) {
  const Trajectory& cur = segments[segment];
  double len = (cur.waypoints[NearestWaypoint(cur, x)] - x).norm();
  len += SegmentLength(cur, NearestWaypoint(cur, x));
  for (std::size_t k = segment + 1; k < segments.size(); ++k) {
    len += SegmentLength(segments[k], 0);
  }
  return len;
}

ClosedLoopResult StepAndReplan(const SimState& start, const std::vector<Trajectory>& segments,
                               const ActionTable& table, const CostWeights& weights,
                               const SimConfig& config, const ClosedLoopOptions& options) {
  if (segments.empty()) throw Error(ErrorCode::kInvalidArgument, "no trajectory segments");
  for (const auto& s : segments) s.Validate();
  if (table.empty()) throw Error(ErrorCode::kEmptyTable, "action table is empty");

  ClosedLoopResult out;
  SimState state = start;
  int segment = 0;
  Direction direction =
      ChooseDirection(Vec2(std::cos(state.pose.theta), std::sin(state.pose.theta)),
                      segments[0].Direction());
  out.com.push_back(state.pose.t);
  out.error_profile.push_back(Sample(segments, state.pose.t));
  double best_remaining = RemainingLength(segments, 0, state.pose.t);
  int stale = 0;

  for (int step = 0;; ++step) {
    PlannerState ps = Measure(state, direction, DetectFace(state).value_or(state.face));
    bool switched = false;
    for (;;) {
      const SegmentDecision d = SegmentSwitch(ps, segments, segment);
      if (!d.advance) break;
      segment = d.segment;
      ++out.segment_switches;
      if (d.direction != direction) ++out.reversals;
      direction = d.direction;
      ps.direction = direction;
      switched = true;
      best_remaining = RemainingLength(segments, segment, state.pose.t);
      stale = 0;
    }
    if (segment + 1 == static_cast<int>(segments.size()) &&
        EndpointReached(segments[segment], state.pose.t)) {
      break;
    }
    if (step >= options.max_actions) {
      throw Error(ErrorCode::kNonProgress,
                  "action budget of " + std::to_string(options.max_actions) + " exhausted");
    }

    const Plan plan = PlanTwoPly(ps, table, segments[segment], weights);
    const ActionTransform& act = table[plan.first];
    const RolloutResult r =
        ExecuteAction(state, act.action, config, direction == Direction::kReversed);
    state = r.final_state;

    PlanRecord rec;
    rec.step = step;
    rec.segment = segment;
    rec.direction = direction;
    rec.action_id = act.action.id;
    rec.followup_id = table[plan.second].action.id;
    rec.predicted_cost = plan.cost;
    rec.predicted = plan.after_first;
    rec.measured = state.pose;
    rec.remaining = RemainingLength(segments, segment, state.pose.t);
    rec.switched = switched;
    out.log.push_back(rec);
    out.com.push_back(state.pose.t);
    out.error_profile.push_back(Sample(segments, state.pose.t));

    if (rec.remaining < best_remaining - 1e-9) {
      best_remaining = rec.remaining;
      stale = 0;
    } else if (++stale >= options.non_progress_limit) {
      throw Error(ErrorCode::kNonProgress,
                  std::to_string(stale) + " plans without progress on segment " +
                      std::to_string(segment) + ", " + FormatDouble(rec.remaining) +
                      " m left");
    }
  }
  out.final_state = state;
  out.final_distance = (segments.back().back() - state.pose.t).norm();
  return out;
}

void WritePlanLog(std::ostream& out, const std::vector<PlanRecord>& log) {
  for (const auto& r : log) {
    nlohmann::json j;
    j["step"] = r.step;
    j["chosen_actions"] = {r.action_id, r.followup_id};
    j["predicted_pose"] = ToJson(r.predicted);
    j["measured_pose"] = ToJson(r.measured);
    j["cost"] = r.predicted_cost;
    j["segment"] = r.segment;
    j["direction"] = r.direction == Direction::kForward ? "forward" : "reversed";
    j["remaining_m"] = r.remaining;
    j["switched"] = r.switched;
    out << j.dump() << '\n';
  }
}

void WriteErrorProfileCsv(std::ostream& out, const std::vector<PathSample>& profile) {
  out << "arclength_m,error_m\n";
  for (const auto& s : profile) {
    out << FormatDouble(s.arclength) << ',' << FormatDouble(s.error) << '\n';
  }
}

}  // namespace tribar
