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

#include "tribar/planner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "tribar/csv.hpp"
#include "tribar/error.hpp"

namespace tribar {
namespace {

double Cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool PairLess(int id1, int id2, int best1, int best2) {
  return id1 < best1 || (id1 == best1 && id2 < best2);
}

// Best second ply for a fixed first action; fills plan if it beats it.
void SearchFrom(std::size_t i, const Pose2D& start, const ActionTable& table,
                const Trajectory& traj, const CostWeights& w, Plan& best) {
  const Pose2D p1 = Predict(start, table[i].motion);
  for (std::size_t j = 0; j < table.size(); ++j) {
    const Pose2D p2 = Predict(p1, table[j].motion);
    const double c = Cost(p2.t, Rotation2D(p2.theta) * Vec2(0.0, 1.0), traj, w);
    const bool better =
        best.first < 0 || c < best.cost ||
        (c == best.cost && PairLess(table[i].action.id, table[j].action.id,
                                    table[best.first].action.id,
                                    table[best.second].action.id));
    if (better) {
      best.first = static_cast<int>(i);
      best.second = static_cast<int>(j);
      best.after_first = p1;
      best.after_second = p2;
      best.cost = c;
    }
  }
}

bool Better(const Plan& a, const Plan& b, const ActionTable& table) {
  if (a.first < 0) return false;
  if (b.first < 0) return true;
  if (a.cost != b.cost) return a.cost < b.cost;
  return PairLess(table[a.first].action.id, table[a.second].action.id,
                  table[b.first].action.id, table[b.second].action.id);
}

}  // namespace

void Trajectory::Validate() const {
  if (waypoints.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "trajectory needs at least two waypoints");
  }
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if ((waypoints[i] - waypoints[i - 1]).norm() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "consecutive waypoints coincide");
    }
  }
  if (!(endpoint_radius >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint radius must be non-negative");
  }
}

Vec2 Trajectory::Direction() const {
  return (waypoints.back() - waypoints.front()).normalized();
}

Trajectory MakeLine(const Vec2& from, const Vec2& to, double spacing) {
  Trajectory t;
  const double len = (to - from).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-9)));
  for (int k = 0; k <= n; ++k) t.waypoints.push_back(from + (to - from) * (double(k) / n));
  t.Validate();
  return t;
}

std::vector<Trajectory> MakePolyline(const std::vector<Vec2>& corners, double spacing) {
  if (corners.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "polyline needs at least two corners");
  }
  std::vector<Trajectory> out;
  for (std::size_t k = 1; k < corners.size(); ++k) {
    out.push_back(MakeLine(corners[k - 1], corners[k], spacing));
  }
  return out;
}

Trajectory MakeArc(const Vec2& center, double radius, double a0, double a1, double spacing) {
  Trajectory t;
  const double len = std::abs(a1 - a0) * radius;
  const int n = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-9)));
  for (int k = 0; k <= n; ++k) {
    const double a = a0 + (a1 - a0) * (double(k) / n);
    t.waypoints.push_back(center + radius * Vec2(std::cos(a), std::sin(a)));
  }
  t.Validate();
  return t;
}

std::vector<Trajectory> ReadTrajectoryCsv(std::istream& in) {
  const CsvTable csv = ReadCsv(in);
  const int cx = csv.Column("x_m");
  const int cy = csv.Column("y_m");
  const int cs = csv.Column("segment_id");
  std::vector<Trajectory> segments;
  for (const auto& row : csv.rows) {
    const int s = ParseInt(row[cs]);
    if (s == static_cast<int>(segments.size())) segments.emplace_back();
    if (s != static_cast<int>(segments.size()) - 1) {
      throw Error(ErrorCode::kIo, "segment ids must be 0, 1, ... in order");
    }
    segments.back().waypoints.emplace_back(ParseDouble(row[cx]), ParseDouble(row[cy]));
  }
  if (segments.empty()) throw Error(ErrorCode::kIo, "trajectory has no waypoints");
  for (const auto& s : segments) s.Validate();
  return segments;
}

void WriteTrajectoryCsv(std::ostream& out, const std::vector<Trajectory>& segments) {
  out << "x_m,y_m,segment_id\n";
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (const auto& p : segments[s].waypoints) {
      out << FormatDouble(p.x()) << ',' << FormatDouble(p.y()) << ',' << s << '\n';
    }
  }
}

CostWeights WeightsPreset(std::string_view name) {
  if (name == "line") return {500.0, 200.0, 300.0};
  if (name == "circle") return {400.0, 100.0, 300.0};
  if (name == "triangle") return {600.0, 100.0, 300.0};
  throw Error(ErrorCode::kInvalidArgument, "unknown weight preset '" + std::string(name) + "'");
}

Pose2D PlannerState::EffectivePose() const {
  if (direction == Direction::kForward) return pose;
  return Pose2D(pose.theta + std::numbers::pi, pose.t);
}

Vec2 PlannerState::PrincipalAxis() const {
  const double th = EffectivePose().theta;
  return Vec2(std::cos(th), std::sin(th));
}

Vec2 PlannerState::Heading() const { const Vec2 a = PrincipalAxis();
  return Vec2(-a.y(), a.x()); }

int NearestWaypoint(const Trajectory& traj, const Vec2& x) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(traj.waypoints.size()); ++i) {
    const double d = (traj.waypoints[i] - x).squaredNorm();
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double Cost(const Vec2& x, const Vec2& heading, const Trajectory& traj, const CostWeights& w) {
  const auto& p = traj.waypoints;
  const int n = static_cast<int>(p.size()) - 1;
  const int i = NearestWaypoint(traj, x);
  const Vec2 tangent = i < n ? (p[i + 1] - p[i]).normalized() : (p[n] - p[n - 1]).normalized();
  const double dot = std::clamp(heading.normalized().dot(tangent), -1.0, 1.0);
  return w.w_d * (p[i] - x).norm() + w.w_a * std::abs(std::acos(dot)) +
         w.w_p * (1.0 - static_cast<double>(i) / n);
}

double Cost(const PlannerState& state, const Trajectory& traj, const CostWeights& w) {
  return Cost(state.pose.t, state.Heading(), traj, w);
}

Pose2D Predict(const Pose2D& effective_pose, const Pose2D& motion) {
  return Compose(effective_pose, motion);
}

Plan PlanTwoPlySerial(const PlannerState& state, const ActionTable& table,
                      const Trajectory& traj, const CostWeights& w) {
  if (table.empty()) throw Error(ErrorCode::kEmptyTable, "action table is empty");
  const Pose2D start = state.EffectivePose();
  Plan best;
  for (std::size_t i = 0; i < table.size(); ++i) SearchFrom(i, start, table, traj, w, best);
  return best;
}

Plan PlanTwoPly(const PlannerState& state, const ActionTable& table, const Trajectory& traj,
                const CostWeights& w) {
  if (table.empty()) throw Error(ErrorCode::kEmptyTable, "action table is empty");
  const Pose2D start = state.EffectivePose();
  const auto n = static_cast<long>(table.size());
  std::vector<Plan> per_first(table.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) SearchFrom(i, start, table, traj, w, per_first[i]);
  Plan best;
  for (const auto& p : per_first) {
    if (Better(p, best, table)) best = p;
  }
  return best;
}

bool EndpointReached(const Trajectory& traj, const Vec2& x) {
  if ((traj.back() - x).norm() <= traj.endpoint_radius) return true;
  return NearestWaypoint(traj, x) == static_cast<int>(traj.waypoints.size()) - 1;
}

Direction ChooseDirection(const Vec2& principal_axis, const Vec2& segment_direction) {
  return Cross2(principal_axis, segment_direction) >= 0.0 ? Direction::kForward
                                                          : Direction::kReversed;
}

SegmentDecision SegmentSwitch(const PlannerState& state, const std::vector<Trajectory>& segments,
                              int current_segment) {
  SegmentDecision d;
  d.segment = current_segment;
  d.direction = state.direction;
  if (current_segment + 1 >= static_cast<int>(segments.size())) return d;
  if (!EndpointReached(segments[current_segment], state.pose.t)) return d;
  d.advance = true;
  d.segment = current_segment + 1;
  const Vec2 axis(std::cos(state.pose.theta), std::sin(state.pose.theta));
  d.direction = ChooseDirection(axis, segments[d.segment].Direction());
  return d;
}

double LimboRange(double bar_height) {
  if (!(bar_height > 0.130)) {
    throw Error(ErrorCode::kBarTooLow,
                "bar at " + FormatDouble(bar_height) + " m leaves no gait range");
  }
  const double range = std::min(bar_height - 0.120, 0.140);
  // Round down in whole millimetres first so 0.14 stays 0.14.
  const double mm = std::floor(range * 1000.0 + 1e-6);
  return std::floor(mm / 10.0) * 10.0 / 1000.0;
}

}  // namespace tribar
