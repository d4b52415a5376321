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

#include "tribar/action_table.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>

#include "tribar/csv.hpp"
#include "tribar/error.hpp"

namespace tribar {

std::string_view ActionKindName(ActionKind kind) {
  switch (kind) {
    case ActionKind::kRolling: return "rolling";
    case ActionKind::kCcwTurn: return "ccw_turn";
    case ActionKind::kCwTurn: return "cw_turn";
  }
  return "?";
}

ActionKind ParseActionKind(std::string_view name) {
  if (name == "rolling") return ActionKind::kRolling;
  if (name == "ccw_turn") return ActionKind::kCcwTurn;
  if (name == "cw_turn") return ActionKind::kCwTurn;
  throw Error(ErrorCode::kIo, "unknown action kind '" + std::string(name) + "'");
}

std::vector<ActionSpec> StandardActions() {
  std::vector<ActionSpec> out;
  int id = 0;
  for (int left = 90; left <= 150; left += 10) {
    for (int right = 90; right <= 150; right += 10) {
      out.push_back({id++, ActionKind::kRolling, left / 1000.0, right / 1000.0});
    }
  }
  out.push_back({id++, ActionKind::kCcwTurn, 0.100, 0.100});
  out.push_back({id++, ActionKind::kCwTurn, 0.100, 0.100});
  return out;
}

Gait ActionGait(const ActionSpec& action) {
  const char* base = "quasistatic";
  if (action.kind == ActionKind::kCcwTurn) base = "ccw_turn";
  if (action.kind == ActionKind::kCwTurn) base = "cw_turn";
  Gait g = LibraryGait(base);
  g.params = presets::TrajectoryAction(action.left_range, action.right_range);
  return g;
}

RolloutResult ExecuteAction(const SimState& state, const ActionSpec& action,
                            const SimConfig& config, bool reversed) {
  RolloutOptions options;
  options.reversed = reversed;
  options.record_every_tick = false;
  return Rollout(ActionGait(action), 1, state, config, options);
}

ActionTransform TabulateAction(const ActionSpec& action, const SimConfig& config) {
  const SimState start = RestState(config);
  const RolloutResult r = ExecuteAction(start, action, config);
  return {action, RelativeMotion(start.pose, r.final_state.pose)};
}

ActionTable TabulateActionsSerial(const std::vector<ActionSpec>& actions,
                                  const SimConfig& config) {
  ActionTable table;
  table.reserve(actions.size());
  for (const auto& a : actions) table.push_back(TabulateAction(a, config));
  return table;
}

ActionTable TabulateActions(const std::vector<ActionSpec>& actions, const SimConfig& config) {
  ActionTable table(actions.size());
  const auto n = static_cast<long>(actions.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      table[i] = TabulateAction(actions[i], config);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return table;
}

void WriteActionTableCsv(std::ostream& out, const ActionTable& table) {
  out << "action_id,kind,left_range_mm,right_range_mm,dtheta_rad,tx_m,ty_m\n";
  for (const auto& row : table) {
    out << row.action.id << ',' << ActionKindName(row.action.kind) << ','
        << FormatDouble(std::round(row.action.left_range * 1e6) / 1e3) << ','
        << FormatDouble(std::round(row.action.right_range * 1e6) / 1e3) << ','
        << FormatDouble(row.motion.theta) << ',' << FormatDouble(row.motion.t.x()) << ','
        << FormatDouble(row.motion.t.y()) << '\n';
  }
}

ActionTable ReadActionTableCsv(std::istream& in) {
  const CsvTable csv = ReadCsv(in);
  const int c_id = csv.Column("action_id");
  const int c_kind = csv.Column("kind");
  const int c_left = csv.Column("left_range_mm");
  const int c_right = csv.Column("right_range_mm");
  const int c_th = csv.Column("dtheta_rad");
  const int c_tx = csv.Column("tx_m");
  const int c_ty = csv.Column("ty_m");
  ActionTable table;
  for (const auto& row : csv.rows) {
    ActionTransform t;
    t.action.id = ParseInt(row[c_id]);
    t.action.kind = ParseActionKind(row[c_kind]);
    t.action.left_range = ParseDouble(row[c_left]) / 1000.0;
    t.action.right_range = ParseDouble(row[c_right]) / 1000.0;
    t.motion = Pose2D(ParseDouble(row[c_th]),
                      Vec2(ParseDouble(row[c_tx]), ParseDouble(row[c_ty])));
    table.push_back(t);
  }
  return table;
}

ActionTable ReadActionTableFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadActionTableCsv(in);
}

}  // namespace tribar
