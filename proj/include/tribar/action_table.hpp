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

#ifndef TRIBAR_ACTION_TABLE_HPP_
#define TRIBAR_ACTION_TABLE_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tribar/gait.hpp"
#include "tribar/pose2d.hpp"
#include "tribar/sim_config.hpp"
#include "tribar/simulator.hpp"

namespace tribar {

enum class ActionKind { kRolling, kCcwTurn, kCwTurn };

std::string_view ActionKindName(ActionKind kind);
ActionKind ParseActionKind(std::string_view name);

struct ActionSpec {
  int id = 0;
  ActionKind kind = ActionKind::kRolling;
  double left_range = 0.100;   // m, tendons A, B, C
  double right_range = 0.100;  // m, tendons D, E, F
};

// The 51 actions: rolling with left and right ranges each in 90..150 mm
// (step 10, left-major), then ccw and cw turn in place at 100 mm.
std::vector<ActionSpec> StandardActions();

// One cycle of the action's gait with the shared trajectory parameters.
Gait ActionGait(const ActionSpec& action);

// Rotation and translation of one action, the translation expressed in the
// body frame the robot had before acting (x = principal axis, y = heading).
struct ActionTransform {
  ActionSpec action;
  Pose2D motion;
};

using ActionTable = std::vector<ActionTransform>;

// Runs one action from the current state. `reversed` rolls the mirrored gait
// (principal axis and heading swapped).
RolloutResult ExecuteAction(const SimState& state, const ActionSpec& action,
                            const SimConfig& config, bool reversed = false);

// Runs one action from the canonical rest state on flat ground.
ActionTransform TabulateAction(const ActionSpec& action, const SimConfig& config);

ActionTable TabulateActions(const std::vector<ActionSpec>& actions, const SimConfig& config);
ActionTable TabulateActionsSerial(const std::vector<ActionSpec>& actions,
                                  const SimConfig& config);

// CSV: action_id,kind,left_range_mm,right_range_mm,dtheta_rad,tx_m,ty_m
void WriteActionTableCsv(std::ostream& out, const ActionTable& table);
ActionTable ReadActionTableCsv(std::istream& in);
ActionTable ReadActionTableFile(const std::string& path);

}  // namespace tribar

#endif  // TRIBAR_ACTION_TABLE_HPP_
