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

#ifndef TRIBAR_GAIT_IO_HPP_
#define TRIBAR_GAIT_IO_HPP_

#include <string>

#include <json.hpp>

#include "tribar/gait.hpp"
#include "tribar/pose2d.hpp"
#include "tribar/shape.hpp"

namespace tribar {

// JSON encodings.
//   Gait:      {"name", "params": {...}, "steps": [[6 numbers], ...]}
//   GaitParams lengths in millimetres, tolerances in percent, as the
//              experiment tables list them.
//   RobotShape: [[x,y,z] x 6]
//   Pose2D:    {"theta", "tx", "ty"}
nlohmann::json ToJson(const GaitParams& params);
nlohmann::json ToJson(const Gait& gait);
nlohmann::json ToJson(const RobotShape& shape);
nlohmann::json ToJson(const Pose2D& pose);

GaitParams GaitParamsFromJson(const nlohmann::json& j);
Gait GaitFromJson(const nlohmann::json& j);
RobotShape ShapeFromJson(const nlohmann::json& j);
Pose2D PoseFromJson(const nlohmann::json& j);

// Throws kIo on unreadable files or malformed content.
Gait ReadGaitFile(const std::string& path);
void WriteGaitFile(const std::string& path, const Gait& gait);
nlohmann::json ReadJsonFile(const std::string& path);

// Named parameter preset from the data directory's presets.json, e.g.
// "floor", "incline_10", "turn_in_place".
GaitParams PresetFromFile(const std::string& path, const std::string& name);

}  // namespace tribar

#endif  // TRIBAR_GAIT_IO_HPP_
