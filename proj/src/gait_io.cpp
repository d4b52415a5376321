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

#include "tribar/gait_io.hpp"

#include <cmath>
#include <fstream>

#include "tribar/error.hpp"

namespace tribar {

using nlohmann::json;

namespace {

// Unit conversion without trailing binary noise (0.07 * 100 = 7.000000000000001).
double Scaled(double v, double k) { return std::round(v * k * 1e9) / 1e9; }

}  // namespace

json ToJson(const GaitParams& p) {
  json j;
  j["min_length_mm"] = Scaled(p.min_length, 1000.0);
  if (p.range_left == p.range_right) {
    j["range_mm"] = Scaled(p.range_left, 1000.0);
  } else {
    j["range_left_mm"] = Scaled(p.range_left, 1000.0);
    j["range_right_mm"] = Scaled(p.range_right, 1000.0);
  }
  if (p.tolerance_high == p.tolerance_low) {
    j["tolerance_pct"] = Scaled(p.tolerance_high, 100.0);
  } else {
    j["tolerance_high_pct"] = Scaled(p.tolerance_high, 100.0);
    j["tolerance_low_pct"] = Scaled(p.tolerance_low, 100.0);
  }
  j["max_speed"] = p.max_speed;
  j["kp"] = p.kp;
  j["ki"] = p.ki;
  j["kd"] = p.kd;
  if (p.normalization == Normalization::kRangeSpan) j["normalization"] = "range_span";
  return j;
}

json ToJson(const Gait& gait) {
  json j;
  j["name"] = gait.name;
  j["params"] = ToJson(gait.params);
  j["steps"] = json::array();
  for (const auto& s : gait.steps) j["steps"].push_back(std::vector<double>(s.begin(), s.end()));
  return j;
}

json ToJson(const RobotShape& shape) {
  json j = json::array();
  for (const auto& n : shape.nodes) j.push_back({n.x(), n.y(), n.z()});
  return j;
}

json ToJson(const Pose2D& pose) {
  return json{{"theta", pose.theta}, {"tx", pose.t.x()}, {"ty", pose.t.y()}};
}

GaitParams GaitParamsFromJson(const json& j) {
  try {
    GaitParams p;
    p.min_length = j.value("min_length_mm", p.min_length * 1000.0) / 1000.0;
    if (j.contains("range_mm")) p.SetRange(j.at("range_mm").get<double>() / 1000.0);
    if (j.contains("range_left_mm")) p.range_left = j.at("range_left_mm").get<double>() / 1000.0;
    if (j.contains("range_right_mm")) {
      p.range_right = j.at("range_right_mm").get<double>() / 1000.0;
    }
    if (j.contains("tolerance_pct")) {
      p.tolerance_high = p.tolerance_low = j.at("tolerance_pct").get<double>() / 100.0;
    }
    if (j.contains("tolerance_high_pct")) {
      p.tolerance_high = j.at("tolerance_high_pct").get<double>() / 100.0;
    }
    if (j.contains("tolerance_low_pct")) {
      p.tolerance_low = j.at("tolerance_low_pct").get<double>() / 100.0;
    }
    p.max_speed = j.value("max_speed", p.max_speed);
    p.kp = j.value("kp", p.kp);
    p.ki = j.value("ki", p.ki);
    p.kd = j.value("kd", p.kd);
    const std::string norm = j.value("normalization", std::string("min_plus_range"));
    if (norm == "range_span") {
      p.normalization = Normalization::kRangeSpan;
    } else if (norm != "min_plus_range") {
      throw Error(ErrorCode::kIo, "unknown normalization '" + norm + "'");
    }
    p.Validate();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("gait params: ") + e.what());
  }
}

Gait GaitFromJson(const json& j) {
  try {
    Gait g;
    g.name = j.at("name").get<std::string>();
    if (j.contains("params")) g.params = GaitParamsFromJson(j.at("params"));
    for (const auto& s : j.at("steps")) {
      const auto v = s.get<std::vector<double>>();
      if (v.size() != kNumActuated) {
        throw Error(ErrorCode::kIo, "gait step needs 6 targets, found " + std::to_string(v.size()));
      }
      GaitStep step;
      std::copy(v.begin(), v.end(), step.begin());
      g.steps.push_back(step);
    }
    g.Validate();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("gait: ") + e.what());
  }
}

RobotShape ShapeFromJson(const json& j) {
  try {
    if (!j.is_array() || j.size() != kNumNodes) {
      throw Error(ErrorCode::kIo, "shape must be an array of 6 points");
    }
    RobotShape s;
    for (int i = 0; i < kNumNodes; ++i) {
      const auto v = j[i].get<std::vector<double>>();
      if (v.size() != 3) throw Error(ErrorCode::kIo, "shape point must have 3 coordinates");
      s[i] = Vec3(v[0], v[1], v[2]);
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("shape: ") + e.what());
  }
}

Pose2D PoseFromJson(const json& j) {
  try {
    return Pose2D(j.at("theta").get<double>(),
                  Vec2(j.at("tx").get<double>(), j.at("ty").get<double>()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("pose: ") + e.what());
  }
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, path + ": " + e.what());
  }
}

Gait ReadGaitFile(const std::string& path) { return GaitFromJson(ReadJsonFile(path)); }

void WriteGaitFile(const std::string& path, const Gait& gait) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << ToJson(gait).dump(2) << '\n';
}

GaitParams PresetFromFile(const std::string& path, const std::string& name) {
  const json j = ReadJsonFile(path);
  if (!j.contains(name)) throw Error(ErrorCode::kInvalidArgument, "no preset '" + name + "'");
  return GaitParamsFromJson(j.at(name));
}

}  // namespace tribar
