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

#include "tribar/gait.hpp"

#include <algorithm>
#include <cmath>

#include "tribar/error.hpp"

namespace tribar {

void GaitParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(range_left > 0.0) || !(range_right > 0.0)) fail("range must be positive");
  if (!(min_length > 0.0)) fail("minimum length must be positive");
  for (double tol : {tolerance_high, tolerance_low}) {
    if (!(tol > 0.0 && tol < 1.0)) fail("tolerance must lie in (0, 1)");
  }
  if (!(max_speed > 0.0 && max_speed <= 99.0)) fail("max speed must lie in (0, 99]");
}

void Gait::Validate() const {
  if (steps.empty()) throw Error(ErrorCode::kInvalidArgument, "gait has no steps");
  for (const auto& step : steps) {
    for (double t : step) {
      if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gait target outside [0, 1]");
      }
    }
  }
  params.Validate();
}

double Normalize(double length, double min_length, double range, Normalization mode) {
  const double span = mode == Normalization::kMinPlusRange ? min_length + range : range;
  return (length - min_length) / span;
}

double Denormalize(double position, double min_length, double range,
                   Normalization mode) {
  const double span = mode == Normalization::kMinPlusRange ? min_length + range : range;
  return min_length + position * span;
}

double Normalize(double length, const GaitParams& params, int tendon) {
  return Normalize(length, params.min_length, params.Range(tendon), params.normalization);
}

double Denormalize(double position, const GaitParams& params, int tendon) {
  return Denormalize(position, params.min_length, params.Range(tendon),
                     params.normalization);
}

double PidCommand(std::span<const double> errors, const GaitParams& params) {
  if (errors.empty()) return 0.0;
  const double current = errors.back();
  double sum = 0.0;
  for (double e : errors) sum += e;
  const double derivative =
      errors.size() > 1 ? current - errors[errors.size() - 2] : 0.0;
  const double u = params.kp * current + params.ki * sum + params.kd * derivative;
  return std::clamp(u * params.max_speed, -params.max_speed, params.max_speed);
}

double PidController::Update(double error, const GaitParams& params) {
  integral_ += error;
  const double derivative = has_previous_ ? error - previous_ : 0.0;
  previous_ = error;
  has_previous_ = true;
  const double u = params.kp * error + params.ki * integral_ + params.kd * derivative;
  return std::clamp(u * params.max_speed, -params.max_speed, params.max_speed);
}

void PidController::Reset() {
  integral_ = 0.0;
  previous_ = 0.0;
  has_previous_ = false;
}

void FirstOrderPlant::Apply(const std::array<double, kNumActuated>& commands,
                            double dt) {
  for (int i = 0; i < kNumActuated; ++i) {
    lengths_[i] = std::clamp(lengths_[i] - speed_ * commands[i] / 99.0 * dt, min_, max_);
  }
}

StepResult StepUntilReached(TendonPlant& plant, const GaitStep& step,
                            const GaitParams& params, const StepOptions& options) {
  StepResult result;
  std::array<PidController, kNumActuated> pid;
  std::array<bool, kNumActuated> latched{};
  for (int tick = 0; tick < options.max_ticks; ++tick) {
    const auto lengths = plant.Lengths();
    TickRecord rec;
    rec.tick = tick;
    bool all = true;
    for (int i = 0; i < kNumActuated; ++i) {
      const double position = Normalize(lengths[i], params, i);
      rec.positions[i] = position;
      const double error = position - step[i];
      if (!latched[i] && std::abs(error) <= params.Tolerance(step[i])) latched[i] = true;
      rec.commands[i] = latched[i] ? 0.0 : pid[i].Update(error, params);
      all = all && latched[i];
    }
    rec.latched = latched;
    if (options.record_trace) result.trace.push_back(rec);
    result.ticks = tick + 1;
    if (all) return result;
    plant.Apply(rec.commands, options.tick_seconds);
  }
  throw Error(ErrorCode::kStepTimeout,
              "step not reached within " + std::to_string(options.max_ticks) + " ticks");
}

namespace presets {
namespace {

GaitParams Make(double range, double tolerance, double max_speed, double kp) {
  GaitParams p;
  p.min_length = 0.100;
  p.SetRange(range);
  p.tolerance_high = p.tolerance_low = tolerance;
  p.max_speed = max_speed;
  p.kp = kp;
  p.ki = 0.01;
  p.kd = 0.5;
  return p;
}

}  // namespace

GaitParams Floor() { return Make(0.090, 0.12, 99, 8); }

GaitParams Terrain(const std::string& terrain) {
  if (terrain == "floor") return Floor();
  if (terrain == "grass") return Make(0.090, 0.10, 99, 6);
  if (terrain == "ice") return Make(0.100, 0.10, 99, 6);
  if (terrain == "pebbles") return Make(0.090, 0.10, 99, 6);
  if (terrain == "sand") return Make(0.100, 0.15, 99, 6);
  throw Error(ErrorCode::kInvalidArgument, "unknown terrain '" + terrain + "'");
}

GaitParams Incline(int degrees) {
  GaitParams p = Make(0.140, 0.20, 99, 10);
  p.tolerance_low = 0.10;
  switch (degrees) {
    case 0: case 5: case 10: case 15: break;
    case 20: case 25: p.tolerance_high = 0.15; break;
    case 28: p.SetRange(0.180); break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "no incline preset for " + std::to_string(degrees) + " degrees");
  }
  return p;
}

GaitParams ShapeMorphing(int range_mm) {
  switch (range_mm) {
    case 90: return Make(0.090, 0.12, 99, 8);
    case 120: return Make(0.120, 0.12, 99, 8);
    case 150: return Make(0.150, 0.15, 99, 8);
    case 180: return Make(0.180, 0.15, 99, 8);
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "no shape morphing preset for range " + std::to_string(range_mm));
  }
}

GaitParams TurnInPlace() { return Make(0.100, 0.15, 80, 6); }
GaitParams CrawlingTurn() { return Make(0.090, 0.17, 99, 6); }

GaitParams GradualTurn(bool counterclockwise) {
  GaitParams p = Make(0.080, 0.10, 99, 6);
  p.range_left = counterclockwise ? 0.080 : 0.160;
  p.range_right = counterclockwise ? 0.160 : 0.080;
  return p;
}

GaitParams Dynamic() { return Make(0.090, 0.07, 99, 10); }
GaitParams Impact() { return Make(0.100, 0.12, 99, 6); }

GaitParams TrajectoryAction(double range_left, double range_right) {
  GaitParams p = Make(range_left, 0.20, 99, 6);
  p.range_right = range_right;
  return p;
}

GaitParams Limbo(double range) { return Make(range, 0.20, 99, 6); }

}  // namespace presets

const std::map<std::string, Gait>& GaitLibrary() {
  static const std::map<std::string, Gait> library = [] {
    std::map<std::string, Gait> m;
    auto add = [&](std::string name, std::vector<GaitStep> steps, GaitParams params) {
      Gait g{name, std::move(steps), params};
      m.emplace(std::move(name), std::move(g));
    };
    add("quasistatic", {{1, 1, 0.1, 1, 1, 0.1}, {0, 1, 1, 0, 1, 0.1}}, presets::Floor());
    add("dynamic", {{0, 1, 1, 0, 1, 0.1}}, presets::Dynamic());
    add("ccw_turn",
        {{1, 1, 1, 0, 1, 1}, {1, 0, 1, 0, 1, 1}, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1}},
        presets::TurnInPlace());
    add("cw_turn",
        {{0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 1}, {0, 0, 0.8, 0, 1, 1}, {1, 1, 1, 1, 1, 1}},
        presets::TurnInPlace());
    add("crawl_left_cw",
        {{0, 0, 0, 0.1, 0.1, 0.1}, {0, 0, 0, 1, 0.1, 1}, {0, 0, 0, 1, 1, 0.1}},
        presets::CrawlingTurn());
    add("crawl_left_ccw",
        {{0, 0, 0, 0.1, 0.1, 0.1}, {0, 0, 0, 1, 1, 0.1}, {0, 0, 0, 1, 0.1, 1}},
        presets::CrawlingTurn());
    add("quasistatic_impact",
        {{1, 1, 0.1, 1, 1, 0.1}, {0, 1, 1, 0, 1, 0.1}, {1, 1, 1, 1, 1, 1}},
        presets::Impact());
    return m;
  }();
  return library;
}

const Gait& LibraryGait(const std::string& name) {
  const auto& lib = GaitLibrary();
  const auto it = lib.find(name);
  if (it == lib.end()) throw Error(ErrorCode::kInvalidArgument, "unknown gait '" + name + "'");
  return it->second;
}

}  // namespace tribar
