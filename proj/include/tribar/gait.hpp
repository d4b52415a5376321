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

#ifndef TRIBAR_GAIT_HPP_
#define TRIBAR_GAIT_HPP_

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tribar/normalization.hpp"
#include "tribar/topology.hpp"

namespace tribar {

// Controller and length parameters shared by every step of a gait. Lengths in
// meters; tolerances and positions are dimensionless.
struct GaitParams {
  double min_length = 0.100;
  double range_left = 0.090;   // tendons A, B, C (odd triangle)
  double range_right = 0.090;  // tendons D, E, F (even triangle)
  double tolerance_high = 0.12;  // for targets above 0.5
  double tolerance_low = 0.12;
  double max_speed = 99.0;
  double kp = 8.0;
  double ki = 0.01;
  double kd = 0.5;
  Normalization normalization = Normalization::kMinPlusRange;

  double Range(int tendon) const { return tendon < 3 ? range_left : range_right; }
  void SetRange(double range) { range_left = range_right = range; }
  double Tolerance(double target) const {
    return target > 0.5 ? tolerance_high : tolerance_low;
  }
  // Throws kInvalidArgument when a field is outside its domain.
  void Validate() const;
};

using GaitStep = std::array<double, kNumActuated>;

struct Gait {
  std::string name;
  std::vector<GaitStep> steps;
  GaitParams params;

  void Validate() const;
};

double Normalize(double length, double min_length, double range,
                 Normalization mode = Normalization::kMinPlusRange);
double Denormalize(double position, double min_length, double range,
                   Normalization mode = Normalization::kMinPlusRange);
double Normalize(double length, const GaitParams& params, int tendon = 0);
double Denormalize(double position, const GaitParams& params, int tendon = 0);

// u_T = K_P e_T + K_I sum(e) + K_D (e_T - e_{T-1}), scaled by max speed and
// clamped to [-max_speed, max_speed]. `errors` is the history oldest first;
// a single sample has no derivative term.
double PidCommand(std::span<const double> errors, const GaitParams& params);

// Incremental form of PidCommand for one tendon.
class PidController {
 public:
  double Update(double error, const GaitParams& params);
  void Reset();
  double integral() const { return integral_; }

 private:
  double integral_ = 0.0;
  double previous_ = 0.0;
  bool has_previous_ = false;
};

// Anything whose six actuated tendon lengths respond to motor commands.
// Positive commands reel cable in (shorten the tendon).
class TendonPlant {
 public:
  virtual ~TendonPlant() = default;
  virtual std::array<double, kNumActuated> Lengths() const = 0;
  virtual void Apply(const std::array<double, kNumActuated>& commands, double dt) = 0;
};

// dL/dt = -speed * command / 99 per tendon, clamped to [min, max].
class FirstOrderPlant : public TendonPlant {
 public:
  FirstOrderPlant(const std::array<double, kNumActuated>& lengths, double speed,
                  double min_length = 0.0, double max_length = 1.0)
      : lengths_(lengths), speed_(speed), min_(min_length), max_(max_length) {}

  std::array<double, kNumActuated> Lengths() const override { return lengths_; }
  void Apply(const std::array<double, kNumActuated>& commands, double dt) override;

 private:
  std::array<double, kNumActuated> lengths_;
  double speed_;
  double min_;
  double max_;
};

struct TickRecord {
  int tick = 0;
  std::array<double, kNumActuated> positions{};
  std::array<double, kNumActuated> commands{};
  std::array<bool, kNumActuated> latched{};
};

struct StepResult {
  int ticks = 0;
  std::vector<TickRecord> trace;
};

struct StepOptions {
  double tick_seconds = 0.01;
  int max_ticks = 1500;
  bool record_trace = false;
};

// Drives every tendon with its PID command until it first comes within
// tolerance of its target, then stops that motor for the rest of the step.
// Returns once all six have latched. Throws kStepTimeout otherwise.
StepResult StepUntilReached(TendonPlant& plant, const GaitStep& step,
                            const GaitParams& params, const StepOptions& options);

// Parameter presets from the characterization experiments.
namespace presets {

GaitParams Floor();                   // flat floor terrain
GaitParams Terrain(const std::string& terrain);  // floor|grass|ice|pebbles|sand
GaitParams Incline(int degrees);      // 0, 5, 10, 15, 20, 25, 28
GaitParams ShapeMorphing(int range_mm);  // 90, 120, 150, 180
GaitParams TurnInPlace();
GaitParams CrawlingTurn();
GaitParams GradualTurn(bool counterclockwise);
GaitParams Dynamic();
GaitParams Impact();
GaitParams TrajectoryAction(double range_left, double range_right);
GaitParams Limbo(double range);

}  // namespace presets

// Named gaits, each with the parameter preset it was characterized with.
// Names: quasistatic, dynamic, ccw_turn, cw_turn, crawl_left_cw,
// crawl_left_ccw, quasistatic_impact.
const std::map<std::string, Gait>& GaitLibrary();
const Gait& LibraryGait(const std::string& name);

}  // namespace tribar

#endif  // TRIBAR_GAIT_HPP_
