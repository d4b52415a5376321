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

#ifndef TRIBAR_SIMULATOR_HPP_
#define TRIBAR_SIMULATOR_HPP_

#include <array>
#include <deque>
#include <string>
#include <vector>

#include "tribar/gait.hpp"
#include "tribar/pose2d.hpp"
#include "tribar/shape.hpp"
#include "tribar/sim_config.hpp"
#include "tribar/symmetry.hpp"

namespace tribar {

struct SimState {
  RobotShape shape;  // world frame, ground is z = 0
  Face face = Face::kF0;
  Pose2D pose;       // principal axis angle and ground projection of centroid
  std::array<double, kNumActuated> cables{};  // motor-side cable lengths
  std::vector<int> contacts;
  double time = 0.0;
};

// Planar pose of a world-frame shape: centroid x, y and principal axis angle.
Pose2D PoseOf(const RobotShape& shape);

// Canonical rest shape lying on F0 with its principal axis along world +x and
// centroid above the origin.
SimState RestState(const SimConfig& config);

// The same state spun about the vertical and shifted so its planar pose is
// `pose`. Contacts and cables are unchanged.
SimState PlaceState(const SimState& state, const Pose2D& pose);

// Face implied by the current ground contacts, if unambiguous.
std::optional<Face> DetectFace(const SimState& state);

// One tick of quasistatic physics: equilibrium shape for the given actuated
// lengths, placed without slip against the previous contacts, then settled.
SimState PhysicsStep(const SimState& state,
                     const std::array<double, kNumActuated>& actuated_lengths,
                     const SimConfig& config);

// Reduces the longest side of each actuated triangle until it is strictly
// shorter than the other two combined; a cable cannot hold a tendon longer
// than the geometry allows, it just goes slack.
std::array<double, kNumActuated> FeasibleLengths(
    const std::array<double, kNumActuated>& cables, const SimConfig& config);

// Tendon plant backed by the simulator. Each Apply integrates the motors and
// advances the physics one tick. Commands reach the motors after
// config.command_latency, so a stopped motor keeps running that long.
class SimPlant : public TendonPlant {
 public:
  SimPlant(SimState state, const SimConfig& config);

  std::array<double, kNumActuated> Lengths() const override;
  void Apply(const std::array<double, kNumActuated>& commands, double dt) override;

  const SimState& state() const { return state_; }
  const std::vector<SimState>& history() const { return history_; }
  void set_record(bool on) { record_ = on; }
  void ClearHistory() { history_.clear(); }

 private:
  SimState state_;
  SimConfig config_;
  bool record_ = true;
  std::vector<SimState> history_;
  std::deque<std::array<double, kNumActuated>> in_flight_;
};

struct RolloutOptions {
  // Re-target every cycle to the bottom face the robot is on.
  bool symmetry_reduction = true;
  bool reversed = false;
  // Expected face change per cycle; cycles that end elsewhere are reported.
  std::optional<int> face_advance;
  bool record_every_tick = true;
};

struct FaceChange {
  double time = 0.0;
  Face from = Face::kF0;
  Face to = Face::kF0;
};

struct RolloutResult {
  std::vector<SimState> trace;  // includes the initial state
  std::vector<FaceChange> face_changes;
  std::vector<std::string> diagnostics;
  SimState final_state;
  int steps_executed = 0;
};

// Runs `cycles` repetitions of `gait`. With symmetry reduction each cycle is
// translated (and optionally reversed) for the face the robot stands on.
RolloutResult Rollout(const Gait& gait, int cycles, const SimState& start,
                      const SimConfig& config, const RolloutOptions& options = {});

}  // namespace tribar

#endif  // TRIBAR_SIMULATOR_HPP_
