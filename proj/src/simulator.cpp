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

#include "tribar/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include "tribar/error.hpp"
#include "tribar/form_find.hpp"
#include "tribar/topple.hpp"

namespace tribar {
namespace {

SettleOptions SettleOptionsFor(const SimConfig& config) {
  SettleOptions o;
  o.gravity_direction = config.GravityDirection();
  o.contact_tolerance = config.contact_tolerance;
  return o;
}

// Rotation taking the supporting plane of F0 onto the ground.
Mat3 FaceDownRotation(const RobotShape& body) {
  const auto& nodes = FaceNodes(Face::kF0);
  const Vec3 c = Centroid(body);
  Mat3 best = Mat3::Identity();
  double best_margin = -1.0;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<int, 3> tri{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) tri[k++] = nodes[i];
    }
    const Vec3& p = body[tri[0]];
    Vec3 n = (body[tri[1]] - p).cross(body[tri[2]] - p).normalized();
    if (n.dot(c - p) < 0.0) n = -n;
    double lowest = 0.0;
    for (const auto& q : body.nodes) lowest = std::min(lowest, n.dot(q - p));
    if (lowest < -1e-9) continue;  // not a supporting plane
    // Prefer the plane whose triangle best contains the centroid projection.
    const Vec3 cp = c - n.dot(c - p) * n;
    double margin = 1.0;
    for (int e = 0; e < 3; ++e) {
      const Vec3& a = body[tri[e]];
      const Vec3& b = body[tri[(e + 1) % 3]];
      const Vec3& o = body[tri[(e + 2) % 3]];
      const Vec3 inward = n.cross(b - a) * ((n.cross(b - a)).dot(o - a) >= 0 ? 1 : -1);
      margin = std::min(margin, inward.normalized().dot(cp - a));
    }
    if (margin > best_margin) {
      best_margin = margin;
      best = Eigen::Quaterniond::FromTwoVectors(-n, -Vec3::UnitZ()).toRotationMatrix();
    }
  }
  return best;
}

}  // namespace

Pose2D PoseOf(const RobotShape& shape) {
  const BodyAxes axes = PrincipalAxis2D(shape);
  const Vec3 c = Centroid(shape);
  return Pose2D(std::atan2(axes.principal_axis.y(), axes.principal_axis.x()),
                Vec2(c.x(), c.y()));
}

std::optional<Face> DetectFace(const SimState& state) {
  return FaceContaining(state.contacts);
}

SimState RestState(const SimConfig& config) {
  const RobotShape& body = CanonicalRestShapeBody();
  RobotShape s = body.Rotated(FaceDownRotation(body));
  // Spin about the vertical so the principal axis lies along +x.
  const BodyAxes axes = PrincipalAxis2D(s);
  const double spin = -std::atan2(axes.principal_axis.y(), axes.principal_axis.x());
  s = s.Rotated(Eigen::AngleAxisd(spin, Vec3::UnitZ()).toRotationMatrix());
  SettleResult settled = Settle(s, SettleOptionsFor(config));
  const Vec3 c = Centroid(settled.shape);
  SimState state;
  state.shape = settled.shape.Translated(Vec3(-c.x(), -c.y(), 0.0));
  state.contacts = settled.contacts;
  state.face = Face::kF0;
  state.pose = PoseOf(state.shape);
  state.cables = state.shape.ActuatedLengths();
  return state;
}

SimState PlaceState(const SimState& state, const Pose2D& pose) {
  SimState out = state;
  const Vec3 c = Centroid(state.shape);
  const double spin = pose.theta - state.pose.theta;
  out.shape = state.shape.Translated(Vec3(-c.x(), -c.y(), 0.0))
                  .Rotated(Eigen::AngleAxisd(spin, Vec3::UnitZ()).toRotationMatrix())
                  .Translated(Vec3(pose.t.x(), pose.t.y(), 0.0));
  out.pose = PoseOf(out.shape);
  return out;
}

std::array<double, kNumActuated> FeasibleLengths(
    const std::array<double, kNumActuated>& cables, const SimConfig& config) {
  std::array<double, kNumActuated> out = cables;
  for (int side = 0; side < 2; ++side) {
    double* t = out.data() + 3 * side;
    for (int i = 0; i < 3; ++i) {
      t[i] = std::clamp(t[i], config.min_cable_length, config.max_cable_length);
    }
    const int longest = static_cast<int>(std::max_element(t, t + 3) - t);
    const double others = t[(longest + 1) % 3] + t[(longest + 2) % 3];
    t[longest] = std::min(t[longest], others - config.triangle_margin);
  }
  return out;
}

SimState PhysicsStep(const SimState& state,
                     const std::array<double, kNumActuated>& actuated_lengths,
                     const SimConfig& config) {
  const RobotShape body = FormFind(actuated_lengths, config, state.shape);
  std::array<double, kNumNodes> weights =
      ContactLoads(state.shape, state.contacts, config.GravityDirection());
  for (double& w : weights) w += 1e-4;
  const RobotShape placed = FitRigid(body, state.shape, weights).Apply(body);
  const SettleResult settled = Settle(placed, SettleOptionsFor(config));

  SimState next = state;
  next.shape = settled.shape;
  next.contacts = settled.contacts;
  if (auto f = FaceContaining(next.contacts)) next.face = *f;
  next.pose = PoseOf(next.shape);
  next.time = state.time + config.TickSeconds();
  return next;
}

SimPlant::SimPlant(SimState state, const SimConfig& config)
    : state_(std::move(state)), config_(config) {}

std::array<double, kNumActuated> SimPlant::Lengths() const {
  return state_.shape.ActuatedLengths();
}

void SimPlant::Apply(const std::array<double, kNumActuated>& issued, double dt) {
  const auto delay = static_cast<std::size_t>(std::lround(config_.command_latency / dt));
  in_flight_.push_back(issued);
  std::array<double, kNumActuated> commands{};
  if (in_flight_.size() > delay) {
    commands = in_flight_.front();
    in_flight_.pop_front();
  }
  const auto actual = state_.shape.ActuatedLengths();
  std::array<double, kNumActuated> cables = state_.cables;
  for (int i = 0; i < kNumActuated; ++i) {
    cables[i] -= config_.motor_speed * commands[i] / 99.0 * dt;
    // A paid-out cable hangs slack; the parallel sensor tendon keeps it from
    // accumulating more than a few millimetres of slack.
    cables[i] = std::clamp(cables[i], config_.min_cable_length,
                           std::min(config_.max_cable_length, actual[i] + 0.005));
  }
  const auto lengths = FeasibleLengths(cables, config_);
  SimState next = PhysicsStep(state_, lengths, config_);
  next.cables = cables;
  state_ = std::move(next);
  if (record_) history_.push_back(state_);
}

RolloutResult Rollout(const Gait& gait, int cycles, const SimState& start,
                      const SimConfig& config, const RolloutOptions& options) {
  gait.Validate();
  RolloutResult result;
  result.trace.push_back(start);
  SimPlant plant(start, config);
  plant.set_record(options.record_every_tick);

  StepOptions step_options;
  step_options.tick_seconds = config.TickSeconds();
  step_options.max_ticks = config.max_ticks_per_step;

  Face face = start.face;
  for (int cycle = 0; cycle < cycles; ++cycle) {
    const Face cycle_face = plant.state().face;
    Gait g = gait;
    g.params.normalization = config.normalization;
    if (options.reversed) g = ReverseGait(g, Face::kF0);
    if (options.symmetry_reduction) g = TranslateGait(g, cycle_face);
    for (const auto& step : g.steps) {
      plant.ClearHistory();
      StepUntilReached(plant, step, g.params, step_options);
      ++result.steps_executed;
      if (options.record_every_tick) {
        for (const auto& s : plant.history()) {
          if (s.face != face) result.face_changes.push_back({s.time, face, s.face});
          face = s.face;
          result.trace.push_back(s);
        }
      } else {
        const SimState& s = plant.state();
        if (s.face != face) result.face_changes.push_back({s.time, face, s.face});
        face = s.face;
        result.trace.push_back(s);
      }
    }
    if (options.face_advance) {
      const int adv = options.reversed ? -*options.face_advance : *options.face_advance;
      const Face expected = AdvanceFace(cycle_face, adv);
      if (plant.state().face != expected) {
        result.diagnostics.push_back(
            "cycle " + std::to_string(cycle) + ": expected face " +
            std::string(FaceName(expected)) + ", simulator reports " +
            std::string(FaceName(plant.state().face)));
      }
    }
  }
  result.final_state = plant.state();
  return result;
}

}  // namespace tribar
