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

#ifndef TRIBAR_POSE2D_HPP_
#define TRIBAR_POSE2D_HPP_

#include "tribar/topology.hpp"

namespace tribar {

// Maps into (-pi, pi].
double NormalizeAngle(double theta);

Mat2 Rotation2D(double theta);

// Planar rigid transform. As a world pose it places the body frame: theta is
// the angle of the body x-axis (the principal axis) from world x, t is the
// body origin. As an action it is the motion expressed in the body frame the
// robot had before acting.
struct Pose2D {
  double theta = 0.0;
  Vec2 t = Vec2::Zero();

  Pose2D() = default;
  Pose2D(double angle, const Vec2& translation)
      : theta(NormalizeAngle(angle)), t(translation) {}

  static Pose2D Identity() { return {}; }

  Vec2 Apply(const Vec2& p) const { return Rotation2D(theta) * p + t; }
  Pose2D Inverse() const;
};

// pose_b is expressed in the frame reached by pose_a:
//   R = R_a R_b,   t = t_a + R_a t_b.
Pose2D Compose(const Pose2D& pose_a, const Pose2D& pose_b);

// Motion between two world poses expressed in the first pose's frame:
//   dtheta = theta1 - theta0,   t = R(theta0)^T (t1 - t0).
Pose2D RelativeMotion(const Pose2D& from, const Pose2D& to);

}  // namespace tribar

#endif  // TRIBAR_POSE2D_HPP_
