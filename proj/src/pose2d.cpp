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

#include "tribar/pose2d.hpp"

#include <cmath>
#include <numbers>

namespace tribar {

double NormalizeAngle(double theta) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::fmod(theta, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

Mat2 Rotation2D(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

Pose2D Pose2D::Inverse() const {
  return Pose2D(-theta, -(Rotation2D(theta).transpose() * t));
}

Pose2D Compose(const Pose2D& pose_a, const Pose2D& pose_b) {
  return Pose2D(pose_a.theta + pose_b.theta,
                pose_a.t + Rotation2D(pose_a.theta) * pose_b.t);
}

Pose2D RelativeMotion(const Pose2D& from, const Pose2D& to) {
  return Pose2D(to.theta - from.theta,
                Rotation2D(from.theta).transpose() * (to.t - from.t));
}

}  // namespace tribar
