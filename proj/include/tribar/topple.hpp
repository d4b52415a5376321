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

#ifndef TRIBAR_TOPPLE_HPP_
#define TRIBAR_TOPPLE_HPP_

#include <vector>

#include "tribar/shape.hpp"

namespace tribar {

struct SettleOptions {
  Vec3 gravity_direction = Vec3(0.0, 0.0, -1.0);
  double contact_tolerance = 0.001;
  int max_topples = 20;
};

struct SettleResult {
  RobotShape shape;
  std::vector<int> contacts;  // ascending node ids within tolerance of z = 0
  int topples = 0;
  // CoM height before each topple and after the last one.
  std::vector<double> com_heights;
};

// Nodes whose height is within `tolerance` of the ground plane z = 0.
std::vector<int> ContactNodes(const RobotShape& shape, double tolerance);

// Counter-clockwise convex hull of 2D points (indices into `points`).
std::vector<int> ConvexHull2D(const std::vector<Vec2>& points);

// Signed distance of `p` outside the convex polygon (negative inside).
double OutsideDistance(const std::vector<Vec2>& polygon, const Vec2& p);

// Ground projection of the centroid along gravity.
Vec2 ProjectAlongGravity(const Vec3& point, const Vec3& gravity_direction);

// Smallest positive rotation about the horizontal axis (`pivot`, `axis`) that
// brings another node down to z = 0. Returns the angle and the node.
struct PivotHit {
  double angle = 0.0;
  int node = -1;
};
PivotHit NextGroundContact(const RobotShape& shape, const Vec3& pivot,
                           const Vec3& axis, const std::vector<int>& exclude,
                           double tolerance);

RobotShape RotateAbout(const RobotShape& shape, const Vec3& pivot,
                       const Vec3& axis, double angle);

// Quasistatic rigid placement on flat ground with no slip: drops the body to
// z = 0 and pivots it about contact points or support edges, in the sense of
// the gravity torque, until the centroid projects inside the support polygon.
// Throws kSettleDivergence after more than max_topples pivots.
SettleResult Settle(const RobotShape& shape, const SettleOptions& options);

// Share of the body weight carried by each contact (zero for others).
std::array<double, kNumNodes> ContactLoads(const RobotShape& shape,
                                           const std::vector<int>& contacts,
                                           const Vec3& gravity_direction);

}  // namespace tribar

#endif  // TRIBAR_TOPPLE_HPP_
