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

#ifndef TRIBAR_SHAPE_HPP_
#define TRIBAR_SHAPE_HPP_

#include <array>
#include <vector>

#include "tribar/topology.hpp"

namespace tribar {

// Sign of the triple product of the three bar vectors on the canonical rest
// shape. Distance-only reconstructions admit a mirror image; anything with
// the opposite sign is that mirror.
inline constexpr int kHandedness = 1;

struct RobotShape {
  std::array<Vec3, kNumNodes> nodes;

  const Vec3& operator[](int i) const { return nodes[i]; }
  Vec3& operator[](int i) { return nodes[i]; }

  double EdgeLength(const Edge& e) const { return (nodes[e.a] - nodes[e.b]).norm(); }
  // N_{2l} - N_{2l+1}.
  Vec3 BarVector(int bar) const { return nodes[2 * bar] - nodes[2 * bar + 1]; }

  std::array<double, kNumActuated> ActuatedLengths() const;
  std::array<double, kNumPassive> PassiveLengths() const;
  std::array<double, kNumSensors> SensorLengths() const;

  RobotShape Translated(const Vec3& v) const;
  RobotShape Rotated(const Mat3& r) const;
  // Reflection through the plane z = centroid.z.
  RobotShape Mirrored() const;
  RobotShape Centered() const;
};

Vec3 Centroid(const RobotShape& shape);

// Triple product bar0 . (bar1 x bar2) and its sign.
double ChiralityValue(const RobotShape& shape);
int Chirality(const RobotShape& shape);

Vec3 OddCentroid(const RobotShape& shape);
Vec3 EvenCentroid(const RobotShape& shape);

struct BodyAxes {
  Vec2 principal_axis;
  Vec2 heading;
};

// Ground-plane projection of the vector from centroid{1,3,5} to
// centroid{0,2,4}; heading is that axis turned +90 degrees.
// Throws kDegenerateAxis when the projected centroids coincide (< 1e-9 m).
BodyAxes PrincipalAxis2D(const RobotShape& shape);

Vec2 RotateQuarterTurn(const Vec2& v);

// Largest |bar length - L| over the three bars.
double MaxBarLengthError(const RobotShape& shape, double bar_length);

// Bars as midpoint plus unit direction. Nodes derived from this always sit
// exactly L apart, so solvers working in these coordinates never see a bar
// length constraint.
struct BarConfiguration {
  std::array<Vec3, kNumBars> mid;
  std::array<Vec3, kNumBars> dir;  // unit, from node 2l+1 towards node 2l

  static BarConfiguration FromShape(const RobotShape& shape);
  RobotShape ToShape(double bar_length) const;

  // Applies a 15-vector step: per bar 3 midpoint components followed by 2
  // tangent-plane components of the direction, then renormalizes.
  void Retract(const Eigen::Matrix<double, 15, 1>& step);

  // Tangent basis (two orthonormal vectors perpendicular to dir[bar]).
  std::array<Vec3, 2> TangentBasis(int bar) const;
};

// Derivative of node positions w.r.t. the 15 local parameters: rows are the
// 18 node coordinates.
Eigen::Matrix<double, 18, 15> NodeJacobian(const BarConfiguration& bars,
                                           double bar_length);

// Best rigid transform (rotation, translation) mapping `from` onto `to` in the
// weighted least-squares sense.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 Apply(const Vec3& p) const { return rotation * p + translation; }
  RobotShape Apply(const RobotShape& s) const;
};

RigidTransform FitRigid(const RobotShape& from, const RobotShape& to,
                        const std::array<double, kNumNodes>& weights);

// Proper rotation closest (Frobenius) to an arbitrary 3x3 matrix built from
// correspondences sum(w * target * source^T).
Mat3 ProperRotationFromCorrelation(const Mat3& correlation);

double RotationAngle(const Mat3& r);

}  // namespace tribar

#endif  // TRIBAR_SHAPE_HPP_
