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

#include "tribar/shape.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tribar/error.hpp"

namespace tribar {

std::array<double, kNumActuated> RobotShape::ActuatedLengths() const {
  std::array<double, kNumActuated> out{};
  for (int i = 0; i < kNumActuated; ++i) out[i] = EdgeLength(kActuatedTendons[i]);
  return out;
}

std::array<double, kNumPassive> RobotShape::PassiveLengths() const {
  std::array<double, kNumPassive> out{};
  for (int i = 0; i < kNumPassive; ++i) out[i] = EdgeLength(kPassiveTendons[i]);
  return out;
}

std::array<double, kNumSensors> RobotShape::SensorLengths() const {
  std::array<double, kNumSensors> out{};
  for (int i = 0; i < kNumSensors; ++i) out[i] = EdgeLength(kSensorEdges[i]);
  return out;
}

RobotShape RobotShape::Translated(const Vec3& v) const {
  RobotShape s = *this;
  for (auto& n : s.nodes) n += v;
  return s;
}

RobotShape RobotShape::Rotated(const Mat3& r) const {
  RobotShape s = *this;
  for (auto& n : s.nodes) n = r * n;
  return s;
}

RobotShape RobotShape::Mirrored() const {
  const double zc = Centroid(*this).z();
  RobotShape s = *this;
  for (auto& n : s.nodes) n.z() = 2.0 * zc - n.z();
  return s;
}

RobotShape RobotShape::Centered() const { return Translated(-Centroid(*this)); }

Vec3 Centroid(const RobotShape& shape) {
  Vec3 sum = Vec3::Zero();
  for (const auto& n : shape.nodes) sum += n;
  return sum / kNumNodes;
}

double ChiralityValue(const RobotShape& shape) {
  return shape.BarVector(0).dot(shape.BarVector(1).cross(shape.BarVector(2)));
}

int Chirality(const RobotShape& shape) { return ChiralityValue(shape) >= 0.0 ? 1 : -1; }

Vec3 OddCentroid(const RobotShape& shape) {
  return (shape[1] + shape[3] + shape[5]) / 3.0;
}

Vec3 EvenCentroid(const RobotShape& shape) {
  return (shape[0] + shape[2] + shape[4]) / 3.0;
}

Vec2 RotateQuarterTurn(const Vec2& v) { return {-v.y(), v.x()}; }

BodyAxes PrincipalAxis2D(const RobotShape& shape) {
  const Vec3 d = EvenCentroid(shape) - OddCentroid(shape);
  const Vec2 planar(d.x(), d.y());
  const double norm = planar.norm();
  if (norm < 1e-9) {
    throw Error(ErrorCode::kDegenerateAxis,
                "triangle centroids project to the same ground point");
  }
  BodyAxes axes;
  axes.principal_axis = planar / norm;
  axes.heading = RotateQuarterTurn(axes.principal_axis);
  return axes;
}

double MaxBarLengthError(const RobotShape& shape, double bar_length) {
  double worst = 0.0;
  for (const auto& bar : kBars) {
    worst = std::max(worst, std::abs(shape.EdgeLength(bar) - bar_length));
  }
  return worst;
}

BarConfiguration BarConfiguration::FromShape(const RobotShape& shape) {
  BarConfiguration b;
  for (int l = 0; l < kNumBars; ++l) {
    b.mid[l] = 0.5 * (shape[2 * l] + shape[2 * l + 1]);
    b.dir[l] = shape.BarVector(l).normalized();
  }
  return b;
}

RobotShape BarConfiguration::ToShape(double bar_length) const {
  RobotShape s;
  for (int l = 0; l < kNumBars; ++l) {
    s[2 * l] = mid[l] + 0.5 * bar_length * dir[l];
    s[2 * l + 1] = mid[l] - 0.5 * bar_length * dir[l];
  }
  return s;
}

std::array<Vec3, 2> BarConfiguration::TangentBasis(int bar) const {
  const Vec3& d = dir[bar];
  // Any axis not nearly parallel to d seeds the basis.
  Vec3 seed = std::abs(d.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = (seed - seed.dot(d) * d).normalized();
  Vec3 e2 = d.cross(e1);
  return {e1, e2};
}

void BarConfiguration::Retract(const Eigen::Matrix<double, 15, 1>& step) {
  for (int l = 0; l < kNumBars; ++l) {
    const auto basis = TangentBasis(l);
    mid[l] += step.segment<3>(5 * l);
    dir[l] = (dir[l] + step(5 * l + 3) * basis[0] + step(5 * l + 4) * basis[1])
                 .normalized();
  }
}

Eigen::Matrix<double, 18, 15> NodeJacobian(const BarConfiguration& bars,
                                           double bar_length) {
  Eigen::Matrix<double, 18, 15> j = Eigen::Matrix<double, 18, 15>::Zero();
  for (int l = 0; l < kNumBars; ++l) {
    const auto basis = bars.TangentBasis(l);
    const int top = 3 * (2 * l);
    const int bottom = 3 * (2 * l + 1);
    j.block<3, 3>(top, 5 * l) = Mat3::Identity();
    j.block<3, 3>(bottom, 5 * l) = Mat3::Identity();
    for (int k = 0; k < 2; ++k) {
      j.block<3, 1>(top, 5 * l + 3 + k) = 0.5 * bar_length * basis[k];
      j.block<3, 1>(bottom, 5 * l + 3 + k) = -0.5 * bar_length * basis[k];
    }
  }
  return j;
}

RobotShape RigidTransform::Apply(const RobotShape& s) const {
  RobotShape out;
  for (int i = 0; i < kNumNodes; ++i) out[i] = Apply(s[i]);
  return out;
}

Mat3 ProperRotationFromCorrelation(const Mat3& correlation) {
  Eigen::JacobiSVD<Mat3> svd(correlation, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return u * d * v.transpose();
}

RigidTransform FitRigid(const RobotShape& from, const RobotShape& to,
                        const std::array<double, kNumNodes>& weights) {
  double total = 0.0;
  Vec3 cf = Vec3::Zero();
  Vec3 ct = Vec3::Zero();
  for (int i = 0; i < kNumNodes; ++i) {
    total += weights[i];
    cf += weights[i] * from[i];
    ct += weights[i] * to[i];
  }
  cf /= total;
  ct /= total;
  Mat3 h = Mat3::Zero();
  for (int i = 0; i < kNumNodes; ++i) {
    h += weights[i] * (to[i] - ct) * (from[i] - cf).transpose();
  }
  RigidTransform t;
  t.rotation = ProperRotationFromCorrelation(h);
  t.translation = ct - t.rotation * cf;
  return t;
}

double RotationAngle(const Mat3& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  // acos loses precision near zero; use the skew part there.
  const Vec3 w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  return std::atan2(0.5 * w.norm(), c);
}

}  // namespace tribar
