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

#include "tribar/topple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "tribar/error.hpp"

namespace tribar {
namespace {

double Cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool Contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

RobotShape DropToGround(const RobotShape& shape) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& n : shape.nodes) lowest = std::min(lowest, n.z());
  return shape.Translated(Vec3(0.0, 0.0, -lowest));
}

// Unit horizontal axis through `pivot` oriented so the gravity torque about it
// is non-negative.
Vec3 OrientAlongTorque(Vec3 axis, const Vec3& pivot, const Vec3& com,
                       const Vec3& gravity) {
  axis.z() = 0.0;
  axis.normalize();
  if (axis.dot((com - pivot).cross(gravity)) < 0.0) axis = -axis;
  return axis;
}

}  // namespace

std::vector<int> ContactNodes(const RobotShape& shape, double tolerance) {
  std::vector<int> out;
  for (int i = 0; i < kNumNodes; ++i) {
    if (shape[i].z() <= tolerance) out.push_back(i);
  }
  return out;
}

std::vector<int> ConvexHull2D(const std::vector<Vec2>& points) {
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (points[a].x() != points[b].x()) return points[a].x() < points[b].x();
    return points[a].y() < points[b].y();
  });
  if (idx.size() < 3) return idx;
  std::vector<int> hull(2 * idx.size());
  std::size_t k = 0;
  auto turn = [&](int o, int a, int b) {
    return Cross2(points[a] - points[o], points[b] - points[o]);
  };
  for (int i : idx) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], i) <= 1e-15) --k;
    hull[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, t = k + 1; j-- > 0;) {
    const int i = idx[j];
    while (k >= t && turn(hull[k - 2], hull[k - 1], i) <= 1e-15) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

double OutsideDistance(const std::vector<Vec2>& polygon, const Vec2& p) {
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    const Vec2 edge = (b - a).normalized();
    // Outward normal of a counter-clockwise polygon is the edge turned right.
    const Vec2 normal(edge.y(), -edge.x());
    worst = std::max(worst, normal.dot(p - a));
  }
  return worst;
}

Vec2 ProjectAlongGravity(const Vec3& point, const Vec3& g) {
  const double s = point.z() / g.z();
  return Vec2(point.x() - s * g.x(), point.y() - s * g.y());
}

RobotShape RotateAbout(const RobotShape& shape, const Vec3& pivot,
                       const Vec3& axis, double angle) {
  const Mat3 r = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  RobotShape out;
  for (int i = 0; i < kNumNodes; ++i) out[i] = pivot + r * (shape[i] - pivot);
  return out;
}

PivotHit NextGroundContact(const RobotShape& shape, const Vec3& pivot,
                           const Vec3& axis, const std::vector<int>& exclude,
                           double tolerance) {
  // With a horizontal axis u, a node at r = p - pivot has height
  //   z(phi) = r_z cos(phi) + (u x r)_z sin(phi),
  // which first returns to zero at phi = atan2(r_z, -(u x r)_z).
  PivotHit best;
  best.angle = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kNumNodes; ++i) {
    if (Contains(exclude, i)) continue;
    const Vec3 r = shape[i] - pivot;
    const double a = r.z();
    if (a <= tolerance) continue;
    const double b = axis.cross(r).z();
    const double phi = std::atan2(a, -b);
    if (phi < best.angle) {
      best.angle = phi;
      best.node = i;
    }
  }
  return best;
}

SettleResult Settle(const RobotShape& input, const SettleOptions& options) {
  const Vec3 g = options.gravity_direction.normalized();
  const double tol = options.contact_tolerance;
  SettleResult result;
  RobotShape shape = DropToGround(input);

  for (;;) {
    std::vector<int> contacts = ContactNodes(shape, tol);
    const Vec3 com = Centroid(shape);
    const Vec2 com2 = ProjectAlongGravity(com, g);

    std::vector<Vec2> pts;
    for (int c : contacts) pts.emplace_back(shape[c].x(), shape[c].y());
    std::vector<int> hull = ConvexHull2D(pts);

    Vec3 pivot;
    Vec3 axis;
    std::vector<int> on_axis;
    if (hull.size() >= 3) {
      std::vector<Vec2> poly;
      for (int h : hull) poly.push_back(pts[h]);
      if (OutsideDistance(poly, com2) <= 0.0) {
        result.shape = shape;
        result.contacts = contacts;
        result.com_heights.push_back(com.z());
        return result;
      }
      // Pivot about the support edge the centroid has crossed furthest.
      double worst = -std::numeric_limits<double>::infinity();
      std::size_t edge = 0;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        const Vec2 e = (b - a).normalized();
        const double d = Vec2(e.y(), -e.x()).dot(com2 - a);
        if (d > worst) {
          worst = d;
          edge = i;
        }
      }
      const int ia = contacts[hull[edge]];
      const int ib = contacts[hull[(edge + 1) % poly.size()]];
      pivot = shape[ia];
      axis = OrientAlongTorque(shape[ib] - shape[ia], pivot, com, g);
      on_axis = contacts;
    } else if (contacts.size() >= 2) {
      // Two contacts, or several on one line: the extreme pair is the hinge.
      const int ia = contacts[hull.front()];
      const int ib = contacts[hull.back()];
      pivot = shape[ia];
      axis = OrientAlongTorque(shape[ib] - shape[ia], pivot, com, g);
      on_axis = contacts;
    } else {
      const int ia = contacts.front();
      pivot = shape[ia];
      Vec3 torque = (com - pivot).cross(g);
      torque.z() = 0.0;
      if (torque.norm() < 1e-12) {
        // Balanced on a point: tip towards the lowest other node.
        int lowest = -1;
        for (int i = 0; i < kNumNodes; ++i) {
          if (i != ia && (lowest < 0 || shape[i].z() < shape[lowest].z())) lowest = i;
        }
        const Vec3 d = shape[lowest] - pivot;
        torque = Vec3(-d.y(), d.x(), 0.0);
      }
      axis = torque.normalized();
      on_axis = contacts;
    }

    if (result.topples >= options.max_topples) {
      throw Error(ErrorCode::kSettleDivergence,
                  "no stable support after " + std::to_string(result.topples) +
                      " topples");
    }
    const PivotHit hit = NextGroundContact(shape, pivot, axis, on_axis, tol);
    if (hit.node < 0) {
      throw Error(ErrorCode::kSettleDivergence, "pivot found no new contact");
    }
    result.com_heights.push_back(com.z());
    shape = DropToGround(RotateAbout(shape, pivot, axis, hit.angle));
    ++result.topples;
  }
}

std::array<double, kNumNodes> ContactLoads(const RobotShape& shape,
                                           const std::vector<int>& contacts,
                                           const Vec3& gravity_direction) {
  std::array<double, kNumNodes> loads{};
  if (contacts.empty()) return loads;
  const Vec2 com2 = ProjectAlongGravity(Centroid(shape), gravity_direction);
  const int n = static_cast<int>(contacts.size());
  // Minimum-norm loads that balance force and both tipping moments.
  Eigen::MatrixXd a(3, n);
  for (int j = 0; j < n; ++j) {
    a(0, j) = 1.0;
    a(1, j) = shape[contacts[j]].x();
    a(2, j) = shape[contacts[j]].y();
  }
  const Eigen::Vector3d rhs(1.0, com2.x(), com2.y());
  const Eigen::VectorXd f = a.completeOrthogonalDecomposition().solve(rhs);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    loads[contacts[j]] = std::max(f(j), 0.0);
    total += loads[contacts[j]];
  }
  if (total <= 0.0) {
    for (int c : contacts) loads[c] = 1.0 / n;
  } else {
    for (int c : contacts) loads[c] /= total;
  }
  return loads;
}

}  // namespace tribar
