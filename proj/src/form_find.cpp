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

#include "tribar/form_find.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "tribar/error.hpp"
#include "tribar/sim_config.hpp"

namespace tribar {
namespace {

using Vec15 = Eigen::Matrix<double, 15, 1>;
using Mat15 = Eigen::Matrix<double, 15, 15>;
using Jac18 = Eigen::Matrix<double, 18, 15>;

// d(length)/d(params) for one edge.
Eigen::Matrix<double, 1, 15> EdgeGradient(const RobotShape& s, const Edge& e,
                                          const Jac18& node_jac) {
  const Vec3 u = (s[e.a] - s[e.b]).normalized();
  return u.transpose() * (node_jac.block<3, 15>(3 * e.a, 0) -
                          node_jac.block<3, 15>(3 * e.b, 0));
}

double ConstraintNorm(const RobotShape& s,
                      const std::array<double, kNumActuated>& targets) {
  double worst = 0.0;
  for (int i = 0; i < kNumActuated; ++i) {
    worst = std::max(worst, std::abs(s.EdgeLength(kActuatedTendons[i]) - targets[i]));
  }
  return worst;
}

}  // namespace

Vec3 SimConfig::GravityDirection() const {
  const double a = incline_deg * std::numbers::pi / 180.0;
  // Ground tilted up along +x: gravity gains a -x component in ground frame.
  return Vec3(-std::sin(a), 0.0, -std::cos(a));
}

double PassiveEnergy(const RobotShape& shape, const SimConfig& config) {
  double e = 0.0;
  for (const auto& edge : kPassiveTendons) {
    const double stretch = shape.EdgeLength(edge) - config.passive_rest_length;
    if (stretch > 0.0) e += 0.5 * config.passive_stiffness * stretch * stretch;
  }
  return e;
}

namespace {

// Gauss-Newton projection of the bar parameters onto the actuated length
// targets. Returns false if it fails to reach `tol`.
bool Project(BarConfiguration& bars, const std::array<double, kNumActuated>& targets,
             double bar, double tol) {
  RobotShape s = bars.ToShape(bar);
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::Matrix<double, kNumActuated, 1> c;
    for (int i = 0; i < kNumActuated; ++i) {
      c(i) = s.EdgeLength(kActuatedTendons[i]) - targets[i];
    }
    if (c.cwiseAbs().maxCoeff() < tol) return true;
    const Jac18 node_jac = NodeJacobian(bars, bar);
    Eigen::Matrix<double, kNumActuated, 15> c_jac;
    for (int i = 0; i < kNumActuated; ++i) {
      c_jac.row(i) = EdgeGradient(s, kActuatedTendons[i], node_jac);
    }
    Vec15 step = c_jac.completeOrthogonalDecomposition().solve(-c);
    if (!step.allFinite()) return false;
    const double norm = step.norm();
    if (norm > 0.05) step *= 0.05 / norm;
    bars.Retract(step);
    s = bars.ToShape(bar);
  }
  return false;
}

}  // namespace

RobotShape FormFind(const std::array<double, kNumActuated>& actuated_lengths,
                    const SimConfig& config, const RobotShape& init,
                    const FormFindOptions& options) {
  const double bar = config.bar_length;
  const double k = config.passive_stiffness;
  BarConfiguration bars = BarConfiguration::FromShape(init);
  if (!Project(bars, actuated_lengths, bar, options.constraint_tolerance)) {
    const double residual = ConstraintNorm(bars.ToShape(bar), actuated_lengths);
    throw Error(ErrorCode::kInfeasibleTargets,
                "actuated length residual " + std::to_string(residual) + " m");
  }
  RobotShape shape = bars.ToShape(bar);
  double energy = PassiveEnergy(shape, config);

  // Descent on the constraint manifold: Gauss-Newton direction in the null
  // space of the constraint Jacobian, re-projection, backtracking on energy.
  double damping = 1e-6 * k;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Jac18 node_jac = NodeJacobian(bars, bar);
    Mat15 h = Mat15::Zero();
    Vec15 g = Vec15::Zero();
    for (const auto& edge : kPassiveTendons) {
      const double stretch = shape.EdgeLength(edge) - config.passive_rest_length;
      if (stretch <= 0.0) continue;
      const auto grad = EdgeGradient(shape, edge, node_jac);
      h += k * grad.transpose() * grad;
      g += k * stretch * grad.transpose();
    }
    Eigen::Matrix<double, kNumActuated, 15> c_jac;
    for (int i = 0; i < kNumActuated; ++i) {
      c_jac.row(i) = EdgeGradient(shape, kActuatedTendons[i], node_jac);
    }
    const Eigen::JacobiSVD<Eigen::Matrix<double, 15, 15>> svd(
        Mat15(c_jac.transpose() * c_jac), Eigen::ComputeFullV);
    const Eigen::Matrix<double, 15, 9> z = svd.matrixV().rightCols<9>();
    const Eigen::Matrix<double, 9, 1> rg = z.transpose() * g;
    if (rg.norm() < options.gradient_tolerance) break;
    const Eigen::Matrix<double, 9, 9> rh = z.transpose() * h * z;

    bool accepted = false;
    for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
      const Eigen::Matrix<double, 9, 9> damped =
          rh + damping * Eigen::Matrix<double, 9, 9>::Identity();
      Vec15 step = z * damped.ldlt().solve(-rg);
      const double norm = step.norm();
      if (norm > 0.05) step *= 0.05 / norm;
      BarConfiguration trial = bars;
      trial.Retract(step);
      if (Project(trial, actuated_lengths, bar, options.constraint_tolerance)) {
        const RobotShape trial_shape = trial.ToShape(bar);
        const double trial_energy = PassiveEnergy(trial_shape, config);
        if (trial_energy <= energy) {
          bars = trial;
          shape = trial_shape;
          const double drop = energy - trial_energy;
          energy = trial_energy;
          damping = std::max(damping * 0.3, 1e-9 * k);
          accepted = true;
          if (norm < options.step_tolerance || drop <= 1e-16 * (1.0 + energy)) {
            iter = options.max_iterations;
          }
          break;
        }
      }
      damping *= 10.0;
    }
    if (!accepted) break;
  }
  const double residual = ConstraintNorm(shape, actuated_lengths);
  if (!(residual < 1e-7)) {
    throw Error(ErrorCode::kInfeasibleTargets,
                "actuated length residual " + std::to_string(residual) + " m");
  }
  return shape;
}

RobotShape ProjectOntoLengths(const std::array<double, kNumActuated>& targets,
                              const RobotShape& shape, double bar_length) {
  BarConfiguration bars = BarConfiguration::FromShape(shape);
  RobotShape s = bars.ToShape(bar_length);
  for (int iter = 0; iter < 100; ++iter) {
    const Jac18 node_jac = NodeJacobian(bars, bar_length);
    Eigen::Matrix<double, kNumActuated, 15> c_jac;
    Eigen::Matrix<double, kNumActuated, 1> c;
    for (int i = 0; i < kNumActuated; ++i) {
      c_jac.row(i) = EdgeGradient(s, kActuatedTendons[i], node_jac);
      c(i) = s.EdgeLength(kActuatedTendons[i]) - targets[i];
    }
    if (c.cwiseAbs().maxCoeff() < 1e-13) break;
    const Vec15 step = c_jac.completeOrthogonalDecomposition().solve(-c);
    bars.Retract(step);
    s = bars.ToShape(bar_length);
  }
  return s;
}

RobotShape PrismSeed(double side, double bar_length) {
  // Even triangle in the plane y = +h/2, odd triangle at y = -h/2, so the
  // principal axis points along +y. Node 2l+1 trails its partner 2l by 150
  // degrees; the passive tendons then span the short 30 degree chord.
  const double r = side / std::sqrt(3.0);
  const double twist = -5.0 * std::numbers::pi / 6.0;
  const double chord2 = 2.0 * r * r * (1.0 - std::cos(twist));
  const double h = std::sqrt(std::max(bar_length * bar_length - chord2, 1e-6));
  RobotShape s;
  for (int l = 0; l < kNumBars; ++l) {
    const double phi = 2.0 * std::numbers::pi * l / 3.0;
    s[2 * l] = Vec3(r * std::cos(phi), 0.5 * h, r * std::sin(phi));
    s[2 * l + 1] =
        Vec3(r * std::cos(phi + twist), -0.5 * h, r * std::sin(phi + twist));
  }
  if (Chirality(s) != kHandedness) s = s.Mirrored();
  return s;
}

const RobotShape& CanonicalRestShapeBody() {
  static const RobotShape rest = [] {
    SimConfig config;
    std::array<double, kNumActuated> lengths;
    lengths.fill(0.200);
    RobotShape s = FormFind(lengths, config, PrismSeed(0.200, config.bar_length));
    s = s.Centered();
    // Re-express with the principal axis on +y.
    const Vec3 axis = (EvenCentroid(s) - OddCentroid(s)).normalized();
    const Mat3 r = Eigen::Quaterniond::FromTwoVectors(axis, Vec3::UnitY())
                       .toRotationMatrix();
    return s.Rotated(r);
  }();
  return rest;
}

}  // namespace tribar
