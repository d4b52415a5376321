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

#include "tribar/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "tribar/csv.hpp"
#include "tribar/error.hpp"
#include "tribar/form_find.hpp"

namespace tribar {
namespace {

using Vec15 = Eigen::Matrix<double, 15, 1>;
using Mat15 = Eigen::Matrix<double, 15, 15>;
using Jac9 = Eigen::Matrix<double, kNumSensors, 15>;
using Res9 = Eigen::Matrix<double, kNumSensors, 1>;

void Residuals(const BarConfiguration& bars, double bar, const SensorFrame& frame,
               Res9* r, Jac9* jac) {
  const RobotShape s = bars.ToShape(bar);
  Eigen::Matrix<double, 18, 15> node_jac;
  if (jac != nullptr) node_jac = NodeJacobian(bars, bar);
  for (int k = 0; k < kNumSensors; ++k) {
    const Edge& e = kSensorEdges[k];
    const Vec3 d = s[e.a] - s[e.b];
    const double len = d.norm();
    (*r)(k) = len - frame.lengths[k];
    if (jac != nullptr) {
      const Vec3 u = d / len;
      jac->row(k) = u.transpose() * (node_jac.block<3, 15>(3 * e.a, 0) -
                                     node_jac.block<3, 15>(3 * e.b, 0));
    }
  }
}

struct Attempt {
  BarConfiguration bars;
  double objective = std::numeric_limits<double>::infinity();
  double gradient_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt in the 15 bar parameters. Returns the best point; a
// run that stops because no step lowers the objective any further is
// stalled, not capped.
Attempt Solve(const SensorFrame& frame, double bar, const RobotShape& init,
              const ShapeEstimateOptions& options) {
  Attempt a;
  a.bars = BarConfiguration::FromShape(init);
  Res9 r;
  Jac9 jac;
  Residuals(a.bars, bar, frame, &r, &jac);
  a.objective = r.squaredNorm();
  double lambda = 1e-3;
  // Once the gradient test passes, a few more iterations polish directions
  // the gradient barely sees (badly conditioned shapes).
  int polish = 0;
  bool stalled = false;
  for (a.iterations = 0; a.iterations < options.max_iterations; ++a.iterations) {
    const Vec15 g = jac.transpose() * r;
    a.gradient_norm = 2.0 * g.norm();
    if (a.gradient_norm < options.gradient_tolerance) {
      a.converged = true;
      if (++polish > 10) break;
    }
    const Mat15 h = jac.transpose() * jac;
    bool improved = false;
    while (lambda < 1e12) {
      const Mat15 damped = h + lambda * Mat15::Identity();
      const Vec15 step = damped.ldlt().solve(-g);
      BarConfiguration trial = a.bars;
      trial.Retract(step);
      Res9 tr;
      Residuals(trial, bar, frame, &tr, nullptr);
      const double f = tr.squaredNorm();
      if (f < a.objective) {
        a.bars = trial;
        a.objective = f;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) {
      stalled = true;
      break;
    }
    Residuals(a.bars, bar, frame, &r, &jac);
  }
  const Vec15 g = jac.transpose() * r;
  a.gradient_norm = 2.0 * g.norm();
  // A stall at machine precision is a stationary point if the gradient is
  // already small; the objective can no longer resolve the rest.
  a.converged = a.converged || a.gradient_norm < options.gradient_tolerance ||
                (stalled && a.gradient_norm < options.stall_gradient_tolerance);
  return a;
}

double TriangleViolation(const SensorFrame& frame) {
  double worst = 0.0;
  for (int side = 0; side < 2; ++side) {
    const double* t = frame.lengths.data() + 3 * side;
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, t[i] - t[(i + 1) % 3] - t[(i + 2) % 3]);
    }
  }
  return worst;
}

RobotShape OverlayOn(const RobotShape& shape, const RobotShape& reference) {
  std::array<double, kNumNodes> w;
  w.fill(1.0);
  const RobotShape fitted = FitRigid(shape, reference, w).Apply(shape);
  return fitted.Centered();
}

}  // namespace

double ShapeObjective(const RobotShape& shape, const SensorFrame& frame) {
  double f = 0.0;
  for (int k = 0; k < kNumSensors; ++k) {
    const double e = shape.EdgeLength(kSensorEdges[k]) - frame.lengths[k];
    f += e * e;
  }
  return f;
}

ShapeFit EstimateShape(const SensorFrame& frame, const RobotTopology& topology,
                       const RobotShape& init, const ShapeEstimateOptions& options) {
  for (double l : frame.lengths) {
    if (!(l > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sensor length not positive");
  }
  const double bar = topology.bar_length;
  Attempt best = Solve(frame, bar, init, options);
  if (best.objective > options.restart_objective) {
    // Deterministic fallbacks: the rest shape and prisms of other sizes.
    std::vector<RobotShape> seeds = {CanonicalRestShapeBody()};
    for (double side : {0.14, 0.17, 0.23, 0.26}) seeds.push_back(PrismSeed(side, bar));
    for (const auto& seed : seeds) {
      Attempt a = Solve(frame, bar, seed, options);
      if (a.objective < best.objective) best = a;
      if (best.objective <= options.restart_objective) break;
    }
  }
  const double rms = std::sqrt(best.objective / kNumSensors);
  if (TriangleViolation(frame) > 0.0 && rms > 0.01 * bar) {
    throw Error(ErrorCode::kInfeasibleLengths,
                "measured lengths violate a triangle inequality; fit RMS " +
                    std::to_string(rms) + " m");
  }
  if (!best.converged) {
    throw Error(ErrorCode::kNonConvergence,
                "shape fit stopped with gradient norm " + FormatDouble(best.gradient_norm) + " obj " + FormatDouble(best.objective) + " it " + std::to_string(best.iterations));
  }
  RobotShape shape = best.bars.ToShape(bar);
  if (Chirality(shape) != kHandedness) shape = shape.Mirrored();
  ShapeFit fit;
  fit.shape = OverlayOn(shape, init);
  fit.objective = best.objective;
  fit.gradient_norm = best.gradient_norm;
  fit.iterations = best.iterations;
  return fit;
}

Mat3 EstimateOrientation(const RobotShape& shape, const std::array<Vec3, 2>& bar_dirs,
                         double* residual) {
  std::array<Vec3, 2> u;
  for (int k = 0; k < 2; ++k) u[k] = shape.BarVector(kImuBars[k]).normalized();
  if (u[0].cross(u[1]).norm() < std::sin(1e-6)) {
    throw Error(ErrorCode::kDegenerateObservation,
                "IMU bars are parallel; rotation about them is unobservable");
  }
  Mat3 corr = Mat3::Zero();
  for (int k = 0; k < 2; ++k) corr += bar_dirs[k].normalized() * u[k].transpose();
  const Mat3 r = ProperRotationFromCorrelation(corr);
  if (residual != nullptr) {
    *residual = 0.0;
    for (int k = 0; k < 2; ++k) *residual += (r * u[k] - bar_dirs[k].normalized()).squaredNorm();
  }
  return r;
}

StateEstimate RestEstimate(const RobotTopology& topology) {
  StateEstimate e;
  e.shape = CanonicalRestShapeBody();
  if (topology.bar_length != kDefaultBarLength) {
    e.shape = PrismSeed(0.200, topology.bar_length).Centered();
  }
  return e;
}

StateEstimate EstimateState(const SensorFrame& frame, const StateEstimate& prev,
                            const RobotTopology& topology,
                            const ShapeEstimateOptions& options) {
  // The previous estimate is in the global frame; bring it back to its body
  // frame so the new body frame stays continuous with the old one.
  const RobotShape init = prev.shape.Rotated(prev.rotation.transpose());
  const ShapeFit fit = EstimateShape(frame, topology, init, options);
  StateEstimate out;
  out.rotation = EstimateOrientation(fit.shape, frame.bar_dirs, &out.orientation_residual);
  out.shape = fit.shape.Rotated(out.rotation).Centered();
  out.shape_residual = fit.objective;
  return out;
}

std::vector<StateEstimate> EstimateIndependentSerial(const std::vector<SensorFrame>& frames,
                                                     const StateEstimate& init,
                                                     const RobotTopology& topology) {
  std::vector<StateEstimate> out(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out[i] = EstimateState(frames[i], init, topology);
  }
  return out;
}

std::vector<StateEstimate> EstimateIndependent(const std::vector<SensorFrame>& frames,
                                               const StateEstimate& init,
                                               const RobotTopology& topology) {
  std::vector<StateEstimate> out(frames.size());
  const auto n = static_cast<long>(frames.size());
  // Exceptions may not leave an OpenMP region; keep the first and rethrow.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = EstimateState(frames[i], init, topology);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

double RmseNodes(const RobotShape& estimate, const RobotShape& truth, double bar_length) {
  const RobotShape a = estimate.Centered();
  const RobotShape b = truth.Centered();
  double ss = 0.0;
  for (int i = 0; i < kNumNodes; ++i) ss += (a[i] - b[i]).squaredNorm();
  return std::sqrt(ss / kNumNodes) / bar_length;
}

double RmseNodes(const StateEstimate& estimate, const RobotShape& truth, double bar_length) {
  return RmseNodes(estimate.shape, truth, bar_length);
}

std::vector<int> DownwardFace(const RobotShape& global_shape, double band) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& n : global_shape.nodes) lowest = std::min(lowest, n.z());
  std::vector<int> out;
  for (int i = 0; i < kNumNodes; ++i) {
    if (global_shape[i].z() <= lowest + band) out.push_back(i);
  }
  return out;
}

std::vector<int> DownwardFace(const StateEstimate& estimate, double bar_length) {
  return DownwardFace(estimate.shape, 0.05 * bar_length);
}

Vec3 EulerZYX(const Mat3& r) {
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  return Vec3(std::atan2(r(1, 0), r(0, 0)), pitch, std::atan2(r(2, 1), r(2, 2)));
}

}  // namespace tribar
