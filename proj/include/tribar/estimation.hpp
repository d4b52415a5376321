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

#ifndef TRIBAR_ESTIMATION_HPP_
#define TRIBAR_ESTIMATION_HPP_

#include <array>
#include <vector>

#include "tribar/sensing.hpp"
#include "tribar/shape.hpp"

namespace tribar {

struct ShapeEstimateOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-10;
  // A run that can no longer lower the objective in double precision counts
  // as converged below this gradient norm.
  double stall_gradient_tolerance = 1e-7;
  // Extra deterministic starts tried when the warm start ends above this
  // objective value (m^2).
  double restart_objective = 1e-12;
};

struct ShapeFit {
  RobotShape shape;  // centered, overlaid on the initial guess
  double objective = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

// Sum of squared length errors over the nine sensor tendons. Each triangle
// edge enters once (the ordered-pair double sum halved), each passive once.
double ShapeObjective(const RobotShape& shape, const SensorFrame& frame);

// Fits node positions to the nine measured lengths with the bar lengths held
// exact. The result is centered, reflected if needed to the robot's
// handedness, and rigidly overlaid on `init` so its frame follows the warm
// start. Throws kNonConvergence or kInfeasibleLengths.
ShapeFit EstimateShape(const SensorFrame& frame, const RobotTopology& topology,
                       const RobotShape& init, const ShapeEstimateOptions& options = {});

// Proper rotation R minimizing sum_l |R u_l - a_l|^2 where u_l are the unit
// IMU bar vectors of `shape` and a_l the measured global directions.
// Throws kDegenerateObservation when the two body bars are parallel.
Mat3 EstimateOrientation(const RobotShape& shape, const std::array<Vec3, 2>& bar_dirs,
                         double* residual = nullptr);

struct StateEstimate {
  RobotShape shape;  // global orientation, centroid at the origin
  Mat3 rotation = Mat3::Identity();  // body frame to global frame
  double shape_residual = 0.0;
  double orientation_residual = 0.0;
};

// Rest-shape estimate used before the first frame.
StateEstimate RestEstimate(const RobotTopology& topology = {});

// Shape fit warm-started from `prev`, then orientation; the rotation is
// applied to the nodes.
StateEstimate EstimateState(const SensorFrame& frame, const StateEstimate& prev,
                            const RobotTopology& topology = {},
                            const ShapeEstimateOptions& options = {});

// Estimates for frames that do not chain: each starts from `init`.
std::vector<StateEstimate> EstimateIndependent(const std::vector<SensorFrame>& frames,
                                               const StateEstimate& init,
                                               const RobotTopology& topology = {});
std::vector<StateEstimate> EstimateIndependentSerial(
    const std::vector<SensorFrame>& frames, const StateEstimate& init,
    const RobotTopology& topology = {});

// Node RMSE after moving both shapes to a common centroid, as a fraction of
// the bar length.
double RmseNodes(const RobotShape& estimate, const RobotShape& truth, double bar_length);
double RmseNodes(const StateEstimate& estimate, const RobotShape& truth,
                 double bar_length = kDefaultBarLength);

// Nodes within `band` (default 5% of L) of the lowest node, ascending.
std::vector<int> DownwardFace(const RobotShape& global_shape, double band);
std::vector<int> DownwardFace(const StateEstimate& estimate,
                              double bar_length = kDefaultBarLength);

// Intrinsic Z-Y-X angles (yaw, pitch, roll) in radians.
Vec3 EulerZYX(const Mat3& r);

}  // namespace tribar

#endif  // TRIBAR_ESTIMATION_HPP_
