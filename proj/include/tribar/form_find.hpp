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

#ifndef TRIBAR_FORM_FIND_HPP_
#define TRIBAR_FORM_FIND_HPP_

#include <array>

#include "tribar/shape.hpp"

namespace tribar {

struct SimConfig;

struct FormFindOptions {
  int max_iterations = 200;
  double constraint_tolerance = 1e-10;  // m, on every actuated length
  double step_tolerance = 1e-12;
  double gradient_tolerance = 1e-10;  // N, reduced energy gradient
};

// Elastic energy stored in the passive tendons (tension only).
double PassiveEnergy(const RobotShape& shape, const SimConfig& config);

// Equilibrium shape for the given actuated tendon lengths (A..F): minimizes
// passive tendon energy with bar lengths exact by construction and actuated
// lengths held as equality constraints. The solution is the one reached from
// `init`, so the caller's shape fixes chirality and placement.
// Throws kInfeasibleTargets when the actuated lengths cannot be met.
RobotShape FormFind(const std::array<double, kNumActuated>& actuated_lengths,
                    const SimConfig& config, const RobotShape& init,
                    const FormFindOptions& options = {});

// Moves `shape` onto the set where the actuated lengths equal `targets`
// without regard to energy (minimal-norm Gauss-Newton). Used to build feasible
// perturbations.
RobotShape ProjectOntoLengths(const std::array<double, kNumActuated>& targets,
                              const RobotShape& shape, double bar_length);

// Twisted-prism seed with all actuated lengths equal to `side`. The twist
// sign matches kHandedness.
RobotShape PrismSeed(double side, double bar_length);

// Form-found shape for all actuated tendons at 200 mm, centered at the
// origin, principal axis along +y.
const RobotShape& CanonicalRestShapeBody();

}  // namespace tribar

#endif  // TRIBAR_FORM_FIND_HPP_
