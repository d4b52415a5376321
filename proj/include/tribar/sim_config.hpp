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

#ifndef TRIBAR_SIM_CONFIG_HPP_
#define TRIBAR_SIM_CONFIG_HPP_

#include "tribar/normalization.hpp"
#include "tribar/topology.hpp"

namespace tribar {

struct SimConfig {
  double bar_length = kDefaultBarLength;
  double passive_stiffness = 150.0;      // N/m
  double passive_rest_length = 0.280;    // m
  double actuated_stiffness = 2000.0;    // N/m, sensor tendon in parallel
  double gravity = 9.81;                 // m/s^2
  double incline_deg = 0.0;              // uphill along world +x
  bool infinite_friction = true;
  double tick_rate_hz = 100.0;
  double contact_tolerance = 0.001;      // m
  double motor_speed = 0.10;             // m/s of cable at command 99
  double command_latency = 0.1;          // s between sensing and motor response
  double min_cable_length = 0.060;       // m, hard stop of the winch
  double max_cable_length = 0.400;       // m
  double triangle_margin = 0.002;        // m, closest approach to a flat triangle
  int max_ticks_per_step = 1500;
  Normalization normalization = Normalization::kRangeSpan;

  // Unit vector along gravity in the ground frame (z up).
  Vec3 GravityDirection() const;
  double TickSeconds() const { return 1.0 / tick_rate_hz; }
};

}  // namespace tribar

#endif  // TRIBAR_SIM_CONFIG_HPP_
