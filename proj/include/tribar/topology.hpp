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

#ifndef TRIBAR_TOPOLOGY_HPP_
#define TRIBAR_TOPOLOGY_HPP_

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace tribar {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kNumNodes = 6;
inline constexpr int kNumBars = 3;
inline constexpr int kNumActuated = 6;
inline constexpr int kNumPassive = 3;
inline constexpr int kNumSensors = kNumActuated + kNumPassive;

// End cap to end cap.
inline constexpr double kDefaultBarLength = 0.360;

struct Edge {
  int a;
  int b;

  constexpr bool Contains(int node) const { return a == node || b == node; }
};

// Actuated tendon labels. A..C close the odd-node triangle {1,3,5} (the
// robot's left side), D..F the even-node triangle {0,2,4} (right side).
enum class Tendon { kA = 0, kB, kC, kD, kE, kF };

// Bar l joins node 2l and node 2l+1 (red, green, blue).
inline constexpr std::array<Edge, kNumBars> kBars = {{{0, 1}, {2, 3}, {4, 5}}};

inline constexpr std::array<Edge, kNumActuated> kActuatedTendons = {{
    {3, 5},  // A
    {1, 3},  // B
    {1, 5},  // C
    {0, 2},  // D
    {0, 4},  // E
    {2, 4},  // F
}};

// Passive tendon k joins node k and node k+3.
inline constexpr std::array<Edge, kNumPassive> kPassiveTendons = {
    {{0, 3}, {1, 4}, {2, 5}}};

// Sensor channel order: A..F then the passive tendons 0-3, 1-4, 2-5.
inline constexpr std::array<Edge, kNumSensors> kSensorEdges = {{
    kActuatedTendons[0], kActuatedTendons[1], kActuatedTendons[2],
    kActuatedTendons[3], kActuatedTendons[4], kActuatedTendons[5],
    kPassiveTendons[0], kPassiveTendons[1], kPassiveTendons[2],
}};

inline constexpr std::array<std::string_view, kNumSensors> kSensorNames = {
    "A", "B", "C", "D", "E", "F", "P03", "P14", "P25"};

constexpr bool IsOdd(int node) { return node % 2 == 1; }

// Fixed graph plus the one physical constant every module needs.
struct RobotTopology {
  double bar_length = kDefaultBarLength;

  static constexpr const std::array<Edge, kNumBars>& bars() { return kBars; }
  static constexpr const std::array<Edge, kNumActuated>& actuated() {
    return kActuatedTendons;
  }
  static constexpr const std::array<Edge, kNumPassive>& passive() {
    return kPassiveTendons;
  }
};

char TendonLetter(int index);

}  // namespace tribar

#endif  // TRIBAR_TOPOLOGY_HPP_
