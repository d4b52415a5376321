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

#ifndef TRIBAR_SENSING_HPP_
#define TRIBAR_SENSING_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tribar/shape.hpp"

namespace tribar {

// Linear capacitance (pF) to length (mm) map of one sensor tendon.
struct SensorCalibration {
  double slope = 1.0;      // mm / pF
  double intercept = 0.0;  // mm
  double residual_rms = 0.0;

  double LengthMm(double capacitance_pf) const { return slope * capacitance_pf + intercept; }
  double CapacitancePf(double length_mm) const { return (length_mm - intercept) / slope; }
};

// Least-squares line through (capacitance pF, length mm) pairs.
// Throws kDegenerateFit when every capacitance is the same, and
// kInvalidArgument for fewer than two samples or a non-positive slope.
SensorCalibration FitCalibration(const std::vector<std::pair<double, double>>& samples);

void WriteCalibrationCsv(std::ostream& out,
                         const std::array<SensorCalibration, kNumSensors>& cal);
std::array<SensorCalibration, kNumSensors> ReadCalibrationCsv(std::istream& in);

// IMU bars: red (nodes 0,1) and green (nodes 2,3).
inline constexpr std::array<int, 2> kImuBars = {0, 1};

struct SensorFrame {
  double timestamp = 0.0;
  std::array<double, kNumSensors> lengths{};  // m, A..F then 0-3, 1-4, 2-5
  std::array<Vec3, 2> bar_dirs{Vec3::UnitX(), Vec3::UnitY()};  // global frame
};

struct NoiseSpec {
  double length_sigma = 0.0;  // fraction of the true length
  double angle_sigma = 0.0;   // rad, per component of a small rotation
};

// Synthetic readings of `shape` held at global orientation `rotation`.
// `shape` is in the body frame; lengths do not depend on its placement.
SensorFrame Measure(const RobotShape& shape, const Mat3& rotation,
                    const NoiseSpec& noise, std::mt19937_64& rng,
                    double timestamp = 0.0);
SensorFrame Measure(const RobotShape& shape, const Mat3& rotation);

// One frame per row: t, nine lengths, then both bar directions.
void WriteFrameCsvHeader(std::ostream& out);
void WriteFrameCsvRow(std::ostream& out, const SensorFrame& frame);
std::vector<SensorFrame> ReadFrameCsv(std::istream& in);

}  // namespace tribar

#endif  // TRIBAR_SENSING_HPP_
