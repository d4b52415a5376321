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

#include "tribar/sensing.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <Eigen/Geometry>

#include "tribar/csv.hpp"
#include "tribar/error.hpp"

namespace tribar {

SensorCalibration FitCalibration(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "calibration needs at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [c, l] : samples) {
    mx += c;
    my += l;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [c, l] : samples) {
    sxx += (c - mx) * (c - mx);
    sxy += (c - mx) * (l - my);
  }
  if (sxx <= 0.0) {
    throw Error(ErrorCode::kDegenerateFit, "all capacitance samples are equal");
  }
  SensorCalibration cal;
  cal.slope = sxy / sxx;
  cal.intercept = my - cal.slope * mx;
  if (!(cal.slope > 0.0)) {
    throw Error(ErrorCode::kDegenerateFit, "calibration slope is not positive");
  }
  double ss = 0.0;
  for (const auto& [c, l] : samples) {
    const double r = l - cal.LengthMm(c);
    ss += r * r;
  }
  cal.residual_rms = std::sqrt(ss / n);
  return cal;
}

void WriteCalibrationCsv(std::ostream& out,
                         const std::array<SensorCalibration, kNumSensors>& cal) {
  out << "tendon_id,slope,intercept,residual_rms\n";
  for (int i = 0; i < kNumSensors; ++i) {
    out << kSensorNames[i] << ',' << FormatDouble(cal[i].slope) << ','
        << FormatDouble(cal[i].intercept) << ',' << FormatDouble(cal[i].residual_rms)
        << '\n';
  }
}

std::array<SensorCalibration, kNumSensors> ReadCalibrationCsv(std::istream& in) {
  const CsvTable table = ReadCsv(in);
  std::array<SensorCalibration, kNumSensors> cal;
  std::array<bool, kNumSensors> seen{};
  const int id = table.Column("tendon_id");
  const int slope = table.Column("slope");
  const int intercept = table.Column("intercept");
  const int rms = table.Column("residual_rms");
  for (const auto& row : table.rows) {
    int k = -1;
    for (int i = 0; i < kNumSensors; ++i) {
      if (row.at(id) == kSensorNames[i]) k = i;
    }
    if (k < 0) throw Error(ErrorCode::kIo, "unknown tendon id '" + row.at(id) + "'");
    cal[k].slope = ParseDouble(row.at(slope));
    cal[k].intercept = ParseDouble(row.at(intercept));
    cal[k].residual_rms = ParseDouble(row.at(rms));
    seen[k] = true;
  }
  for (int i = 0; i < kNumSensors; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kIo, "calibration missing tendon " + std::string(kSensorNames[i]));
    }
  }
  return cal;
}

SensorFrame Measure(const RobotShape& shape, const Mat3& rotation,
                    const NoiseSpec& noise, std::mt19937_64& rng, double timestamp) {
  SensorFrame f;
  f.timestamp = timestamp;
  f.lengths = shape.SensorLengths();
  std::normal_distribution<double> unit(0.0, 1.0);
  if (noise.length_sigma > 0.0) {
    for (double& l : f.lengths) {
      // Clamp far tails so a reading never goes non-positive.
      l = std::max(l * (1.0 + noise.length_sigma * unit(rng)), 1e-4);
    }
  }
  for (int k = 0; k < 2; ++k) {
    Vec3 d = rotation * shape.BarVector(kImuBars[k]).normalized();
    if (noise.angle_sigma > 0.0) {
      const Vec3 w(noise.angle_sigma * unit(rng), noise.angle_sigma * unit(rng),
                   noise.angle_sigma * unit(rng));
      if (w.norm() > 0.0) d = Eigen::AngleAxisd(w.norm(), w.normalized()) * d;
    }
    f.bar_dirs[k] = d.normalized();
  }
  return f;
}

SensorFrame Measure(const RobotShape& shape, const Mat3& rotation) {
  std::mt19937_64 rng(0);
  return Measure(shape, rotation, NoiseSpec{}, rng);
}

void WriteFrameCsvHeader(std::ostream& out) {
  out << "t";
  for (const auto& name : kSensorNames) out << ",len_" << name << "_m";
  out << ",bar0_x,bar0_y,bar0_z,bar1_x,bar1_y,bar1_z\n";
}

void WriteFrameCsvRow(std::ostream& out, const SensorFrame& frame) {
  out << FormatDouble(frame.timestamp);
  for (double l : frame.lengths) out << ',' << FormatDouble(l);
  for (const auto& d : frame.bar_dirs) {
    for (int c = 0; c < 3; ++c) out << ',' << FormatDouble(d[c]);
  }
  out << '\n';
}

std::vector<SensorFrame> ReadFrameCsv(std::istream& in) {
  const CsvTable table = ReadCsv(in);
  if (table.header.size() != 16) {
    throw Error(ErrorCode::kIo, "sensor frame CSV needs 16 columns, found " +
                                    std::to_string(table.header.size()));
  }
  std::vector<SensorFrame> frames;
  frames.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    SensorFrame f;
    f.timestamp = ParseDouble(row.at(0));
    for (int i = 0; i < kNumSensors; ++i) f.lengths[i] = ParseDouble(row.at(1 + i));
    for (int k = 0; k < 2; ++k) {
      for (int c = 0; c < 3; ++c) f.bar_dirs[k][c] = ParseDouble(row.at(10 + 3 * k + c));
    }
    frames.push_back(f);
  }
  return frames;
}

}  // namespace tribar
