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

#ifndef TRIBAR_SVG_HPP_
#define TRIBAR_SVG_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "tribar/topology.hpp"

namespace tribar {

struct SvgSeries {
  std::vector<Vec2> points;
  std::string color = "black";
  bool dashed = false;
};

// Top-down plot of planar paths, scaled to fit a square canvas.
void WriteSvgPlot(std::ostream& out, const std::vector<SvgSeries>& series, int size_px = 600);

}  // namespace tribar

#endif  // TRIBAR_SVG_HPP_
