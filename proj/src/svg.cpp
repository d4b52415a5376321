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

#include "tribar/svg.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "tribar/csv.hpp"

namespace tribar {

void WriteSvgPlot(std::ostream& out, const std::vector<SvgSeries>& series, int size_px) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      lo_x = std::min(lo_x, p.x());
      lo_y = std::min(lo_y, p.y());
      hi_x = std::max(hi_x, p.x());
      hi_y = std::max(hi_y, p.y());
    }
  }
  if (!(hi_x >= lo_x)) lo_x = lo_y = 0.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  const double margin = 0.05 * size_px;
  const double scale = (size_px - 2.0 * margin) / span;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\""
      << size_px << "\">\n";
  for (const auto& s : series) {
    out << "  <polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (s.dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (const auto& p : s.points) {
      // SVG y grows downward.
      out << FormatDouble(margin + (p.x() - lo_x) * scale) << ','
          << FormatDouble(size_px - margin - (p.y() - lo_y) * scale) << ' ';
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace tribar
