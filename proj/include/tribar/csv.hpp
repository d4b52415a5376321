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

#ifndef TRIBAR_CSV_HPP_
#define TRIBAR_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tribar {

// Minimal comma-separated reader: first line is the header, no quoting.
// Blank lines and lines starting with '#' are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws kIo if absent.
  int Column(std::string_view name) const;
};

CsvTable ReadCsv(std::istream& in);
CsvTable ReadCsvFile(const std::string& path);

// Throws kIo on anything that is not a complete number.
double ParseDouble(std::string_view text);
int ParseInt(std::string_view text);

// Shortest text that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace tribar

#endif  // TRIBAR_CSV_HPP_
