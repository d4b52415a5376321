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

#ifndef TRIBAR_NORMALIZATION_HPP_
#define TRIBAR_NORMALIZATION_HPP_

namespace tribar {

// How a tendon length maps to a gait position.
enum class Normalization {
  // (length - min) / (min + range). Position 1 sits above min + range.
  kMinPlusRange,
  // (length - min) / range: position 1 is exactly min + range.
  kRangeSpan,
};

}  // namespace tribar

#endif  // TRIBAR_NORMALIZATION_HPP_
