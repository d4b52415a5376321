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

#ifndef TRIBAR_SYMMETRY_HPP_
#define TRIBAR_SYMMETRY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "tribar/gait.hpp"

namespace tribar {

// Bottom face, named by the four nodes nearest the ground:
//   F0 = {0,2,3,5} (rest), F1 = {1,2,4,5}, F2 = {0,1,3,4}.
// Forward rolling visits F0 -> F1 -> F2 -> F0.
enum class Face { kF0 = 0, kF1 = 1, kF2 = 2 };

enum class RollDirection { kForward, kBackward };

const std::array<int, 4>& FaceNodes(Face face);
std::string_view FaceName(Face face);
Face ParseFace(std::string_view name);

// The face whose node set contains every node in `nodes` (at least three
// nodes are needed for the answer to be unique).
std::optional<Face> FaceContaining(std::span<const int> nodes);

Face FaceAfterRoll(Face face, RollDirection direction);
Face AdvanceFace(Face face, int steps);

// Re-targets a rest-state step for `face`: each side is left-shifted once per
// face advanced, e.g. [a,b,c,d,e,f] on F1 becomes [b,c,a,e,f,d].
GaitStep TranslateStep(const GaitStep& step, Face face);
Gait TranslateGait(const Gait& gait, Face face);

// One full period of a gait whose cycles move the bottom face by
// `face_advance` (+1, -1 or 0): cycle k is translated to start + k*advance.
Gait ExpandFullGait(const Gait& base, Face start_face, int face_advance);

// Rolling in the opposite direction (the robot turned 180 degrees in the
// ground plane). On F0 this swaps A<->D, B<->F, C<->E; other faces use the
// conjugate by TranslateStep.
GaitStep ReverseStep(const GaitStep& step, Face face);
Gait ReverseGait(const Gait& gait, Face face);

// Moves a crawling turn's pivot to the other side. On F0 this swaps
// A<->F, B<->D, C<->E; other faces use the conjugate by TranslateStep.
GaitStep SwapPivotStep(const GaitStep& step, Face face);
Gait SwapPivot(const Gait& gait, Face face);

// Face change per cycle of a named library gait executed forward.
int LibraryFaceAdvance(std::string_view gait_name);

}  // namespace tribar

#endif  // TRIBAR_SYMMETRY_HPP_
