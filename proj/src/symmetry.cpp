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

#include "tribar/symmetry.hpp"

#include <algorithm>

#include "tribar/error.hpp"

namespace tribar {
namespace {

using Perm = std::array<int, kNumActuated>;

// out[i] = in[perm[i]]
GaitStep Permute(const GaitStep& in, const Perm& perm) {
  GaitStep out{};
  for (int i = 0; i < kNumActuated; ++i) out[i] = in[perm[i]];
  return out;
}

constexpr std::array<Perm, 3> kTranslate = {{
    {0, 1, 2, 3, 4, 5},
    {1, 2, 0, 4, 5, 3},
    {2, 0, 1, 5, 3, 4},
}};

// A<->D, B<->F, C<->E
constexpr Perm kReverseF0 = {3, 5, 4, 0, 2, 1};
// A<->F, B<->D, C<->E
constexpr Perm kSwapPivotF0 = {5, 3, 4, 1, 2, 0};

Face Inverse(Face f) { return AdvanceFace(Face::kF0, -static_cast<int>(f)); }

GaitStep Conjugate(const GaitStep& step, Face face, const Perm& base) {
  // Back to rest-state labels, apply the F0 mapping, forward to `face`.
  const GaitStep rest = TranslateStep(step, Inverse(face));
  return TranslateStep(Permute(rest, base), face);
}

Gait MapSteps(const Gait& gait, const std::string& suffix,
              GaitStep (*fn)(const GaitStep&, Face), Face face) {
  Gait out = gait;
  out.name = gait.name + suffix;
  for (auto& s : out.steps) s = fn(s, face);
  return out;
}

}  // namespace

const std::array<int, 4>& FaceNodes(Face face) {
  static constexpr std::array<std::array<int, 4>, 3> kNodes = {
      {{0, 2, 3, 5}, {1, 2, 4, 5}, {0, 1, 3, 4}}};
  return kNodes[static_cast<int>(face)];
}

std::string_view FaceName(Face face) {
  static constexpr std::array<std::string_view, 3> kNames = {"F0", "F1", "F2"};
  return kNames[static_cast<int>(face)];
}

Face ParseFace(std::string_view name) {
  for (Face f : {Face::kF0, Face::kF1, Face::kF2}) {
    if (FaceName(f) == name) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown face '" + std::string(name) + "'");
}

std::optional<Face> FaceContaining(std::span<const int> nodes) {
  if (nodes.size() < 3) return std::nullopt;
  for (Face f : {Face::kF0, Face::kF1, Face::kF2}) {
    const auto& fn = FaceNodes(f);
    const bool all = std::all_of(nodes.begin(), nodes.end(), [&](int n) {
      return std::find(fn.begin(), fn.end(), n) != fn.end();
    });
    if (all) return f;
  }
  return std::nullopt;
}

Face AdvanceFace(Face face, int steps) {
  const int f = ((static_cast<int>(face) + steps) % 3 + 3) % 3;
  return static_cast<Face>(f);
}

Face FaceAfterRoll(Face face, RollDirection direction) {
  return AdvanceFace(face, direction == RollDirection::kForward ? 1 : -1);
}

GaitStep TranslateStep(const GaitStep& step, Face face) {
  return Permute(step, kTranslate[static_cast<int>(face)]);
}

Gait TranslateGait(const Gait& gait, Face face) {
  Gait out = gait;
  for (auto& s : out.steps) s = TranslateStep(s, face);
  return out;
}

Gait ExpandFullGait(const Gait& base, Face start_face, int face_advance) {
  Gait out = base;
  out.name = base.name + "_full";
  out.steps.clear();
  const int cycles = face_advance == 0 ? 1 : 3;
  for (int k = 0; k < cycles; ++k) {
    const Face f = AdvanceFace(start_face, k * face_advance);
    for (const auto& s : base.steps) out.steps.push_back(TranslateStep(s, f));
  }
  return out;
}

GaitStep ReverseStep(const GaitStep& step, Face face) {
  return Conjugate(step, face, kReverseF0);
}

Gait ReverseGait(const Gait& gait, Face face) {
  Gait out = MapSteps(gait, "", &ReverseStep, face);
  const std::string suffix = "_reversed";
  if (gait.name.ends_with(suffix)) {
    out.name = gait.name.substr(0, gait.name.size() - suffix.size());
  } else {
    out.name = gait.name + suffix;
  }
  std::swap(out.params.range_left, out.params.range_right);
  return out;
}

GaitStep SwapPivotStep(const GaitStep& step, Face face) {
  return Conjugate(step, face, kSwapPivotF0);
}

Gait SwapPivot(const Gait& gait, Face face) {
  Gait out = MapSteps(gait, "", &SwapPivotStep, face);
  if (out.name.find("left") != std::string::npos) {
    out.name.replace(out.name.find("left"), 4, "right");
  } else if (out.name.find("right") != std::string::npos) {
    out.name.replace(out.name.find("right"), 5, "left");
  }
  std::swap(out.params.range_left, out.params.range_right);
  return out;
}

int LibraryFaceAdvance(std::string_view gait_name) {
  if (gait_name == "quasistatic" || gait_name == "dynamic" ||
      gait_name == "quasistatic_impact") {
    return 1;
  }
  if (gait_name == "cw_turn") return -1;
  if (gait_name == "ccw_turn" || gait_name.starts_with("crawl_")) return 0;
  throw Error(ErrorCode::kInvalidArgument,
              "no face progression known for '" + std::string(gait_name) + "'");
}

}  // namespace tribar
