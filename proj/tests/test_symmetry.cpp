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

#include <doctest.h>

#include <vector>

#include "test_util.hpp"
#include "tribar/gait.hpp"
#include "tribar/gait_io.hpp"
#include "tribar/symmetry.hpp"

using namespace tribar;

namespace {

std::vector<GaitStep> Oracle(const std::string& file) {
  const auto j = ReadJsonFile(tribar::testing::DataPath("oracles/" + file));
  std::vector<GaitStep> out;
  for (const auto& row : j.at("steps")) {
    GaitStep s;
    for (int k = 0; k < kNumActuated; ++k) s[k] = row.at(k).get<double>();
    out.push_back(s);
  }
  return out;
}

constexpr Face kFaces[] = {Face::kF0, Face::kF1, Face::kF2};

}  // namespace

TEST_CASE("translate") {
  const GaitStep idx{0, 1, 2, 3, 4, 5};
  CHECK(TranslateStep(idx, Face::kF0) == idx);
  CHECK(TranslateStep(idx, Face::kF1) == GaitStep{1, 2, 0, 4, 5, 3});
  CHECK(TranslateStep(idx, Face::kF2) == GaitStep{2, 0, 1, 5, 3, 4});
  const GaitStep ones{1, 1, 1, 1, 1, 1};
  for (Face f : kFaces) CHECK(TranslateStep(ones, f) == ones);
  const GaitStep v{0.3, 0.1, 0.7, 0.2, 0.9, 0.4};
  CHECK(TranslateStep(TranslateStep(TranslateStep(v, Face::kF1), Face::kF1), Face::kF1) == v);
  CHECK(TranslateStep(TranslateStep(v, Face::kF1), Face::kF1) == TranslateStep(v, Face::kF2));
}

TEST_CASE("full expansions match the reference listings") {
  CHECK(ExpandFullGait(LibraryGait("quasistatic"), Face::kF0, 1).steps == Oracle("quasistatic_full.json"));
  CHECK(ExpandFullGait(LibraryGait("cw_turn"), Face::kF0, LibraryFaceAdvance("cw_turn")).steps ==
        Oracle("cw_turn_full.json"));
  const Gait& ccw = LibraryGait("ccw_turn");
  CHECK(ExpandFullGait(ccw, Face::kF0, 0).steps == ccw.steps);
  CHECK(LibraryFaceAdvance("quasistatic") == 1);
  CHECK(LibraryFaceAdvance("cw_turn") == -1);
  CHECK(LibraryFaceAdvance("ccw_turn") == 0);
}

TEST_CASE("reverse") {
  const Gait& q = LibraryGait("quasistatic");
  const Gait back = ReverseGait(q, Face::kF0);
  REQUIRE(back.steps.size() == 2);
  CHECK(back.steps[0] == GaitStep{1, 0.1, 1, 1, 0.1, 1});
  CHECK(back.steps[1] == GaitStep{0, 0.1, 1, 0, 1, 1});
  CHECK(ReverseGait(ExpandFullGait(q, Face::kF0, 1), Face::kF0).steps == Oracle("quasistatic_backward.json"));
  // Expanding the reversed gait backward face by face gives the same listing.
  CHECK(ExpandFullGait(back, Face::kF0, -1).steps == Oracle("quasistatic_backward.json"));

  for (const auto& [name, g] : GaitLibrary()) {
    for (Face f : kFaces) {
      CHECK(ReverseGait(ReverseGait(g, f), f).steps == g.steps);
      CHECK(SwapPivot(SwapPivot(g, f), f).steps == g.steps);
    }
  }
}

TEST_CASE("reverse mapping is conjugate across faces") {
  const GaitStep v{0.3, 0.1, 0.7, 0.2, 0.9, 0.4};
  for (Face f : kFaces) {
    // Reversing on face f equals translating, reversing on F0, translating back.
    const GaitStep direct = ReverseStep(TranslateStep(v, f), f);
    const GaitStep via = TranslateStep(ReverseStep(v, Face::kF0), f);
    CHECK(direct == via);
  }
}

TEST_CASE("pivot swap") {
  CHECK(SwapPivotStep({0, 0, 0, 1, 0.1, 1}, Face::kF0) == GaitStep{1, 1, 0.1, 0, 0, 0});
  CHECK(SwapPivot(LibraryGait("crawl_left_cw"), Face::kF0).steps == Oracle("crawl_right_cw.json"));
  CHECK(SwapPivot(LibraryGait("crawl_left_ccw"), Face::kF0).steps == Oracle("crawl_right_ccw.json"));
}

TEST_CASE("faces") {
  CHECK(FaceAfterRoll(Face::kF0, RollDirection::kForward) == Face::kF1);
  CHECK(FaceAfterRoll(Face::kF1, RollDirection::kForward) == Face::kF2);
  CHECK(FaceAfterRoll(Face::kF0, RollDirection::kBackward) == Face::kF2);
  Face f = Face::kF1;
  for (int i = 0; i < 3; ++i) f = FaceAfterRoll(f, RollDirection::kForward);
  CHECK(f == Face::kF1);
  CHECK(AdvanceFace(Face::kF0, -1) == Face::kF2);
  CHECK(FaceNodes(Face::kF0) == std::array<int, 4>{0, 2, 3, 5});
  CHECK(FaceNodes(Face::kF1) == std::array<int, 4>{1, 2, 4, 5});
  CHECK(FaceNodes(Face::kF2) == std::array<int, 4>{0, 1, 3, 4});
  const std::vector<int> tri{0, 3, 5};
  CHECK(FaceContaining(tri) == Face::kF0);
  const std::vector<int> edge{2, 5};
  CHECK_FALSE(FaceContaining(edge).has_value());
  CHECK(ParseFace("F2") == Face::kF2);
  CHECK(FaceName(Face::kF1) == "F1");
}
