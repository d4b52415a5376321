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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "tribar/gait_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path Fresh(const std::string& name) {
  const fs::path dir = fs::path(TRIBAR_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the CLI inside `dir` so default outputs land there.
Run Cli(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && unset TRIBAR_SEED && '" + TRIBAR_CLI_PATH + "' " +
                          args + " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = Slurp(dir / "stdout.txt");
  r.err = Slurp(dir / "stderr.txt");
  fs::remove(dir / "stdout.txt");
  fs::remove(dir / "stderr.txt");
  return r;
}

int CountLines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

bool IsEmptyDir(const fs::path& dir) { return fs::directory_iterator(dir) == fs::directory_iterator(); }

}  // namespace

TEST_CASE("help everywhere, no side effects") {
  for (const std::string sub : {"", "rollout", "estimate", "tabulate", "plan", "gait-expand", "limbo"}) {
    CAPTURE(sub);
    const fs::path dir = Fresh("help");
    const Run r = Cli(dir, sub + " --help");
    CHECK(r.code == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
    CHECK(IsEmptyDir(dir));
  }
}

TEST_CASE("bad invocations") {
  const fs::path dir = Fresh("bad");
  CHECK(Cli(dir, "").code == 2);
  CHECK(Cli(dir, "rollout --cycles -3").code == 2);
  CHECK(Cli(dir, "rollout --gait no_such_gait").code == 2);
  const Run r = Cli(dir, "estimate --frames missing_frames.csv");
  CHECK(r.code == 2);
  CHECK(r.err.find("missing_frames.csv") != std::string::npos);
  const Run low = Cli(dir, "limbo --bar-height 0.130");
  CHECK(low.code == 1);
  CHECK(low.err.find("error:") != std::string::npos);
}

TEST_CASE("rollout") {
  const fs::path dir = Fresh("rollout");
  const Run r = Cli(dir, "rollout --gait quasistatic --cycles 3");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("face transitions: 3") != std::string::npos);
  const std::string faces = Slurp(dir / "faces.csv");
  CHECK(CountLines(faces) == 4);
  CHECK(faces.find(",F0,F1\n") != std::string::npos);
  CHECK(faces.find(",F2,F0\n") != std::string::npos);
  CHECK(CountLines(Slurp(dir / "com.csv")) > 10);
  CHECK(Slurp(dir / "path.svg").find("<svg") != std::string::npos);

  const Run inc = Cli(dir, "rollout --gait quasistatic --cycles 1 --incline 10");
  REQUIRE(inc.code == 0);
  CHECK(inc.out.find("range: 140 mm") != std::string::npos);

  const Run zero = Cli(dir, "rollout --cycles 0");
  REQUIRE(zero.code == 0);
  CHECK(Slurp(dir / "com.csv") == "t_s,x_m,y_m,z_m,theta_rad,face\n");
  CHECK(zero.out.find("face transitions: 0") != std::string::npos);
}

TEST_CASE("same seed, same bytes") {
  const fs::path a = Fresh("seed_a"), b = Fresh("seed_b"), c = Fresh("seed_c");
  const std::string args = "estimate --simulate quasistatic --cycles 1 --length-noise 0.02 --angle-noise 1";
  REQUIRE(Cli(a, args + " --seed 7").code == 0);
  REQUIRE(Cli(b, args + " --seed 7").code == 0);
  REQUIRE(Cli(c, args + " --seed 8").code == 0);
  for (const char* f : {"frames.csv", "estimate.csv", "estimate.jsonl"}) {
    CAPTURE(f);
    CHECK(Slurp(a / f) == Slurp(b / f));
    CHECK(!Slurp(a / f).empty());
  }
  CHECK(Slurp(a / "frames.csv") != Slurp(c / "frames.csv"));
}

TEST_CASE("estimate") {
  const fs::path dir = Fresh("estimate");
  const Run r = Cli(dir, "estimate --simulate quasistatic --cycles 1");
  REQUIRE(r.code == 0);
  // "node RMSE max: <value> % L"
  const auto at = r.out.find("node RMSE max: ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 15)) < 0.5);

  // Replaying the written frames gives the same estimates.
  const fs::path replay = Fresh("estimate_replay");
  fs::copy_file(dir / "frames.csv", replay / "in.csv");
  REQUIRE(Cli(replay, "estimate --frames in.csv").code == 0);
  const std::string first = Slurp(dir / "estimate.csv");
  const std::string second = Slurp(replay / "estimate.csv");
  CHECK(CountLines(first) == CountLines(second));
  CHECK(first.rfind("t_s,yaw_rad,pitch_rad,roll_rad,shape_residual,bottom_nodes,rmse_pct_L\n", 0) == 0);
  CHECK(second.rfind("t_s,yaw_rad,pitch_rad,roll_rad,shape_residual,bottom_nodes\n", 0) == 0);
  // Same rows apart from the truth column, which a replay does not have.
  std::istringstream a(first), b(second);
  std::string ra, rb;
  std::getline(a, ra);
  std::getline(b, rb);
  while (std::getline(a, ra) && std::getline(b, rb)) {
    CHECK(ra.substr(0, ra.rfind(',')) == rb);
  }
}

TEST_CASE("gait-expand") {
  const fs::path dir = Fresh("expand");
  const auto oracle = [](const std::string& f) {
    return tribar::ReadJsonFile(tribar::testing::DataPath("oracles/" + f)).at("steps");
  };
  const auto steps = [&](const std::string& args) {
    const Run r = Cli(dir, "gait-expand " + args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out).at("steps");
  };
  CHECK(steps("quasistatic") == oracle("quasistatic_full.json"));
  CHECK(steps("cw_turn --face F0") == oracle("cw_turn_full.json"));
  CHECK(steps("quasistatic --reverse") == oracle("quasistatic_backward.json"));
  CHECK(steps("crawl_left_cw --swap-pivot") == oracle("crawl_right_cw.json"));
  CHECK(steps("quasistatic --single").size() == 2);
  CHECK(Cli(dir, "gait-expand quasistatic --face F7").code == 2);
  CHECK(IsEmptyDir(dir));
}

TEST_CASE("tabulate then plan") {
  const fs::path dir = Fresh("plan");
  const Run t = Cli(dir, "tabulate");
  REQUIRE(t.code == 0);
  const std::string table = Slurp(dir / "action_table.csv");
  CHECK(CountLines(table) == 52);
  CHECK(table.rfind("action_id,kind,left_range_mm,right_range_mm,dtheta_rad,tx_m,ty_m\n", 0) == 0);

  const Run p = Cli(dir, "plan --path triangle --preset triangle --table action_table.csv");
  REQUIRE(p.code == 0);
  CHECK(p.out.find("segment switches: 2") != std::string::npos);
  const std::string log = Slurp(dir / "plan_log.jsonl");
  CHECK(CountLines(log) > 5);
  for (std::istringstream in(log); in;) {
    std::string line;
    if (!std::getline(in, line) || line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("chosen_actions").size() == 2);
    CHECK(j.contains("predicted_pose"));
    CHECK(j.contains("measured_pose"));
    CHECK(j.contains("cost"));
  }
  CHECK(Slurp(dir / "error_vs_arclength.csv").rfind("arclength_m,error_m\n", 0) == 0);
  CHECK(Slurp(dir / "path.svg").find("<svg") != std::string::npos);
}

TEST_CASE("limbo") {
  const fs::path dir = Fresh("limbo");
  const Run r = Cli(dir, "limbo --bar-height 0.300 --cycles 1 --resume-cycles 1");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("limbo range: 140 mm") != std::string::npos);
  const Run low = Cli(dir, "limbo --bar-height 0.247 --cycles 1 --resume-cycles 0");
  REQUIRE(low.code == 0);
  CHECK(low.out.find("limbo range: 120 mm") != std::string::npos);
}
