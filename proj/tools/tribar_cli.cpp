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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tribar/action_table.hpp"
#include "tribar/closed_loop.hpp"
#include "tribar/csv.hpp"
#include "tribar/error.hpp"
#include "tribar/estimation.hpp"
#include "tribar/gait_io.hpp"
#include "tribar/planner.hpp"
#include "tribar/sensing.hpp"
#include "tribar/simulator.hpp"
#include "tribar/svg.hpp"
#include "tribar/symmetry.hpp"

namespace fs = std::filesystem;
using namespace tribar;

namespace {

constexpr std::uint64_t kDefaultSeed = 20260101;

struct Common {
  std::string out_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  double latency = SimConfig{}.command_latency;
  double tick_rate = SimConfig{}.tick_rate_hz;
  bool min_plus_range_normalization = false;

  SimConfig Config() const {
    SimConfig c;
    c.command_latency = latency;
    c.tick_rate_hz = tick_rate;
    if (min_plus_range_normalization) c.normalization = Normalization::kMinPlusRange;
    return c;
  }
  std::uint64_t Seed() const {
    if (const char* env = std::getenv("TRIBAR_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "TRIBAR_SEED is not an integer: " + std::string(env));
      }
    }
    return seed;
  }
};

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("-o,--out", c.out_dir, "Output directory");
  app->add_option("--seed", c.seed, "RNG seed (TRIBAR_SEED overrides)");
  app->add_option("--latency", c.latency, "Command latency in seconds")->check(CLI::NonNegativeNumber);
  app->add_option("--tick-rate", c.tick_rate, "Simulation tick rate in Hz")->check(CLI::PositiveNumber);
  app->add_flag("--min-plus-range-normalization", c.min_plus_range_normalization,
                "Normalize by min + range instead of range");
}

fs::path OutPath(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

std::ofstream OpenOut(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
  return out;
}

std::ifstream OpenIn(const std::string& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + p);
  return in;
}

std::string DefaultPresets() { return std::string(TRIBAR_DATA_DIR) + "/presets.json"; }

// A library gait name or a path to a gait JSON file.
Gait LoadGait(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return ReadGaitFile(spec);
  return LibraryGait(spec);
}

int FaceAdvanceFor(const std::string& spec, const Gait& gait) {
  if (GaitLibrary().count(spec)) return LibraryFaceAdvance(spec);
  return LibraryFaceAdvance(gait.name);
}

void WriteComCsv(std::ostream& out, const std::vector<SimState>& trace) {
  out << "t_s,x_m,y_m,z_m,theta_rad,face\n";
  for (const auto& s : trace) {
    const Vec3 c = Centroid(s.shape);
    out << FormatDouble(s.time) << ',' << FormatDouble(c.x()) << ',' << FormatDouble(c.y())
        << ',' << FormatDouble(c.z()) << ',' << FormatDouble(s.pose.theta) << ','
        << FaceName(s.face) << '\n';
  }
}

void WritePathSvg(const fs::path& p, const std::vector<Vec2>& path,
                  const std::vector<Trajectory>& reference = {}) {
  std::vector<SvgSeries> series;
  for (const auto& seg : reference) series.push_back({seg.waypoints, "gray", true});
  series.push_back({path, "steelblue", false});
  auto out = OpenOut(p);
  WriteSvgPlot(out, series);
}

double BarLengthsPerMinute(const SimState& a, const SimState& b, double bar_length) {
  const double dt = b.time - a.time;
  if (dt <= 0.0) return 0.0;
  return (b.pose.t - a.pose.t).norm() / bar_length / dt * 60.0;
}

// ---- rollout ---------------------------------------------------------------

struct RolloutArgs {
  Common common;
  std::string gait = "quasistatic";
  int cycles = 3;
  std::string params;
  std::string presets = DefaultPresets();
  double incline = 0.0;
  bool incline_set = false;
  bool reversed = false;
};

int CmdRollout(const RolloutArgs& a) {
  SimConfig config = a.common.Config();
  Gait gait = LoadGait(a.gait);
  if (a.incline_set) {
    const int deg = static_cast<int>(std::lround(a.incline));
    gait.params = PresetFromFile(a.presets, "incline_" + std::to_string(deg));
    config.incline_deg = a.incline;
  }
  if (!a.params.empty()) gait.params = PresetFromFile(a.presets, a.params);
  gait.Validate();

  RolloutOptions opts;
  opts.reversed = a.reversed;
  opts.face_advance = FaceAdvanceFor(a.gait, gait);
  opts.record_every_tick = true;
  const SimState start = RestState(config);
  const RolloutResult r = Rollout(gait, a.cycles, start, config, opts);

  {
    auto out = OpenOut(OutPath(a.common, "com.csv"));
    if (a.cycles > 0) {
      WriteComCsv(out, r.trace);
    } else {
      out << "t_s,x_m,y_m,z_m,theta_rad,face\n";
    }
  }
  {
    auto out = OpenOut(OutPath(a.common, "faces.csv"));
    out << "t_s,from,to\n";
    for (const auto& f : r.face_changes) {
      out << FormatDouble(f.time) << ',' << FaceName(f.from) << ',' << FaceName(f.to) << '\n';
    }
  }
  std::vector<Vec2> path;
  for (const auto& s : r.trace) path.push_back(s.pose.t);
  WritePathSvg(OutPath(a.common, "path.svg"), path);

  for (const auto& d : r.diagnostics) std::cerr << "note: " << d << '\n';
  std::cout << "gait: " << gait.name << ", cycles: " << a.cycles << '\n';
  std::cout << "range: " << FormatDouble(std::round(gait.params.range_left * 1e6) / 1e3) << " mm";
  if (gait.params.range_right != gait.params.range_left) {
    std::cout << " / " << FormatDouble(std::round(gait.params.range_right * 1e6) / 1e3) << " mm";
  }
  std::cout << '\n';
  std::cout << "face transitions: " << r.face_changes.size() << '\n';
  std::cout << "duration: " << FormatDouble(r.final_state.time - start.time) << " s\n";
  std::cout << "mean speed: "
            << FormatDouble(BarLengthsPerMinute(start, r.final_state, config.bar_length))
            << " BL/min\n";
  return 0;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateArgs {
  Common common;
  std::string frames;
  std::string simulate;
  int cycles = 1;
  int every = 10;
  double length_noise = 0.0;
  double angle_noise_deg = 0.0;
};

int CmdEstimate(const EstimateArgs& a) {
  std::vector<SensorFrame> frames;
  std::vector<RobotShape> truth;
  if (!a.frames.empty()) {
    auto in = OpenIn(a.frames);
    frames = ReadFrameCsv(in);
  } else {
    const SimConfig config = a.common.Config();
    const Gait gait = LoadGait(a.simulate);
    RolloutOptions opts;
    opts.face_advance = FaceAdvanceFor(a.simulate, gait);
    const RolloutResult r = Rollout(gait, a.cycles, RestState(config), config, opts);
    std::mt19937_64 rng(a.common.Seed());
    const NoiseSpec noise{a.length_noise, a.angle_noise_deg * std::numbers::pi / 180.0};
    for (std::size_t k = 0; k < r.trace.size(); k += std::max(1, a.every)) {
      const SimState& s = r.trace[k];
      const Vec3 c = Centroid(s.shape);
      truth.push_back(s.shape.Translated(-c));
      frames.push_back(Measure(s.shape, Mat3::Identity(), noise, rng, s.time));
    }
    auto out = OpenOut(OutPath(a.common, "frames.csv"));
    WriteFrameCsvHeader(out);
    for (const auto& f : frames) WriteFrameCsvRow(out, f);
  }

  auto out = OpenOut(OutPath(a.common, "estimate.csv"));
  out << "t_s,yaw_rad,pitch_rad,roll_rad,shape_residual,bottom_nodes"
      << (truth.empty() ? "" : ",rmse_pct_L") << '\n';
  auto jsonl = OpenOut(OutPath(a.common, "estimate.jsonl"));
  StateEstimate prev = RestEstimate();
  std::vector<double> rmse;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    prev = EstimateState(frames[k], prev);
    const Vec3 e = EulerZYX(prev.rotation);
    std::string bottom;
    for (int n : DownwardFace(prev)) bottom += (bottom.empty() ? "" : " ") + std::to_string(n);
    out << FormatDouble(frames[k].timestamp) << ',' << FormatDouble(e[0]) << ','
        << FormatDouble(e[1]) << ',' << FormatDouble(e[2]) << ','
        << FormatDouble(prev.shape_residual) << ',' << bottom;
    if (!truth.empty()) {
      rmse.push_back(100.0 * RmseNodes(prev, truth[k]));
      out << ',' << FormatDouble(rmse.back());
    }
    out << '\n';
    nlohmann::json j;
    j["t"] = frames[k].timestamp;
    j["shape"] = ToJson(prev.shape);
    j["rotation"] = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) {
      j["rotation"].push_back({prev.rotation(r, 0), prev.rotation(r, 1), prev.rotation(r, 2)});
    }
    j["euler_zyx"] = {e[0], e[1], e[2]};
    if (!rmse.empty()) j["rmse_frac_L"] = rmse.back() / 100.0;
    jsonl << j.dump() << '\n';
  }
  std::cout << "frames: " << frames.size() << '\n';
  if (!rmse.empty()) {
    std::vector<double> sorted = rmse;
    std::sort(sorted.begin(), sorted.end());
    std::cout << "node RMSE median: " << FormatDouble(sorted[sorted.size() / 2]) << " % L\n";
    std::cout << "node RMSE max: " << FormatDouble(sorted.back()) << " % L\n";
  }
  return 0;
}

// ---- tabulate ----------------------------------------------------------------

struct TabulateArgs {
  Common common;
  std::string file = "action_table.csv";
  bool serial = false;
};

int CmdTabulate(const TabulateArgs& a) {
  const SimConfig config = a.common.Config();
  const auto actions = StandardActions();
  const ActionTable table =
      a.serial ? TabulateActionsSerial(actions, config) : TabulateActions(actions, config);
  auto out = OpenOut(OutPath(a.common, a.file));
  WriteActionTableCsv(out, table);
  std::cout << "actions: " << table.size() << '\n';
  return 0;
}

// ---- plan ----------------------------------------------------------------------

struct PlanArgs {
  Common common;
  std::string trajectory;
  std::string path = "line";
  std::string table;
  std::string preset;
  std::optional<double> wd, wa, wp;
  int max_actions = ClosedLoopOptions{}.max_actions;
};

std::vector<Trajectory> BuiltinPath(const std::string& name) {
  if (name == "line") return {MakeLine({0.0, 0.0}, {0.0, 2.0})};
  if (name == "circle") return {MakeArc({0.5, 0.0}, 0.5, std::numbers::pi, 0.0)};
  if (name == "triangle") return MakePolyline({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}});
  throw Error(ErrorCode::kInvalidArgument, "unknown path '" + name + "'");
}

int CmdPlan(const PlanArgs& a) {
  const SimConfig config = a.common.Config();
  std::vector<Trajectory> segments;
  if (!a.trajectory.empty()) {
    auto in = OpenIn(a.trajectory);
    segments = ReadTrajectoryCsv(in);
  } else {
    segments = BuiltinPath(a.path);
  }
  ActionTable table;
  if (!a.table.empty()) {
    table = ReadActionTableFile(a.table);
  } else {
    table = TabulateActions(StandardActions(), config);
  }
  const std::string preset =
      !a.preset.empty() ? a.preset : (a.trajectory.empty() ? a.path : std::string("line"));
  CostWeights w = WeightsPreset(preset);
  if (a.wd) w.w_d = *a.wd;
  if (a.wa) w.w_a = *a.wa;
  if (a.wp) w.w_p = *a.wp;

  // Start on the first waypoint with the heading along the first leg.
  const auto& p = segments.front().waypoints;
  const Vec2 tangent = (p[1] - p[0]).normalized();
  const double axis = std::atan2(tangent.y(), tangent.x()) - std::numbers::pi / 2.0;
  const SimState start = PlaceState(RestState(config), Pose2D(axis, p[0]));

  ClosedLoopOptions opts;
  opts.max_actions = a.max_actions;
  const ClosedLoopResult r = StepAndReplan(start, segments, table, w, config, opts);
  {
    auto out = OpenOut(OutPath(a.common, "plan_log.jsonl"));
    WritePlanLog(out, r.log);
  }
  {
    auto out = OpenOut(OutPath(a.common, "error_vs_arclength.csv"));
    WriteErrorProfileCsv(out, r.error_profile);
  }
  WritePathSvg(OutPath(a.common, "path.svg"), r.com, segments);
  std::cout << "actions: " << r.log.size() << '\n';
  std::cout << "segment switches: " << r.segment_switches << '\n';
  std::cout << "reversals: " << r.reversals << '\n';
  std::cout << "final distance to endpoint: " << FormatDouble(r.final_distance) << " m\n";
  std::cout << "mean speed: "
            << FormatDouble(BarLengthsPerMinute(start, r.final_state, config.bar_length))
            << " BL/min\n";
  return 0;
}

// ---- gait-expand -----------------------------------------------------------------

struct ExpandArgs {
  std::string gait = "quasistatic";
  std::string face = "F0";
  bool reverse = false;
  bool swap_pivot = false;
  bool single = false;
};

int CmdGaitExpand(const ExpandArgs& a) {
  const Gait base = LoadGait(a.gait);
  const Face face = ParseFace(a.face);
  Gait g;
  if (a.swap_pivot) {
    g = SwapPivot(base, face);
  } else if (a.single) {
    g = TranslateGait(base, face);
  } else {
    g = ExpandFullGait(base, face, FaceAdvanceFor(a.gait, base));
  }
  if (a.reverse) g = ReverseGait(g, face);
  nlohmann::json j;
  j["name"] = g.name;
  j["start_face"] = static_cast<int>(face);
  j["steps"] = nlohmann::json::array();
  for (const auto& s : g.steps) j["steps"].push_back(s);
  std::cout << j.dump() << '\n';
  return 0;
}

// ---- limbo -------------------------------------------------------------------------

struct LimboArgs {
  Common common;
  double bar_height = 0.0;
  int cycles = 3;
  int resume_cycles = 3;
};

int CmdLimbo(const LimboArgs& a) {
  const double range = LimboRange(a.bar_height);
  const SimConfig config = a.common.Config();
  Gait under = LibraryGait("quasistatic");
  under.params = presets::Limbo(range);
  RolloutOptions opts;
  opts.face_advance = 1;
  const RolloutResult low = Rollout(under, a.cycles, RestState(config), config, opts);
  double peak = 0.0;
  for (const auto& s : low.trace) {
    for (int n = 0; n < kNumNodes; ++n) peak = std::max(peak, s.shape[n].z());
  }
  // No operator in the loop: the floor gait resumes as soon as the low
  // cycles are done.
  const RolloutResult resumed =
      Rollout(LibraryGait("quasistatic"), a.resume_cycles, low.final_state, config, opts);
  std::vector<SimState> trace = low.trace;
  trace.insert(trace.end(), resumed.trace.begin() + 1, resumed.trace.end());
  {
    auto out = OpenOut(OutPath(a.common, "com.csv"));
    WriteComCsv(out, trace);
  }
  std::vector<Vec2> path;
  for (const auto& s : trace) path.push_back(s.pose.t);
  WritePathSvg(OutPath(a.common, "path.svg"), path);
  std::cout << "limbo range: " << FormatDouble(range * 1000.0) << " mm\n";
  std::cout << "peak node height under bar: " << FormatDouble(peak) << " m\n";
  std::cout << "clears bar: " << (peak < a.bar_height ? "yes" : "no") << '\n';
  std::cout << "face transitions: " << low.face_changes.size() + resumed.face_changes.size()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Software twin of a three-bar tensegrity robot"};
  app.require_subcommand(1);

  RolloutArgs ra;
  auto* rollout = app.add_subcommand("rollout", "Simulate a gait and write the CoM trace");
  AddCommon(rollout, ra.common);
  rollout->add_option("--gait", ra.gait, "Library gait name or gait JSON file");
  rollout->add_option("--cycles", ra.cycles, "Gait cycles")->check(CLI::NonNegativeNumber);
  rollout->add_option("--params", ra.params, "Parameter preset name from the presets file");
  rollout->add_option("--presets", ra.presets, "Presets JSON file");
  auto* incline = rollout->add_option("--incline", ra.incline, "Incline in degrees (uses its preset)");
  rollout->add_flag("--reversed", ra.reversed, "Roll backward");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand("estimate", "Replay sensor frames through the estimator");
  AddCommon(estimate, ea.common);
  auto* frames_opt = estimate->add_option("--frames", ea.frames, "Frame CSV")->check(CLI::ExistingFile);
  auto* sim_opt = estimate->add_option("--simulate", ea.simulate, "Generate frames from this gait");
  frames_opt->excludes(sim_opt);
  estimate->add_option("--cycles", ea.cycles, "Cycles to simulate");
  estimate->add_option("--every", ea.every, "Keep one frame per this many ticks");
  estimate->add_option("--length-noise", ea.length_noise, "Length noise, fraction of length");
  estimate->add_option("--angle-noise", ea.angle_noise_deg, "Bar direction noise, degrees");

  TabulateArgs ta;
  auto* tabulate = app.add_subcommand("tabulate", "Build the 51-action motion table");
  AddCommon(tabulate, ta.common);
  tabulate->add_option("--file", ta.file, "Table file name inside the output directory");
  tabulate->add_flag("--serial", ta.serial, "Use the serial implementation");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Follow a trajectory in closed loop");
  AddCommon(plan, pa.common);
  plan->add_option("--trajectory", pa.trajectory, "Trajectory CSV (x_m,y_m,segment_id)")
      ->check(CLI::ExistingFile);
  plan->add_option("--path", pa.path, "Built-in path: line, circle or triangle");
  plan->add_option("--table", pa.table, "Action table CSV (tabulated if omitted)")
      ->check(CLI::ExistingFile);
  plan->add_option("--preset", pa.preset, "Weight preset: line, circle or triangle");
  plan->add_option("--wd", pa.wd, "Distance weight");
  plan->add_option("--wa", pa.wa, "Heading weight");
  plan->add_option("--wp", pa.wp, "Progress weight");
  plan->add_option("--max-actions", pa.max_actions, "Action budget");

  ExpandArgs xa;
  auto* expand = app.add_subcommand("gait-expand", "Print a symmetry-expanded gait as JSON");
  expand->add_option("gait", xa.gait, "Library gait name or gait JSON file");
  expand->add_option("--face", xa.face, "Starting bottom face: F0, F1 or F2");
  expand->add_flag("--reverse", xa.reverse, "Reverse the gait");
  expand->add_flag("--swap-pivot", xa.swap_pivot, "Move a crawling pivot to the other side");
  expand->add_flag("--single", xa.single, "Translate one cycle instead of a full period");

  LimboArgs la;
  auto* limbo = app.add_subcommand("limbo", "Roll under a bar with a reduced range");
  AddCommon(limbo, la.common);
  limbo->add_option("--bar-height", la.bar_height, "Bar height in metres")->required();
  limbo->add_option("--cycles", la.cycles, "Cycles under the bar");
  limbo->add_option("--resume-cycles", la.resume_cycles, "Floor cycles after the bar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  ra.incline_set = incline->count() > 0;

  try {
    if (*rollout) return CmdRollout(ra);
    if (*estimate) {
      if (ea.frames.empty() && ea.simulate.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "give --frames or --simulate");
      }
      return CmdEstimate(ea);
    }
    if (*tabulate) return CmdTabulate(ta);
    if (*plan) return CmdPlan(pa);
    if (*expand) return CmdGaitExpand(xa);
    if (*limbo) return CmdLimbo(la);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool config_error =
        e.code() == ErrorCode::kIo || e.code() == ErrorCode::kInvalidArgument;
    return config_error ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
