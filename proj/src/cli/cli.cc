/******************************************************************************
 * Copyright 2026 The Intercept Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "intercept/cli/cli.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "intercept/common/error.h"
#include "intercept/io/report.h"
#include "intercept/io/scenario_io.h"
#include "intercept/planning/path_smoother.h"
#include "intercept/sim/prediction_experiment.h"
#include "intercept/sim/simulator.h"

namespace intercept::cli {
namespace {

namespace fs = std::filesystem;
using io::FormatNumber;

struct Options {
  std::string scenario;
  std::optional<uint64_t> seed;
  std::string out = "run";
  std::string replan;
  std::string track;
  std::string planner;
  std::string mode = "both";
  int trials = 200;
  int threads = 0;
  int repeat = 20;
  std::vector<double> horizons{0.0, 5.0, 10.0, 15.0};
  std::string plot_dir;
};

// Input problems are reported like usage errors.
struct InputError {
  std::string message;
};

void WriteFile(const std::string& dir, const std::string& name,
               const std::function<void(std::ostream&)>& write) {
  fs::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw InputError{"cannot write " + dir + "/" + name};
  write(out);
}

sim::Scenario Load(const Options& opt) {
  sim::Scenario scn;
  try {
    scn = io::LoadScenario(opt.scenario);
    if (opt.seed) {
      scn.seed = *opt.seed;
      scn.noise.seed = *opt.seed;
    }
    if (!opt.replan.empty()) scn.replan = opt.replan == "on";
    if (!opt.track.empty()) scn.track = sim::ParseTrackMode(opt.track);
    if (!opt.planner.empty()) scn.speed_planner = sim::ParseSpeedPlannerMode(opt.planner);
    scn.Validate();
  } catch (const Error& e) {
    throw InputError{opt.scenario + ": " + e.message()};
  }
  return scn;
}

sim::InterceptionPlan InitialPlan(const sim::Scenario& scn, sim::PlanDepth depth) {
  const sim::TargetTrajectory truth(scn.target, -(scn.observations - 1) * scn.target.dt);
  const sim::PlanRequest req{scn.start, scn.start_speed, 0.0, 0.0,
                             sim::InitialObservations(scn, truth)};
  return sim::PlanInterception(scn, req, depth);
}

int ReportFailure(const sim::InterceptionPlan& plan, std::ostream& err) {
  err << "infeasible: " << plan.failed_stage << " stage: "
      << (plan.error ? plan.error->what() : "unknown") << '\n';
  return kExitOutcome;
}

void Plots(const std::string& dir, std::ostream& out) {
  for (const auto& f : io::RenderPlots(dir)) out << "wrote " << dir << '/' << f << '\n';
}

int Predict(const Options& opt, std::ostream& out) {
  sim::PredictionExperiment base;
  base.trials = opt.trials;
  base.threads = opt.threads;
  base.horizons = opt.horizons;
  base.seed = opt.seed.value_or(0);
  if (!opt.scenario.empty()) {
    const sim::Scenario scn = Load(opt);
    base.sigma = scn.noise.sigma1;
    base.observations = scn.observations;
    base.dt = scn.target.dt;
    base.degree = scn.degree;
    base.seed = opt.seed.value_or(scn.seed);
  }
  std::vector<sim::TargetMotion> motions;
  if (opt.mode != "curve") motions.push_back(sim::TargetMotion::kUniform);
  if (opt.mode != "uniform") motions.push_back(sim::TargetMotion::kCurve);
  std::vector<std::pair<sim::TargetMotion, sim::PredictionStats>> rows;
  for (const auto motion : motions) {
    sim::PredictionExperiment exp = base;
    exp.motion = motion;
    rows.emplace_back(motion, sim::RunPredictionExperiment(exp));
  }
  WriteFile(opt.out, "predict.csv", [&](std::ostream& o) { io::WritePredictionCsv(rows, o); });
  char buf[64];
  out << "mean relative error (" << opt.trials << " trials)\n" << "motion  ";
  for (double h : opt.horizons) {
    std::snprintf(buf, sizeof(buf), "%9s", (FormatNumber(h) + " s").c_str());
    out << buf;
  }
  out << '\n';
  for (const auto& [motion, st] : rows) {
    std::snprintf(buf, sizeof(buf), "%-8s", std::string(sim::ToString(motion)).c_str());
    out << buf;
    for (double e : st.mean_relative_error) {
      std::snprintf(buf, sizeof(buf), "%8.2f%%", 100.0 * e);
      out << buf;
    }
    out << '\n';
  }
  Plots(opt.out, out);
  return kExitOk;
}

int Plan(const Options& opt, std::ostream& out, std::ostream& err) {
  const sim::Scenario scn = Load(opt);
  const sim::InterceptionPlan plan = InitialPlan(scn, sim::PlanDepth::kPath);
  WriteFile(opt.out, "map.csv", [&](std::ostream& o) { io::WriteMapCsv(scn, o); });
  if (!plan.ok()) return ReportFailure(plan, err);
  WriteFile(opt.out, "path.csv", [&](std::ostream& o) { io::WritePathCsv(plan, o); });
  const double curvature =
      plan.smoothed.size() >= 3 ? planning::MaxDiscreteCurvature(plan.smoothed) : 0.0;
  WriteFile(opt.out, "plan_summary.csv", [&](std::ostream& o) {
    o << "goal_x,goal_y,goal_theta,coarse_length,smoothed_length,"
         "smoothed_max_curvature,kappa_max\n"
      << FormatNumber(plan.goal.x) << ',' << FormatNumber(plan.goal.y) << ','
      << FormatNumber(plan.goal.theta) << ','
      << FormatNumber(planning::PolylineLength(plan.coarse)) << ','
      << FormatNumber(plan.path.length()) << ',' << FormatNumber(curvature) << ','
      << FormatNumber(scn.robot.max_curvature) << '\n';
  });
  out << "goal (" << FormatNumber(plan.goal.x) << ", " << FormatNumber(plan.goal.y)
      << "), smoothed length " << FormatNumber(plan.path.length()) << " m\n";
  Plots(opt.out, out);
  return kExitOk;
}

void WriteStageOutputs(const sim::Scenario& scn, const sim::InterceptionPlan& plan,
                       const std::string& dir) {
  WriteFile(dir, "path.csv", [&](std::ostream& o) { io::WritePathCsv(plan, o); });
  WriteFile(dir, "st_graph.csv", [&](std::ostream& o) { io::WriteStGraphCsv(plan, scn, o); });
  WriteFile(dir, "speed.csv", [&](std::ostream& o) { io::WriteSpeedCsv(plan, scn, o); });
}

int Speed(const Options& opt, std::ostream& out, std::ostream& err) {
  const sim::Scenario scn = Load(opt);
  const sim::InterceptionPlan plan = InitialPlan(scn, sim::PlanDepth::kFull);
  WriteFile(opt.out, "map.csv", [&](std::ostream& o) { io::WriteMapCsv(scn, o); });
  if (!plan.ok()) return ReportFailure(plan, err);
  WriteStageOutputs(scn, plan, opt.out);
  const auto schedules = io::ComparisonSchedules(plan, scn);
  WriteFile(opt.out, "speed_summary.csv", [&](std::ostream& o) {
    o << "planner,energy_metric,max_abs_accel,st_hits,terminal_s,s_max\n";
    for (const auto& [name, sched] : schedules) {
      o << name << ',' << FormatNumber(sched.EnergyMetric(plan.v0)) << ','
        << FormatNumber(sched.MaxAbsAcceleration(plan.v0)) << ','
        << sim::CountStHits(sched, plan.st_obstacles, 0.01) << ','
        << FormatNumber(sched.At(sched.horizon()).s) << ','
        << FormatNumber(plan.path.length()) << '\n';
    }
  });
  char buf[160];
  out << "planner    energy  max|a|  st_hits\n";
  for (const auto& [name, sched] : schedules) {
    std::snprintf(buf, sizeof(buf), "%-9s %7.4f %7.4f %8d\n", name.c_str(),
                  sched.EnergyMetric(plan.v0), sched.MaxAbsAcceleration(plan.v0),
                  sim::CountStHits(sched, plan.st_obstacles, 0.01));
    out << buf;
  }
  Plots(opt.out, out);
  return kExitOk;
}

int Intercept(const Options& opt, std::ostream& out, std::ostream& err) {
  const sim::Scenario scn = Load(opt);
  const sim::InterceptionLog log = sim::RunInterception(scn);
  const auto report = sim::CheckCollision(log, scn);
  WriteFile(opt.out, "map.csv", [&](std::ostream& o) { io::WriteMapCsv(scn, o); });
  WriteFile(opt.out, "log.csv", [&](std::ostream& o) { sim::WriteLogCsv(log, o); });
  WriteFile(opt.out, "violations.csv",
            [&](std::ostream& o) { sim::WriteViolationsCsv(report, o); });
  WriteFile(opt.out, "summary.csv",
            [&](std::ostream& o) { sim::WriteSummaryCsv(sim::Summarize(log, scn), o); });
  WriteFile(opt.out, "timing.csv", [&](std::ostream& o) { io::WriteTimingCsv(log.plans, o); });
  if (!log.plans.empty() && log.plans.front().ok()) {
    WriteStageOutputs(scn, log.plans.front(), opt.out);
  }
  out << "outcome " << sim::ToString(log.outcome) << ", miss distance "
      << FormatNumber(log.miss_distance) << " m, violations " << report.size() << '\n';
  Plots(opt.out, out);
  if (log.outcome == sim::Outcome::kInfeasible) {
    err << "infeasible: " << log.failed_stage << " stage: " << log.message << '\n';
  }
  return log.outcome == sim::Outcome::kIntercepted ? kExitOk : kExitOutcome;
}

int Bench(const Options& opt, std::ostream& out, std::ostream& err) {
  const sim::Scenario scn = Load(opt);
  std::vector<sim::InterceptionPlan> plans(static_cast<size_t>(opt.repeat));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < opt.repeat; i = next++) {
      plans[i] = InitialPlan(scn, sim::PlanDepth::kFull);
    }
  };
  const int threads = std::clamp(opt.threads, 1, opt.repeat);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& p : plans) {
    if (!p.ok()) return ReportFailure(p, err);
  }
  struct Stage {
    const char* label;
    double sim::StageTimes::*field;
  };
  const Stage stages[] = {{"Prediction", &sim::StageTimes::prediction_ms},
                          {"Path-Planner", &sim::StageTimes::path_ms},
                          {"Speed-Planner", &sim::StageTimes::speed_ms},
                          {"Total", &sim::StageTimes::total_ms}};
  char buf[160];
  std::ostringstream csv;
  csv << "stage,mean_ms,median_ms,min_ms,max_ms,repeat\n";
  out << "stage           mean[ms]  median[ms]   min[ms]   max[ms]\n";
  for (const Stage& s : stages) {
    std::vector<double> v;
    for (const auto& p : plans) v.push_back(p.times.*s.field);
    std::sort(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    const double median = v.size() % 2 ? v[v.size() / 2]
                                       : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    csv << s.label << ',' << FormatNumber(mean) << ',' << FormatNumber(median) << ','
        << FormatNumber(v.front()) << ',' << FormatNumber(v.back()) << ',' << opt.repeat
        << '\n';
    std::snprintf(buf, sizeof(buf), "%-14s %9.3f %11.3f %9.3f %9.3f\n", s.label, mean,
                  median, v.front(), v.back());
    out << buf;
  }
  WriteFile(opt.out, "timing.csv", [&](std::ostream& o) { o << csv.str(); });
  return kExitOk;
}

int Plot(const Options& opt, std::ostream& out) {
  if (!fs::is_directory(opt.plot_dir)) throw InputError{"no such directory " + opt.plot_dir};
  const auto written = io::RenderPlots(opt.plot_dir);
  if (written.empty()) throw InputError{"no known CSV files in " + opt.plot_dir};
  Plots(opt.plot_dir, out);
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& opt, bool scenario_required) {
  auto* s = cmd->add_option("scenario", opt.scenario, "Scenario file (JSON)");
  if (scenario_required) s->required();
  cmd->add_option("--seed", opt.seed, "Override the scenario seed");
  cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
}

void AddPlanFlags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--speed-planner", opt.planner, "Speed planner")
      ->check(CLI::IsMember({"optimized", "uniform", "dp"}));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moving-target interception planner", "intercept"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  Options opt;

  auto* predict = app.add_subcommand("predict", "Prediction error vs horizon over noisy trials");
  AddCommon(predict, opt, false);
  predict->add_option("--mode", opt.mode, "Target motion")
      ->check(CLI::IsMember({"uniform", "curve", "both"}))
      ->capture_default_str();
  predict->add_option("--trials", opt.trials, "Trials per motion")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  predict->add_option("--horizons", opt.horizons, "Prediction horizons [s]")
      ->capture_default_str();
  predict->add_option("--threads", opt.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* plan = app.add_subcommand("plan", "Prediction and path stages; coarse and smoothed path");
  AddCommon(plan, opt, true);

  auto* speed = app.add_subcommand("speed", "Full plan; ST graph, speed and acceleration profiles");
  AddCommon(speed, opt, true);
  AddPlanFlags(speed, opt);

  auto* intercept = app.add_subcommand("intercept", "Closed-loop interception run");
  AddCommon(intercept, opt, true);
  AddPlanFlags(intercept, opt);
  intercept->add_option("--replan", opt.replan, "Periodic replanning")
      ->check(CLI::IsMember({"on", "off"}));
  intercept->add_option("--track", opt.track, "Tracking mode")
      ->check(CLI::IsMember({"playback", "pursuit"}));

  auto* bench = app.add_subcommand("bench", "Per-stage planning times");
  AddCommon(bench, opt, true);
  AddPlanFlags(bench, opt);
  bench->add_option("--repeat", opt.repeat, "Planning repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--threads", opt.threads, "Worker threads")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* plot = app.add_subcommand("plot", "Re-render plots/*.svg from the CSVs in a run directory");
  plot->add_option("dir", opt.plot_dir, "Run directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*predict) return Predict(opt, out);
    if (*plan) return Plan(opt, out, err);
    if (*speed) return Speed(opt, out, err);
    if (*intercept) return Intercept(opt, out, err);
    if (*bench) return Bench(opt, out, err);
    if (*plot) return Plot(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace intercept::cli
