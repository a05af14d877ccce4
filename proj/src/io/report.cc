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

#include "intercept/io/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "intercept/common/error.h"
#include "intercept/speed/speed_optimizer.h"

namespace intercept::io {
namespace {

namespace fs = std::filesystem;

constexpr double kSampleDt = 0.05;

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// ----- SVG -----

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish(double pad_fraction) {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-9) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = pad_fraction * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

using Points = std::vector<std::pair<double, double>>;

class Panel {
 public:
  Panel(double x, double y, double w, double h, Range xr, Range yr)
      : x_(x), y_(y), w_(w), h_(h), xr_(xr), yr_(yr) {}

  // Equal scale on both axes, for maps.
  void MakeIsometric() {
    const double sx = w_ / (xr_.hi - xr_.lo);
    const double sy = h_ / (yr_.hi - yr_.lo);
    if (sx > sy) {
      const double mid = 0.5 * (xr_.lo + xr_.hi);
      const double half = 0.5 * w_ / sy;
      xr_ = {mid - half, mid + half};
    } else {
      const double mid = 0.5 * (yr_.lo + yr_.hi);
      const double half = 0.5 * h_ / sx;
      yr_ = {mid - half, mid + half};
    }
  }

  double X(double v) const { return x_ + (v - xr_.lo) / (xr_.hi - xr_.lo) * w_; }
  double Y(double v) const { return y_ + h_ - (v - yr_.lo) / (yr_.hi - yr_.lo) * h_; }

  void Axes(std::ostream& o, const std::string& title, const std::string& xlabel,
            const std::string& ylabel) const {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                  "fill=\"none\" stroke=\"#333\"/>\n",
                  x_, y_, w_, h_);
    o << buf;
    for (int i = 0; i <= 4; ++i) {
      const double vx = xr_.lo + i * (xr_.hi - xr_.lo) / 4.0;
      const double vy = yr_.lo + i * (yr_.hi - yr_.lo) / 4.0;
      std::snprintf(buf, sizeof(buf),
                    "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" "
                    "text-anchor=\"middle\">%.3g</text>\n",
                    X(vx), y_ + h_ + 14, vx);
      o << buf;
      std::snprintf(buf, sizeof(buf),
                    "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" "
                    "text-anchor=\"end\">%.3g</text>\n",
                    x_ - 4, Y(vy) + 3, vy);
      o << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  x_ + w_ / 2, y_ - 8, title.c_str());
    o << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  x_ + w_ / 2, y_ + h_ + 30, xlabel.c_str());
    o << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 %.1f %.1f)\">%s</text>\n",
                  x_ - 36, y_ + h_ / 2, x_ - 36, y_ + h_ / 2, ylabel.c_str());
    o << buf;
  }

  void Line(std::ostream& o, const Points& pts, const std::string& color,
            bool dashed = false, double width = 1.5) const {
    if (pts.size() < 2) return;
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\"" << (dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
    PointList(o, pts);
    o << "\"/>\n";
  }

  void Shape(std::ostream& o, const Points& pts, const std::string& fill,
             double opacity) const {
    if (pts.size() < 3) return;
    o << "<polygon fill=\"" << fill << "\" fill-opacity=\"" << opacity
      << "\" stroke=\"" << fill << "\" points=\"";
    PointList(o, pts);
    o << "\"/>\n";
  }

  void Dot(std::ostream& o, double x, double y, const std::string& color) const {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"%s\"/>\n", X(x), Y(y),
                  color.c_str());
    o << buf;
  }

  void Legend(std::ostream& o, int slot, const std::string& label,
              const std::string& color) const {
    char buf[256];
    const double ly = y_ + 14 + 14 * slot;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                  "stroke-width=\"2\"/>\n<text x=\"%.1f\" y=\"%.1f\" "
                  "font-size=\"10\">%s</text>\n",
                  x_ + w_ - 110, ly - 3, x_ + w_ - 92, ly - 3, color.c_str(),
                  x_ + w_ - 88, ly, label.c_str());
    o << buf;
  }

 private:
  void PointList(std::ostream& o, const Points& pts) const {
    char buf[64];
    for (size_t i = 0; i < pts.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", i ? " " : "", X(pts[i].first),
                    Y(pts[i].second));
      o << buf;
    }
  }

  double x_, y_, w_, h_;
  Range xr_, yr_;
};

void BeginSvg(std::ostream& o, int w, int h) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << ' ' << h << "\" font-family=\"sans-serif\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

const std::vector<std::string> kPalette = {"#1f77b4", "#d62728", "#e6b800", "#2ca02c",
                                           "#9467bd", "#8c564b"};

std::string PlannerColor(const std::string& name) {
  if (name == "optimized") return "#1f77b4";
  if (name == "uniform") return "#e6b800";
  if (name == "dp") return "#2ca02c";
  return "#555";
}

// Groups rows by (kind, index) keeping first-seen order.
std::vector<std::pair<std::string, Points>> Group(const CsvTable& t,
                                                  const std::string& x,
                                                  const std::string& y,
                                                  const std::string& key = "kind",
                                                  const std::string& index = "index") {
  const size_t ck = t.Column(key);
  const size_t ci = index.empty() ? 0 : t.Column(index);
  const size_t cx = t.Column(x);
  const size_t cy = t.Column(y);
  std::vector<std::pair<std::string, Points>> out;
  std::map<std::string, size_t> slot;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const std::string id = t.rows[r][ck] + (index.empty() ? "" : "#" + t.rows[r][ci]);
    auto it = slot.find(id);
    if (it == slot.end()) {
      it = slot.emplace(id, out.size()).first;
      out.push_back({t.rows[r][ck], {}});
    }
    out[it->second].second.emplace_back(t.Number(r, cx), t.Number(r, cy));
  }
  return out;
}

std::string RenderPathPlot(const std::string& dir) {
  std::ostringstream o;
  const CsvTable map = ReadCsv(dir + "/map.csv");
  const bool has_path = fs::exists(dir + "/path.csv");
  const bool has_log = fs::exists(dir + "/log.csv");
  Range xr, yr;
  const auto shapes = Group(map, "x", "y");
  for (const auto& [kind, pts] : shapes) {
    for (const auto& [x, y] : pts) {
      xr.Add(x);
      yr.Add(y);
    }
  }
  xr.Finish(0.03);
  yr.Finish(0.03);
  Panel p(60, 40, 560, 560, xr, yr);
  p.MakeIsometric();
  BeginSvg(o, 660, 660);
  p.Axes(o, "Interception path", "x [m]", "y [m]");
  for (const auto& [kind, pts] : shapes) {
    if (kind == "static") p.Shape(o, pts, "#555", 0.6);
    if (kind == "dynamic") p.Shape(o, pts, "#d62728", 0.35);
  }
  int slot = 0;
  if (has_path) {
    for (const auto& [kind, pts] : Group(ReadCsv(dir + "/path.csv"), "x", "y")) {
      const bool coarse = kind == "coarse";
      p.Line(o, pts, coarse ? "#999" : "#1f77b4", coarse);
    }
    p.Legend(o, slot++, "coarse path", "#999");
    p.Legend(o, slot++, "smoothed path", "#1f77b4");
  }
  if (has_log) {
    const CsvTable log = ReadCsv(dir + "/log.csv");
    Points robot, target;
    const size_t cx = log.Column("x"), cy = log.Column("y");
    const size_t tx = log.Column("target_x"), ty = log.Column("target_y");
    for (size_t r = 0; r < log.rows.size(); ++r) {
      robot.emplace_back(log.Number(r, cx), log.Number(r, cy));
      target.emplace_back(log.Number(r, tx), log.Number(r, ty));
    }
    p.Line(o, target, "#ff7f0e", true);
    p.Line(o, robot, "#2ca02c", false, 1.0);
    if (!robot.empty()) {
      p.Dot(o, robot.back().first, robot.back().second, "#2ca02c");
      p.Dot(o, target.back().first, target.back().second, "#ff7f0e");
    }
    p.Legend(o, slot++, "robot", "#2ca02c");
    p.Legend(o, slot++, "target", "#ff7f0e");
  }
  o << "</svg>\n";
  return o.str();
}

std::string RenderStPlot(const std::string& dir) {
  std::ostringstream o;
  const CsvTable st = ReadCsv(dir + "/st_graph.csv");
  const auto groups = Group(st, "t", "s");
  Range tr, sr;
  for (const auto& [kind, pts] : groups) {
    for (const auto& [t, s] : pts) {
      tr.Add(t);
      sr.Add(s);
    }
  }
  tr.Finish(0.02);
  sr.Finish(0.05);
  Panel p(70, 40, 620, 420, tr, sr);
  BeginSvg(o, 740, 520);
  p.Axes(o, "ST graph", "t [s]", "s [m]");
  std::vector<std::string> legend;
  for (const auto& [kind, pts] : groups) {
    if (kind == "obstacle") {
      p.Shape(o, pts, "#d62728", 0.35);
    } else if (kind == "corridor_lower" || kind == "corridor_upper") {
      p.Line(o, pts, "#9467bd", true, 1.0);
    } else if (kind == "reference") {
      p.Line(o, pts, "#2ca02c", true, 1.0);
    } else if (kind.rfind("profile_", 0) == 0) {
      const std::string name = kind.substr(8);
      p.Line(o, pts, PlannerColor(name));
      if (std::find(legend.begin(), legend.end(), name) == legend.end()) {
        legend.push_back(name);
      }
    }
  }
  for (size_t i = 0; i < legend.size(); ++i) {
    p.Legend(o, static_cast<int>(i), legend[i], PlannerColor(legend[i]));
  }
  o << "</svg>\n";
  return o.str();
}

std::string RenderSpeedPlot(const std::string& dir) {
  std::ostringstream o;
  const CsvTable sp = ReadCsv(dir + "/speed.csv");
  const auto v = Group(sp, "t", "v", "planner", "");
  const auto a = Group(sp, "t", "a", "planner", "");
  BeginSvg(o, 740, 640);
  const std::pair<const char*, const std::vector<std::pair<std::string, Points>>*> panels[] =
      {{"v [m/s]", &v}, {"a [m/s^2]", &a}};
  for (int k = 0; k < 2; ++k) {
    Range tr, yr;
    for (const auto& [name, pts] : *panels[k].second) {
      if (k == 1 && name == "dp") continue;  // piecewise constant speed
      for (const auto& [t, y] : pts) {
        tr.Add(t);
        yr.Add(y);
      }
    }
    tr.Finish(0.02);
    yr.Finish(0.08);
    Panel p(70, 40 + k * 300, 620, 230, tr, yr);
    p.Axes(o, k == 0 ? "Speed" : "Acceleration", "t [s]", panels[k].first);
    int slot = 0;
    for (const auto& [name, pts] : *panels[k].second) {
      if (k == 1 && name == "dp") continue;
      p.Line(o, pts, PlannerColor(name));
      p.Legend(o, slot++, name, PlannerColor(name));
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string RenderPredictionPlot(const std::string& dir) {
  std::ostringstream o;
  const CsvTable pr = ReadCsv(dir + "/predict.csv");
  const auto groups = Group(pr, "horizon", "mean_relative_error", "motion", "");
  Range hr, er;
  er.Add(0.0);
  for (const auto& [name, pts] : groups) {
    for (const auto& [h, e] : pts) {
      hr.Add(h);
      er.Add(100.0 * e);
    }
  }
  hr.Finish(0.05);
  er.Finish(0.08);
  Panel p(70, 40, 560, 360, hr, er);
  BeginSvg(o, 680, 460);
  p.Axes(o, "Prediction error", "horizon [s]", "mean relative error [%]");
  for (size_t i = 0; i < groups.size(); ++i) {
    Points pct;
    for (const auto& [h, e] : groups[i].second) pct.emplace_back(h, 100.0 * e);
    const std::string& color = kPalette[i % kPalette.size()];
    p.Line(o, pct, color);
    for (const auto& [h, e] : pct) p.Dot(o, h, e, color);
    p.Legend(o, static_cast<int>(i), groups[i].first, color);
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace

std::vector<std::pair<std::string, sim::StationSchedule>> ComparisonSchedules(
    const sim::InterceptionPlan& plan, const sim::Scenario& scn) {
  std::vector<std::pair<std::string, sim::StationSchedule>> out;
  out.emplace_back(std::string(sim::ToString(scn.speed_planner)), plan.schedule);
  if (scn.speed_planner != sim::SpeedPlannerMode::kUniform) {
    out.emplace_back("uniform", sim::StationSchedule::FromProfile(speed::UniformProfile(
                                    plan.horizon, plan.path.length(), scn.speed.qp.order)));
  }
  if (scn.speed_planner != sim::SpeedPlannerMode::kDp &&
      plan.reference.stations.size() >= 2) {
    out.emplace_back("dp", sim::StationSchedule::FromPolyline(plan.reference));
  }
  return out;
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

size_t CsvTable::Column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::kParse, "csv has no column " + name);
  return static_cast<size_t>(it - header.begin());
}

double CsvTable::Number(size_t row, size_t col) const {
  const std::string& cell = rows.at(row).at(col);
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParse, "csv cell '" + cell + "' is not a number");
}

CsvTable ParseCsv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "csv is empty");
  t.header = Split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = Split(line);
    if (cells.size() != t.header.size()) {
      throw Error(ErrorCode::kParse, "csv row has " + std::to_string(cells.size()) +
                                         " cells, expected " +
                                         std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

CsvTable ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

void WriteMapCsv(const sim::Scenario& scn, std::ostream& out) {
  out << "kind,index,vertex,x,y,vx,vy,inflation\n";
  const auto& m = scn.map;
  const double corners[4][2] = {{0, 0}, {m.width, 0}, {m.width, m.height}, {0, m.height}};
  for (int i = 0; i < 4; ++i) {
    out << "bounds,0," << i << ',' << FormatNumber(corners[i][0]) << ','
        << FormatNumber(corners[i][1]) << ",0,0,0\n";
  }
  auto write = [&](const char* kind, const std::vector<geometry::Obstacle>& obs) {
    for (size_t i = 0; i < obs.size(); ++i) {
      for (size_t k = 0; k < obs[i].vertices_at_t0.size(); ++k) {
        const auto& v = obs[i].vertices_at_t0[k];
        out << kind << ',' << i << ',' << k << ',' << FormatNumber(v.x) << ','
            << FormatNumber(v.y) << ',' << FormatNumber(obs[i].velocity.x) << ','
            << FormatNumber(obs[i].velocity.y) << ',' << FormatNumber(obs[i].inflation)
            << '\n';
      }
    }
  };
  write("static", m.static_obstacles);
  write("dynamic", m.dynamic_obstacles);
}

void WritePathCsv(const sim::InterceptionPlan& plan, std::ostream& out) {
  out << "kind,index,x,y\n";
  for (const auto& p : plan.coarse) {
    out << "coarse,0," << FormatNumber(p.x) << ',' << FormatNumber(p.y) << '\n';
  }
  for (const auto& p : plan.smoothed) {
    out << "smoothed,0," << FormatNumber(p.x) << ',' << FormatNumber(p.y) << '\n';
  }
}

void WriteStGraphCsv(const sim::InterceptionPlan& plan, const sim::Scenario& scn,
                     std::ostream& out) {
  out << "kind,index,t,s\n";
  auto row = [&](const std::string& kind, size_t index, double t, double s) {
    out << kind << ',' << index << ',' << FormatNumber(t) << ',' << FormatNumber(s)
        << '\n';
  };
  for (size_t i = 0; i < plan.st_obstacles.size(); ++i) {
    for (const auto& v : plan.st_obstacles[i].vertices) row("obstacle", i, v.x, v.y);
  }
  for (size_t k = 0; k < plan.reference.stations.size(); ++k) {
    row("reference", 0, k * plan.reference.dt, plan.reference.stations[k]);
  }
  for (size_t j = 0; j < plan.corridor.segments.size(); ++j) {
    const auto& seg = plan.corridor.segments[j];
    row("corridor_lower", j, seg.t0, seg.Lower(seg.t0));
    row("corridor_lower", j, seg.t1, seg.Lower(seg.t1));
    row("corridor_upper", j, seg.t0, seg.Upper(seg.t0));
    row("corridor_upper", j, seg.t1, seg.Upper(seg.t1));
  }
  for (const auto& [name, sched] : ComparisonSchedules(plan, scn)) {
    const auto steps = static_cast<int>(std::ceil(sched.horizon() / kSampleDt - 1e-9));
    for (int k = 0; k <= steps; ++k) {
      const double t = std::min(k * kSampleDt, sched.horizon());
      row("profile_" + name, 0, t, sched.At(t).s);
    }
  }
}

void WriteSpeedCsv(const sim::InterceptionPlan& plan, const sim::Scenario& scn,
                   std::ostream& out) {
  out << "planner,t,s,v,a\n";
  for (const auto& [name, sched] : ComparisonSchedules(plan, scn)) {
    const auto steps = static_cast<int>(std::ceil(sched.horizon() / kSampleDt - 1e-9));
    for (int k = 0; k <= steps; ++k) {
      const double t = std::min(k * kSampleDt, sched.horizon());
      const auto p = sched.At(t);
      out << name << ',' << FormatNumber(t) << ',' << FormatNumber(p.s) << ','
          << FormatNumber(p.v) << ',' << FormatNumber(p.a) << '\n';
    }
  }
}

void WriteTimingCsv(const std::vector<sim::InterceptionPlan>& plans, std::ostream& out) {
  out << "stage,plan,ms\n";
  for (size_t i = 0; i < plans.size(); ++i) {
    const auto& t = plans[i].times;
    out << "prediction," << i << ',' << FormatNumber(t.prediction_ms) << '\n'
        << "path," << i << ',' << FormatNumber(t.path_ms) << '\n'
        << "speed," << i << ',' << FormatNumber(t.speed_ms) << '\n'
        << "total," << i << ',' << FormatNumber(t.total_ms) << '\n';
  }
}

void WritePredictionCsv(
    const std::vector<std::pair<sim::TargetMotion, sim::PredictionStats>>& rows,
    std::ostream& out) {
  out << "motion,horizon,mean_relative_error,mean_abs_error,trials\n";
  for (const auto& [motion, st] : rows) {
    for (size_t h = 0; h < st.horizons.size(); ++h) {
      out << sim::ToString(motion) << ',' << FormatNumber(st.horizons[h]) << ','
          << FormatNumber(st.mean_relative_error[h]) << ','
          << FormatNumber(st.mean_abs_error[h]) << ',' << st.trials << '\n';
    }
  }
}

std::vector<std::string> RenderPlots(const std::string& run_dir) {
  const std::pair<const char*, std::string (*)(const std::string&)> plots[] = {
      {"map.csv", RenderPathPlot},
      {"st_graph.csv", RenderStPlot},
      {"speed.csv", RenderSpeedPlot},
      {"predict.csv", RenderPredictionPlot},
  };
  const char* names[] = {"path.svg", "st_graph.svg", "speed.svg", "prediction.svg"};
  std::vector<std::string> written;
  for (size_t i = 0; i < 4; ++i) {
    if (!fs::exists(run_dir + "/" + plots[i].first)) continue;
    fs::create_directories(run_dir + "/plots");
    const std::string svg = plots[i].second(run_dir);
    std::ofstream(run_dir + "/plots/" + names[i]) << svg;
    written.push_back(std::string("plots/") + names[i]);
  }
  return written;
}

}  // namespace intercept::io
