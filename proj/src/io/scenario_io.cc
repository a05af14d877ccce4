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

#include "intercept/io/scenario_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "intercept/common/error.h"

namespace intercept::io {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kValidation, key + " " + what);
}

// A JSON object being read; remembers which keys were consumed so that
// leftovers can be reported as unknown.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) Invalid(Label(), "must be an object");
  }

  std::string Key(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* Find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& Require(const std::string& key) {
    const json* v = Find(key);
    if (!v) Invalid(Key(key), "is required");
    return *v;
  }

  void Num(const std::string& key, double& out) {
    if (const json* v = Find(key)) out = AsNumber(*v, Key(key));
  }

  void Int(const std::string& key, int& out) {
    if (const json* v = Find(key)) {
      if (!v->is_number_integer()) Invalid(Key(key), "must be an integer");
      out = v->get<int>();
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (const json* v = Find(key)) {
      if (!v->is_boolean()) Invalid(Key(key), "must be true or false");
      out = v->get<bool>();
    }
  }

  void Str(const std::string& key, std::string& out) {
    if (const json* v = Find(key)) {
      if (!v->is_string()) Invalid(Key(key), "must be a string");
      out = v->get<std::string>();
    }
  }

  void OptNum(const std::string& key, std::optional<double>& out) {
    if (const json* v = Find(key)) {
      if (v->is_null()) {
        out.reset();
      } else {
        out = AsNumber(*v, Key(key));
      }
    }
  }

  /// Nested block; absent blocks read as empty objects so defaults apply.
  template <typename F>
  void Child(const std::string& key, F&& read) {
    static const json kEmpty = json::object();
    const json* v = Find(key);
    Block child(v ? *v : kEmpty, Key(key));
    read(child);
    child.Finish();
  }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) Invalid(Key(key), "is not a known key");
    }
  }

  static double AsNumber(const json& v, const std::string& key) {
    if (!v.is_number()) Invalid(key, "must be a number");
    return v.get<double>();
  }

  static std::vector<double> AsVector(const json& v, const std::string& key,
                                      size_t size) {
    if (!v.is_array() || v.size() != size) {
      Invalid(key, "must be an array of " + std::to_string(size) + " numbers");
    }
    std::vector<double> out;
    for (size_t i = 0; i < size; ++i) {
      out.push_back(AsNumber(v[i], key + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  static geometry::Vec2 AsVec2(const json& v, const std::string& key) {
    const auto xs = AsVector(v, key, 2);
    return {xs[0], xs[1]};
  }

 private:
  std::string Label() const { return path_.empty() ? "scenario" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

geometry::Obstacle ReadObstacle(const json& j, const std::string& path,
                                geometry::ObstacleKind kind) {
  Block b(j, path);
  geometry::Obstacle ob;
  ob.kind = kind;
  const json& poly = b.Require("polygon");
  if (!poly.is_array()) Invalid(b.Key("polygon"), "must be an array of [x, y]");
  for (size_t i = 0; i < poly.size(); ++i) {
    ob.vertices_at_t0.push_back(
        Block::AsVec2(poly[i], b.Key("polygon") + "[" + std::to_string(i) + "]"));
  }
  if (ob.vertices_at_t0.size() >= 3) {
    ob.vertices_at_t0 = geometry::MakeCounterClockwise(ob.vertices_at_t0);
  }
  b.Num("inflation", ob.inflation);
  if (kind == geometry::ObstacleKind::kDynamic) {
    ob.velocity = Block::AsVec2(b.Require("velocity"), b.Key("velocity"));
  }
  b.Finish();
  return ob;
}

json Vec2Json(const geometry::Vec2& v) { return json::array({v.x, v.y}); }

json ObstacleJson(const geometry::Obstacle& ob) {
  json poly = json::array();
  for (const auto& v : ob.vertices_at_t0) poly.push_back(Vec2Json(v));
  json j = {{"polygon", poly}, {"inflation", ob.inflation}};
  if (ob.kind == geometry::ObstacleKind::kDynamic) j["velocity"] = Vec2Json(ob.velocity);
  return j;
}

json OptJson(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string PositionText(std::string_view text, size_t byte) {
  int line = 1;
  int col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

sim::Scenario ParseScenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // The reported byte is one past the offending character.
    const size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::kParse, "parse error at " + PositionText(text, byte));
  }
  Block top(root, "");
  const json& version = top.Require("version");
  if (!version.is_number_integer() || version.get<int>() != kScenarioVersion) {
    Invalid("version", "must be " + std::to_string(kScenarioVersion));
  }

  sim::Scenario scn;
  top.Str("name", scn.name);
  if (const json* seed = top.Find("seed")) {
    if (!seed->is_number_unsigned()) Invalid("seed", "must be a non-negative integer");
    scn.seed = seed->get<uint64_t>();
  }

  top.Child("map", [&](Block& b) {
    b.Require("width");
    b.Require("height");
    b.Num("width", scn.map.width);
    b.Num("height", scn.map.height);
    b.Num("cell", scn.map.cell);
  });
  for (const char* key : {"static_obstacles", "dynamic_obstacles"}) {
    const json* list = top.Find(key);
    if (!list) continue;
    if (!list->is_array()) Invalid(key, "must be an array");
    const bool dynamic = std::string(key) == "dynamic_obstacles";
    auto& out = dynamic ? scn.map.dynamic_obstacles : scn.map.static_obstacles;
    for (size_t i = 0; i < list->size(); ++i) {
      out.push_back(ReadObstacle((*list)[i], std::string(key) + "[" + std::to_string(i) + "]",
                                 dynamic ? geometry::ObstacleKind::kDynamic
                                         : geometry::ObstacleKind::kStatic));
    }
  }

  top.Child("robot", [&](Block& b) {
    const auto start = Block::AsVector(b.Require("start"), "robot.start", 3);
    scn.start = {start[0], start[1], start[2]};
    b.Num("start_speed", scn.start_speed);
    b.Num("radius", scn.robot_radius);
    double wheelbase = 1.0, max_speed = 3.0, max_accel = 2.0, max_steer = 0.19,
           lateral = 3.0;
    b.Num("wheelbase", wheelbase);
    b.Num("max_speed", max_speed);
    b.Num("max_accel", max_accel);
    b.Num("max_steer", max_steer);
    b.Num("lateral_accel_limit", lateral);
    scn.robot = geometry::RobotParams::FromSteering(wheelbase, max_speed, max_accel,
                                                    max_steer, lateral);
  });

  top.Child("target", [&](Block& b) {
    const auto x0 = Block::AsVector(b.Require("x0"), "target.x0", 4);
    scn.target.x0 = {x0[0], x0[1], x0[2], x0[3]};
    b.Num("dt", scn.target.dt);
    const json* controls = b.Find("controls");
    std::string mode;
    b.Str("mode", mode);
    if (controls && !mode.empty()) Invalid("target", "takes controls or mode, not both");
    if (controls) {
      if (!controls->is_array()) Invalid("target.controls", "must be an array of [ux, uy]");
      for (size_t i = 0; i < controls->size(); ++i) {
        scn.target.controls.push_back(Block::AsVec2(
            (*controls)[i], "target.controls[" + std::to_string(i) + "]"));
      }
    } else if (mode == "curve") {
      scn.target.controls = {{0.0, 0.4 * scn.target.dt}};
    } else if (!mode.empty() && mode != "uniform") {
      Invalid("target.mode", "must be uniform or curve");
    }
  });

  top.Child("noise", [&](Block& b) {
    b.Num("sigma1", scn.noise.sigma1);
    b.Num("sigma2", scn.noise.sigma2);
  });
  scn.noise.seed = scn.seed;

  top.Child("plan", [&](Block& b) {
    b.Num("horizon", scn.horizon);
    b.Int("observations", scn.observations);
    b.Int("degree", scn.degree);
    b.Num("capture_radius", scn.capture_radius);
    b.Num("log_dt", scn.log_dt);
    b.Bool("replan", scn.replan);
    b.Num("replan_period", scn.replan_period);
    std::string track(sim::ToString(scn.track));
    b.Str("track", track);
    std::string planner(sim::ToString(scn.speed_planner));
    b.Str("speed_planner", planner);
    try {
      scn.track = sim::ParseTrackMode(track);
    } catch (const Error&) {
      Invalid("plan.track", "must be playback or pursuit");
    }
    try {
      scn.speed_planner = sim::ParseSpeedPlannerMode(planner);
    } catch (const Error&) {
      Invalid("plan.speed_planner", "must be optimized, uniform or dp");
    }
  });

  scn.search.cell_size = scn.map.cell;  // default; search.cell_size overrides
  top.Child("search", [&](Block& b) {
    b.Num("cell_size", scn.search.cell_size);
    b.Int("theta_bins", scn.search.theta_bins);
    b.Num("arc_length", scn.search.arc_length);
    b.Int("max_expansions", scn.search.max_expansions);
  });

  top.Child("smoother", [&](Block& b) {
    auto& s = scn.smoother;
    b.Num("w_obs", s.w_obs);
    b.Num("w_cur", s.w_cur);
    b.Num("w_smo", s.w_smo);
    b.Num("d_max", s.d_max);
    b.Num("alpha_obs", s.alpha_obs);
    b.Num("alpha_cur", s.alpha_cur);
    b.Num("alpha_smo", s.alpha_smo);
    b.Int("max_iters", s.max_iters);
    b.Num("converge_tol", s.converge_tol);
  });

  top.Child("speed", [&](Block& b) {
    auto& s = scn.speed;
    b.Num("dt", s.dt);
    b.Num("ds", s.ds);
    b.Int("segments", s.segments);
    b.Int("max_segments", s.max_segments);
    b.Child("dp", [&](Block& d) {
      d.Num("w_ref", s.dp.w_ref);
      d.Num("w_acc", s.dp.w_acc);
      d.Num("w_obs", s.dp.w_obs);
      d.Num("obs_margin", s.dp.obs_margin);
      d.Num("hard_margin", s.dp.hard_margin);
    });
    b.Child("qp", [&](Block& q) {
      q.Int("order", s.qp.order);
      q.Num("w_acc", s.qp.w_acc);
      q.Num("w_terminal", s.qp.w_terminal);
      q.Bool("hard_terminal", s.qp.hard_terminal);
      q.OptNum("terminal_speed", s.qp.terminal_speed);
      q.OptNum("terminal_accel", s.qp.terminal_accel);
      q.Num("v_min", s.qp.v_min);
      q.Num("tol", s.qp.qp.tol);
      q.Int("max_iters", s.qp.qp.max_iters);
    });
  });
  top.Finish();

  scn.Validate();
  return scn;
}

sim::Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string SerializeScenario(const sim::Scenario& scn) {
  json statics = json::array();
  for (const auto& ob : scn.map.static_obstacles) statics.push_back(ObstacleJson(ob));
  json dynamics = json::array();
  for (const auto& ob : scn.map.dynamic_obstacles) dynamics.push_back(ObstacleJson(ob));
  json controls = json::array();
  for (const auto& u : scn.target.controls) controls.push_back(Vec2Json(u));
  const auto& r = scn.robot;
  const auto& sm = scn.smoother;
  const auto& sp = scn.speed;

  const json root = {
      {"version", kScenarioVersion},
      {"name", scn.name},
      {"seed", scn.seed},
      {"map", {{"width", scn.map.width}, {"height", scn.map.height}, {"cell", scn.map.cell}}},
      {"static_obstacles", statics},
      {"dynamic_obstacles", dynamics},
      {"robot",
       {{"start", {scn.start.x, scn.start.y, scn.start.theta}},
        {"start_speed", scn.start_speed},
        {"radius", scn.robot_radius},
        {"wheelbase", r.wheelbase},
        {"max_speed", r.max_speed},
        {"max_accel", r.max_accel},
        {"max_steer", r.max_steer},
        {"lateral_accel_limit", r.lateral_accel_limit}}},
      {"target",
       {{"x0", {scn.target.x0.x, scn.target.x0.y, scn.target.x0.vx, scn.target.x0.vy}},
        {"controls", controls},
        {"dt", scn.target.dt}}},
      {"noise", {{"sigma1", scn.noise.sigma1}, {"sigma2", scn.noise.sigma2}}},
      {"plan",
       {{"horizon", scn.horizon},
        {"observations", scn.observations},
        {"degree", scn.degree},
        {"capture_radius", scn.capture_radius},
        {"log_dt", scn.log_dt},
        {"replan", scn.replan},
        {"replan_period", scn.replan_period},
        {"track", sim::ToString(scn.track)},
        {"speed_planner", sim::ToString(scn.speed_planner)}}},
      {"search",
       {{"cell_size", scn.search.cell_size},
        {"theta_bins", scn.search.theta_bins},
        {"arc_length", scn.search.arc_length},
        {"max_expansions", scn.search.max_expansions}}},
      {"smoother",
       {{"w_obs", sm.w_obs},
        {"w_cur", sm.w_cur},
        {"w_smo", sm.w_smo},
        {"d_max", sm.d_max},
        {"alpha_obs", sm.alpha_obs},
        {"alpha_cur", sm.alpha_cur},
        {"alpha_smo", sm.alpha_smo},
        {"max_iters", sm.max_iters},
        {"converge_tol", sm.converge_tol}}},
      {"speed",
       {{"dt", sp.dt},
        {"ds", sp.ds},
        {"segments", sp.segments},
        {"max_segments", sp.max_segments},
        {"dp",
         {{"w_ref", sp.dp.w_ref},
          {"w_acc", sp.dp.w_acc},
          {"w_obs", sp.dp.w_obs},
          {"obs_margin", sp.dp.obs_margin},
          {"hard_margin", sp.dp.hard_margin}}},
        {"qp",
         {{"order", sp.qp.order},
          {"w_acc", sp.qp.w_acc},
          {"w_terminal", sp.qp.w_terminal},
          {"hard_terminal", sp.qp.hard_terminal},
          {"terminal_speed", OptJson(sp.qp.terminal_speed)},
          {"terminal_accel", OptJson(sp.qp.terminal_accel)},
          {"v_min", sp.qp.v_min},
          {"tol", sp.qp.qp.tol},
          {"max_iters", sp.qp.qp.max_iters}}}}},
  };
  return root.dump(2) + "\n";
}

}  // namespace intercept::io
