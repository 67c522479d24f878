// Copyright 2026 The Platoon Sim Authors
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

#include "platoon/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace platoon {

using nlohmann::json;

namespace {

/// Walks one JSON object, remembering which keys were consumed so leftovers
/// can be reported as unknown.
class ObjectReader
{
public:
  ObjectReader(const json & node, std::string path) : node_(node), path_(std::move(path))
  {
    if (!node_.is_object()) {
      throw ParseError(path_ + ": expected an object", path_);
    }
  }

  bool has(const std::string & key) const { return node_.contains(key); }

  const json & child(const std::string & key)
  {
    seen_.insert(key);
    return node_.at(key);
  }

  std::string child_path(const std::string & key) const { return path_ + "." + key; }

  void number(const std::string & key, double & out)
  {
    if (!has(key)) return;
    const json & v = child(key);
    if (!v.is_number()) throw ParseError(child_path(key) + ": expected a number", child_path(key));
    out = v.get<double>();
  }

  void integer(const std::string & key, std::uint64_t & out)
  {
    if (!has(key)) return;
    const json & v = child(key);
    if (!v.is_number_unsigned()) {
      throw ParseError(child_path(key) + ": expected a non-negative integer", child_path(key));
    }
    out = v.get<std::uint64_t>();
  }

  void integer(const std::string & key, int & out)
  {
    if (!has(key)) return;
    const json & v = child(key);
    if (!v.is_number_integer()) throw ParseError(child_path(key) + ": expected an integer", child_path(key));
    out = v.get<int>();
  }

  void text(const std::string & key, std::string & out)
  {
    if (!has(key)) return;
    const json & v = child(key);
    if (!v.is_string()) throw ParseError(child_path(key) + ": expected a string", child_path(key));
    out = v.get<std::string>();
  }

  void finish() const
  {
    for (const auto & item : node_.items()) {
      if (!seen_.contains(item.key())) {
        throw ParseError(child_path(item.key()) + ": unknown key", child_path(item.key()));
      }
    }
  }

private:
  const json & node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Enum, std::size_t N>
Enum parse_enum(
  const std::string & value, const std::pair<const char *, Enum> (&table)[N], const std::string & path)
{
  for (const auto & [name, e] : table) {
    if (value == name) return e;
  }
  throw ParseError(path + ": unrecognized value '" + value + "'", path);
}

template <typename Enum, std::size_t N>
const char * enum_name(Enum e, const std::pair<const char *, Enum> (&table)[N])
{
  for (const auto & [name, v] : table) {
    if (v == e) return name;
  }
  return "?";
}

constexpr std::pair<const char *, ChassisKind> kChassis[] = {
  {"ackermann", ChassisKind::AckermannLead},
  {"differential", ChassisKind::DifferentialFollower},
};
constexpr std::pair<const char *, LateralKind> kLateral[] = {
  {"pure_pursuit", LateralKind::PurePursuit},
  {"stanley", LateralKind::Stanley},
};
constexpr std::pair<const char *, ManeuverKind> kManeuver[] = {
  {"lane_change", ManeuverKind::LaneChange},
  {"teleop", ManeuverKind::Teleop},
  {"straight_cruise", ManeuverKind::StraightCruise},
};
constexpr std::pair<const char *, LookaheadMode> kLookahead[] = {
  {"fixed", LookaheadMode::Fixed},
  {"speed_scaled", LookaheadMode::SpeedScaled},
  {"measured", LookaheadMode::Measured},
};

void read_geometry(ObjectReader & r, VehicleGeometryd & g)
{
  r.number("wheelbase", g.wheelbase);
  r.number("track_width", g.track_width);
  r.number("rear_axle_to_cg", g.rear_axle_to_cg);
  r.number("max_steer", g.max_steer);
  r.number("max_speed", g.max_speed);
  r.finish();
}

VehicleSpec read_vehicle(const json & node, const std::string & path, std::size_t index)
{
  ObjectReader r(node, path);
  VehicleSpec v;
  v.geometry = index == 0 ? VehicleGeometryd::lead() : VehicleGeometryd::follower();
  v.id = index == 0 ? "lead" : "follower" + std::to_string(index);
  r.text("id", v.id);
  if (r.has("chassis")) {
    std::string chassis;
    r.text("chassis", chassis);
    v.geometry.chassis_kind = parse_enum(chassis, kChassis, r.child_path("chassis"));
  }
  if (r.has("geometry")) {
    ObjectReader g(r.child("geometry"), r.child_path("geometry"));
    read_geometry(g, v.geometry);
  }
  r.number("x", v.x);
  r.number("y", v.y);
  r.number("psi", v.psi);
  r.number("speed", v.speed);
  r.finish();
  return v;
}

void read_controllers(ObjectReader & r, ScenarioSpec & s)
{
  if (r.has("lateral")) {
    std::string lateral;
    r.text("lateral", lateral);
    s.lateral.kind = parse_enum(lateral, kLateral, r.child_path("lateral"));
  }
  r.number("d_goal", s.d_goal);
  if (r.has("pid")) {
    ObjectReader p(r.child("pid"), r.child_path("pid"));
    p.number("kp", s.pid.kp);
    p.number("ki", s.pid.ki);
    p.number("kd", s.pid.kd);
    p.number("v_min", s.pid.v_min);
    p.number("v_max", s.pid.v_max);
    p.number("integral_limit", s.pid.integral_limit);
    p.finish();
  }
  if (r.has("pure_pursuit")) {
    ObjectReader p(r.child("pure_pursuit"), r.child_path("pure_pursuit"));
    if (p.has("mode")) {
      std::string mode;
      p.text("mode", mode);
      s.lateral.pure_pursuit.mode = parse_enum(mode, kLookahead, p.child_path("mode"));
    }
    p.number("lookahead", s.lateral.pure_pursuit.lookahead);
    p.number("lookahead_gain", s.lateral.pure_pursuit.lookahead_gain);
    p.number("min_lookahead", s.lateral.pure_pursuit.min_lookahead);
    p.finish();
  }
  if (r.has("stanley")) {
    ObjectReader p(r.child("stanley"), r.child_path("stanley"));
    p.number("ky", s.lateral.stanley.ky);
    p.number("eps_v", s.lateral.stanley.eps_v);
    p.finish();
  }
  r.finish();
}

void read_camera(ObjectReader & r, CameraModeld & c)
{
  r.number("hfov", c.hfov);
  r.number("range_min", c.range_min);
  r.number("range_max", c.range_max);
  r.number("rate", c.rate);
  r.number("noise_sigma_pos", c.noise_sigma_pos);
  r.number("noise_sigma_ang", c.noise_sigma_ang);
  r.number("dropout_prob", c.dropout_prob);
  r.integer("seed", c.seed);
  r.integer("marker_id", c.marker_id);
  r.number("marker_size", c.marker_size);
  r.finish();
}

void read_maneuver(ObjectReader & r, ManeuverSpec & m)
{
  if (r.has("kind")) {
    std::string kind;
    r.text("kind", kind);
    m.kind = parse_enum(kind, kManeuver, r.child_path("kind"));
  }
  r.number("cruise_speed", m.cruise_speed);
  r.number("start_x", m.start_x);
  r.number("lateral_offset", m.lateral_offset);
  r.number("length", m.length);
  r.finish();
}

void read_sim(ObjectReader & r, ScenarioSpec & s)
{
  r.number("duration", s.duration);
  r.number("plant_dt", s.plant_dt);
  r.number("controller_rate", s.controller_rate);
  r.integer("seed", s.seed);
  r.number("tau_v", s.lags.tau_v);
  r.number("tau_delta", s.lags.tau_delta);
  r.number("lost_hold", s.lost_hold);
  r.finish();
}

std::size_t line_of(std::string_view text, std::size_t byte)
{
  const std::size_t end = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

json geometry_json(const VehicleGeometryd & g)
{
  return {
    {"wheelbase", g.wheelbase}, {"track_width", g.track_width},
    {"rear_axle_to_cg", g.rear_axle_to_cg}, {"max_steer", g.max_steer},
    {"max_speed", g.max_speed}};
}

}  // namespace

VehicleStated VehicleSpec::initial_state() const
{
  VehicleStated s;
  s.x = x;
  s.y = y;
  s.psi = wrap_angle(psi);
  s.v_actual = speed;
  return s;
}

int ScenarioSpec::substeps() const
{
  return static_cast<int>(std::lround(tick() / plant_dt));
}

long ScenarioSpec::tick_count() const
{
  return std::lround(std::floor(duration * controller_rate + 1e-9));
}

void ScenarioSpec::validate() const
{
  if (vehicles.size() < 2) throw ValidationError("vehicles: at least two vehicles are required");
  if (vehicles.front().geometry.chassis_kind != ChassisKind::AckermannLead) {
    throw ValidationError("vehicles[0]: the lead must use the ackermann chassis");
  }
  std::set<std::string> ids;
  for (const auto & v : vehicles) {
    if (v.id.empty()) throw ValidationError("vehicles: id must not be empty");
    if (!ids.insert(v.id).second) throw ValidationError("vehicles: duplicate id '" + v.id + "'");
    v.geometry.validate();
    if (!all_finite(v.x, v.y, v.psi, v.speed)) {
      throw ValidationError("vehicles: initial pose of '" + v.id + "' must be finite");
    }
  }
  if (!(d_goal > 0) || !std::isfinite(d_goal)) throw ValidationError("controllers.d_goal must be > 0");
  pid.validate();
  lateral.pure_pursuit.validate();
  lateral.stanley.validate();
  camera.validate();
  if (!std::isfinite(maneuver.cruise_speed)) throw ValidationError("maneuver.cruise_speed must be finite");
  if (!std::isfinite(maneuver.lateral_offset)) {
    throw ValidationError("maneuver.lateral_offset must be finite");
  }
  if (!(maneuver.length > 0) || !std::isfinite(maneuver.length)) {
    throw ValidationError("maneuver.length must be > 0");
  }
  if (!std::isfinite(maneuver.start_x)) throw ValidationError("maneuver.start_x must be finite");
  if (!(duration > 0) || !std::isfinite(duration)) throw ValidationError("sim.duration must be > 0");
  if (!(controller_rate > 0) || !std::isfinite(controller_rate)) {
    throw ValidationError("sim.controller_rate must be > 0");
  }
  if (!(plant_dt > 0 && plant_dt <= 0.1)) throw ValidationError("sim.plant_dt must lie in (0, 0.1]");
  const double steps = tick() / plant_dt;
  const double whole = std::round(steps);
  if (whole < 1 || std::abs(whole * plant_dt - tick()) > 1e-9) {
    throw ValidationError("sim.plant_dt must divide the controller period 1/controller_rate");
  }
  if (!(lags.tau_v >= 0) || !(lags.tau_delta >= 0)) {
    throw ValidationError("sim.tau_v and sim.tau_delta must be >= 0");
  }
  if (!(lost_hold >= 0) || !std::isfinite(lost_hold)) throw ValidationError("sim.lost_hold must be >= 0");
}

ScenarioSpec default_scenario()
{
  ScenarioSpec s;
  VehicleSpec lead;
  lead.id = "lead";
  lead.geometry = VehicleGeometryd::lead();
  VehicleSpec f1;
  f1.id = "follower1";
  f1.x = -s.d_goal;
  VehicleSpec f2;
  f2.id = "follower2";
  f2.x = -2.0 * s.d_goal;
  f2.psi = -0.36;  // fitted initial misalignment
  s.vehicles = {lead, f1, f2};
  return s;
}

ScenarioSpec parse_scenario(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(
      "scenario: syntax error at line " + std::to_string(line) + ": " + e.what(), "", line);
  }

  ScenarioSpec spec = default_scenario();
  ObjectReader root(doc, "$");
  if (root.has("vehicles")) {
    const json & list = root.child("vehicles");
    if (!list.is_array()) throw ParseError("$.vehicles: expected an array", "$.vehicles");
    spec.vehicles.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      spec.vehicles.push_back(read_vehicle(list[i], "$.vehicles[" + std::to_string(i) + "]", i));
    }
  }
  if (root.has("controllers")) {
    ObjectReader r(root.child("controllers"), "$.controllers");
    read_controllers(r, spec);
  }
  if (root.has("camera")) {
    ObjectReader r(root.child("camera"), "$.camera");
    read_camera(r, spec.camera);
  }
  if (root.has("maneuver")) {
    ObjectReader r(root.child("maneuver"), "$.maneuver");
    read_maneuver(r, spec.maneuver);
  }
  if (root.has("sim")) {
    ObjectReader r(root.child("sim"), "$.sim");
    read_sim(r, spec);
  }
  root.finish();
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw ParseError("scenario: cannot open " + path.string(), "");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioSpec & s)
{
  json vehicles = json::array();
  for (const auto & v : s.vehicles) {
    vehicles.push_back({
      {"id", v.id},
      {"chassis", enum_name(v.geometry.chassis_kind, kChassis)},
      {"geometry", geometry_json(v.geometry)},
      {"x", v.x}, {"y", v.y}, {"psi", v.psi}, {"speed", v.speed}});
  }
  const auto & pp = s.lateral.pure_pursuit;
  json doc = {
    {"vehicles", vehicles},
    {"controllers",
     {{"lateral", enum_name(s.lateral.kind, kLateral)},
      {"d_goal", s.d_goal},
      {"pid",
       {{"kp", s.pid.kp}, {"ki", s.pid.ki}, {"kd", s.pid.kd}, {"v_min", s.pid.v_min},
        {"v_max", s.pid.v_max}, {"integral_limit", s.pid.integral_limit}}},
      {"pure_pursuit",
       {{"mode", enum_name(pp.mode, kLookahead)}, {"lookahead", pp.lookahead},
        {"lookahead_gain", pp.lookahead_gain}, {"min_lookahead", pp.min_lookahead}}},
      {"stanley", {{"ky", s.lateral.stanley.ky}, {"eps_v", s.lateral.stanley.eps_v}}}}},
    {"camera",
     {{"hfov", s.camera.hfov}, {"range_min", s.camera.range_min},
      {"range_max", s.camera.range_max}, {"rate", s.camera.rate},
      {"noise_sigma_pos", s.camera.noise_sigma_pos}, {"noise_sigma_ang", s.camera.noise_sigma_ang},
      {"dropout_prob", s.camera.dropout_prob}, {"seed", s.camera.seed},
      {"marker_id", s.camera.marker_id}, {"marker_size", s.camera.marker_size}}},
    {"maneuver",
     {{"kind", enum_name(s.maneuver.kind, kManeuver)}, {"cruise_speed", s.maneuver.cruise_speed},
      {"start_x", s.maneuver.start_x}, {"lateral_offset", s.maneuver.lateral_offset},
      {"length", s.maneuver.length}}},
    {"sim",
     {{"duration", s.duration}, {"plant_dt", s.plant_dt},
      {"controller_rate", s.controller_rate}, {"seed", s.seed}, {"tau_v", s.lags.tau_v},
      {"tau_delta", s.lags.tau_delta}, {"lost_hold", s.lost_hold}}},
  };
  return doc.dump(2);
}

std::string_view to_string(LateralKind kind) { return enum_name(kind, kLateral); }
std::string_view to_string(ManeuverKind kind) { return enum_name(kind, kManeuver); }
std::string_view to_string(ChassisKind kind) { return enum_name(kind, kChassis); }

}  // namespace platoon
