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

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "platoon/engine.hpp"
#include "support.hpp"

using namespace platoon;

namespace {

ScenarioSpec two_vehicle_cruise(double cruise_speed)
{
  ScenarioSpec s = default_scenario();
  s.vehicles.resize(2);
  s.camera = s.camera.noiseless();
  s.maneuver.kind = ManeuverKind::StraightCruise;
  s.maneuver.cruise_speed = cruise_speed;
  s.duration = 30.0;
  return s;
}

double spacing_error(const TraceRecord & lead, const TraceRecord & follower, double d_goal)
{
  return std::hypot(lead.x - follower.x, lead.y - follower.y) - d_goal;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("lead_command") {
  ManeuverSpec m;
  m.kind = ManeuverKind::StraightCruise;
  const auto c = lead_command(12.3, m, VehicleStated{}, 5.0);
  CHECK(c.vx_obj == 0.2);
  CHECK(c.delta_obj == 0.0);

  m.kind = ManeuverKind::Teleop;
  const auto t = lead_command(0.0, m, VehicleStated{}, 0.0, ChassisCommandd{0.1, -0.2});
  CHECK(t.vx_obj == 0.1);
  CHECK(t.delta_obj == -0.2);

  m.kind = ManeuverKind::LaneChange;
  VehicleStated on_lane;
  on_lane.v_actual = 0.2;
  const auto before = lead_command(0.0, m, on_lane, 1.0);
  CHECK(before.vx_obj == 0.2);
  CHECK(before.delta_obj == 0.0);
  CHECK(lead_command(0.0, m, on_lane, m.start_x + 0.5 * m.length).delta_obj > 0.0);
}

TEST_CASE("lane change reference is a smoothstep") {
  ManeuverSpec m;
  CHECK(lane_change_reference(0.0, m).y == 0.0);
  CHECK(lane_change_reference(m.start_x, m).y == 0.0);
  CHECK(lane_change_reference(m.start_x + m.length / 2, m).y == doctest::Approx(m.lateral_offset / 2));
  CHECK(lane_change_reference(m.start_x + m.length, m).y == doctest::Approx(m.lateral_offset));
  CHECK(lane_change_reference(100.0, m).y == m.lateral_offset);
  CHECK(lane_change_reference(100.0, m).heading == 0.0);
  double prev = -1;
  for (double s = 0; s < 10; s += 0.01) {
    const double y = lane_change_reference(s, m).y;
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("a platoon at rest with nothing commanded stays in equilibrium") {
  const TraceLog log = run_scenario(two_vehicle_cruise(0.0));
  for (std::size_t i = 0; i + 1 < log.records.size(); i += 2) {
    CHECK(std::abs(spacing_error(log.records[i], log.records[i + 1], 0.5)) < 1e-6);
    CHECK(log.records[i + 1].vx_cmd == 0.0);
  }
}

TEST_CASE("straight cruise: integral action restores the goal spacing") {
  const TraceLog log = run_scenario(two_vehicle_cruise(0.2));
  const auto & recs = log.records;
  const std::size_t last = recs.size() - 2;
  CHECK(std::abs(spacing_error(recs[last], recs[last + 1], 0.5)) < 5e-3);
  CHECK(recs[last + 1].v_actual == doctest::Approx(0.2).epsilon(0.02));
  for (std::size_t i = 0; i < recs.size(); i += 2) {
    CHECK(std::abs(recs[i + 1].y) < 1e-9);
    CHECK(std::abs(recs[i + 1].psi) < 1e-9);
  }
}

TEST_CASE("run_scenario shape and cadence") {
  ScenarioSpec s = default_scenario();
  s.duration = 2.0;
  const TraceLog log = run_scenario(s);
  REQUIRE(log.records.size() == 61 * 3);
  for (std::size_t k = 0; k < 61; ++k) {
    CHECK(log.records[3 * k].t == doctest::Approx(k / 30.0).epsilon(1e-12));
    CHECK(log.records[3 * k].vehicle_id == "lead");
    CHECK(log.records[3 * k + 1].vehicle_id == "follower1");
    CHECK(log.records[3 * k + 2].vehicle_id == "follower2");
    CHECK_FALSE(log.records[3 * k].obs_valid);
  }
}

TEST_CASE("determinism: same seed gives identical traces, a new seed does not") {
  ScenarioSpec s = default_scenario();
  s.seed = 123;
  s.duration = 10.0;
  const TraceLog a = run_scenario(s);
  const TraceLog b = run_scenario(s);
  CHECK(a.records == b.records);
  std::ostringstream ca;
  std::ostringstream cb;
  write_trace_csv(a, ca);
  write_trace_csv(b, cb);
  CHECK(ca.str() == cb.str());

  s.seed = 124;
  CHECK_FALSE(run_scenario(s).records == a.records);
}

TEST_CASE("world reset reproduces the run") {
  ScenarioSpec s = default_scenario();
  World w(s);
  std::vector<TraceRecord> first;
  for (int k = 0; k < 90; ++k) {
    for (auto & r : to_records(w.step())) first.push_back(r);
  }
  w.reset();
  CHECK(w.tick_index() == 0);
  std::vector<TraceRecord> second;
  for (int k = 0; k < 90; ++k) {
    for (auto & r : to_records(w.step())) second.push_back(r);
  }
  CHECK(first == second);
}

TEST_CASE("property: followers only see their predecessor") {
  ScenarioSpec s = default_scenario();
  s.camera = s.camera.noiseless();
  World base(s);
  World perturbed(s);
  for (int k = 0; k < 900; ++k) {
    base.step();
    perturbed.step();
  }
  VehicleStated lead = perturbed.state(0);
  lead.y += 0.05;
  lead.psi += 0.1;
  perturbed.set_state(0, lead);

  // Tick of the perturbation: follower 1 reacts, follower 2 cannot.
  WorldSnapshot a = base.step();
  WorldSnapshot b = perturbed.step();
  CHECK(a.vehicles[1].command.delta_obj != b.vehicles[1].command.delta_obj);
  CHECK(a.vehicles[2].command.vx_obj == b.vehicles[2].command.vx_obj);
  CHECK(a.vehicles[2].command.delta_obj == b.vehicles[2].command.delta_obj);
  CHECK(a.vehicles[2].observation.d_measure == b.vehicles[2].observation.d_measure);

  // Follower 2 changes only once follower 1 has moved differently.
  a = base.step();
  b = perturbed.step();
  CHECK(a.vehicles[1].state.y != b.vehicles[1].state.y);
  CHECK(a.vehicles[2].command.delta_obj != b.vehicles[2].command.delta_obj);
}

TEST_CASE("property: a stopped plant does not move") {
  ScenarioSpec s = default_scenario();
  s.maneuver.kind = ManeuverKind::Teleop;
  s.camera = s.camera.noiseless();
  s.duration = 5.0;
  const TraceLog log = run_scenario(s);
  for (const auto & r : log.records) {
    CHECK(r.v_actual == 0.0);
    CHECK(r.vx_cmd == 0.0);
  }
  CHECK(log.records.back().x == s.vehicles[2].x);
  CHECK(log.records.back().psi == s.vehicles[2].psi);
}

TEST_CASE("teleop with a constant command matches straight cruise") {
  ScenarioSpec cruise = default_scenario();
  cruise.maneuver.kind = ManeuverKind::StraightCruise;
  cruise.duration = 10.0;
  ScenarioSpec teleop = cruise;
  teleop.maneuver.kind = ManeuverKind::Teleop;

  const TraceLog reference = run_scenario(cruise);
  World w(teleop);
  std::vector<TraceRecord> records;
  for (long k = 0; k <= teleop.tick_count(); ++k) {
    const auto cmd = k == 0 ? std::optional<ChassisCommandd>(ChassisCommandd{0.2, 0.0}) : std::nullopt;
    for (auto & r : to_records(w.step(cmd))) records.push_back(r);
  }
  REQUIRE(records.size() == reference.records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(std::abs(records[i].x - reference.records[i].x) <= 1e-6);
    CHECK(std::abs(records[i].y - reference.records[i].y) <= 1e-6);
    CHECK(records[i].delta_cmd == reference.records[i].delta_cmd);
  }
}

TEST_CASE("lane change settles on the new lane") {
  for (const LateralKind kind : {LateralKind::PurePursuit, LateralKind::Stanley}) {
    CAPTURE(to_string(kind));
    ScenarioSpec s = default_scenario();
    s.lateral.kind = kind;
    s.camera = s.camera.noiseless();
    const TraceLog log = run_scenario(s);
    const auto & recs = log.records;
    for (std::size_t i = recs.size() - 3; i < recs.size(); ++i) {
      CHECK(std::abs(recs[i].y - 0.9) < 0.05);
    }
    for (const auto & r : recs) {
      if (r.t > 10.0) CHECK(std::abs(r.v_actual - 0.2) < 0.03);
    }
  }
}

TEST_CASE("trace csv round trip") {
  ScenarioSpec s = default_scenario();
  s.duration = 1.0;
  const TraceLog log = run_scenario(s);
  std::stringstream buf;
  write_trace_csv(log, buf);
  const auto back = read_trace_csv(buf);
  REQUIRE(back.size() == log.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].vehicle_id == log.records[i].vehicle_id);
    CHECK(back[i].obs_valid == log.records[i].obs_valid);
    CHECK(back[i].x == doctest::Approx(log.records[i].x).epsilon(1e-8));
    CHECK(back[i].psi == doctest::Approx(log.records[i].psi).epsilon(1e-8));
  }
  TraceLog reread{s, back};
  std::ostringstream again;
  write_trace_csv(reread, again);
  CHECK(again.str() == buf.str());

  std::istringstream bad("t,vehicle_id\n0,lead\n");
  CHECK_THROWS_AS(read_trace_csv(bad), Error);
}

}  // TEST_SUITE
