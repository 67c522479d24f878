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

#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "platoon/scenario.hpp"
#include "support.hpp"

using namespace platoon;
using nlohmann::json;

namespace {

const std::filesystem::path kScenarioDir = PLATOON_SCENARIO_DIR;

std::string minimal_doc()
{
  return R"({
  "vehicles": [
    {"id": "lead", "chassis": "ackermann"},
    {"id": "f1", "chassis": "differential", "x": -0.5}
  ]
})";
}

std::string parse_error_field(const std::string & text)
{
  try {
    parse_scenario(text);
  } catch (const ParseError & e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal document takes the documented defaults") {
  const ScenarioSpec s = parse_scenario(minimal_doc());
  REQUIRE(s.vehicles.size() == 2);
  CHECK(s.vehicles[0].geometry.chassis_kind == ChassisKind::AckermannLead);
  CHECK(s.vehicles[1].geometry.chassis_kind == ChassisKind::DifferentialFollower);
  CHECK(s.vehicles[1].x == -0.5);
  CHECK(s.lateral.kind == LateralKind::PurePursuit);
  CHECK(s.pid.kp == 1.5);
  CHECK(s.pid.ki == 0.3);
  CHECK(s.pid.kd == 0.0);
  CHECK(s.d_goal == 0.5);
  CHECK(s.lateral.pure_pursuit.lookahead == 0.3);
  CHECK(s.lateral.stanley.ky == 0.4);
  CHECK(s.lateral.stanley.eps_v == 0.001);
  CHECK(s.camera.range_min == 0.2);
  CHECK(s.camera.range_max == 2.5);
  CHECK(s.camera.rate == 30.0);
  CHECK(s.maneuver.cruise_speed == 0.2);
  CHECK(s.duration == 40.0);
  CHECK(s.controller_rate == 30.0);
  CHECK(s.substeps() == 6);
  CHECK(s.tick_count() == 1200);
}

TEST_CASE("validation names the violated field") {
  SUBCASE("negative duration") {
    auto doc = json::parse(minimal_doc());
    doc["sim"]["duration"] = -1;
    CHECK_THROWS_WITH_AS(parse_scenario(doc.dump()), doctest::Contains("duration"), ValidationError);
  }
  SUBCASE("plant step that does not divide the tick") {
    auto doc = json::parse(minimal_doc());
    doc["sim"]["plant_dt"] = 0.004;
    CHECK_THROWS_WITH_AS(parse_scenario(doc.dump()), doctest::Contains("plant_dt"), ValidationError);
  }
  SUBCASE("single vehicle") {
    auto doc = json::parse(minimal_doc());
    doc["vehicles"].erase(1);
    CHECK_THROWS_AS(parse_scenario(doc.dump()), ValidationError);
  }
  SUBCASE("follower leading the platoon") {
    auto doc = json::parse(minimal_doc());
    std::swap(doc["vehicles"][0], doc["vehicles"][1]);
    CHECK_THROWS_AS(parse_scenario(doc.dump()), ValidationError);
  }
  SUBCASE("duplicate ids") {
    auto doc = json::parse(minimal_doc());
    doc["vehicles"][1]["id"] = "lead";
    CHECK_THROWS_AS(parse_scenario(doc.dump()), ValidationError);
  }
}

TEST_CASE("parse errors carry a field path or line") {
  auto doc = json::parse(minimal_doc());
  doc["controllers"]["pid"]["kq"] = 1.0;
  CHECK(parse_error_field(doc.dump()) == "$.controllers.pid.kq");

  doc = json::parse(minimal_doc());
  doc["sim"]["duration"] = "long";
  CHECK(parse_error_field(doc.dump()) == "$.sim.duration");

  doc = json::parse(minimal_doc());
  doc["controllers"]["lateral"] = "mpc";
  CHECK(parse_error_field(doc.dump()) == "$.controllers.lateral");

  try {
    parse_scenario("{\n  \"vehicles\": [\n    {\"id\": \"lead\",,}\n  ]\n}");
    FAIL("expected a syntax error");
  } catch (const ParseError & e) {
    CHECK(e.line() == 3);
  }

  CHECK_THROWS_AS(load_scenario("/nonexistent/platoon.json"), ParseError);
}

TEST_CASE("round trip through JSON") {
  ScenarioSpec s = default_scenario();
  s.seed = 17;
  s.lateral.kind = LateralKind::Stanley;
  s.camera.dropout_prob = 0.1;
  s.maneuver.kind = ManeuverKind::StraightCruise;
  const ScenarioSpec back = parse_scenario(scenario_to_json(s));
  CHECK(scenario_to_json(back) == scenario_to_json(s));
  CHECK(back.seed == 17);
  CHECK(back.lateral.kind == LateralKind::Stanley);
  CHECK(back.camera.dropout_prob == 0.1);
  CHECK(back.maneuver.kind == ManeuverKind::StraightCruise);
  CHECK(back.plant_dt == s.plant_dt);
  CHECK(back.vehicles[2].psi == s.vehicles[2].psi);
}

TEST_CASE("reference scenarios differ only in the lateral controller") {
  const ScenarioSpec pp = load_scenario(kScenarioDir / "lane_change_pp.json");
  const ScenarioSpec st = load_scenario(kScenarioDir / "lane_change_stanley.json");
  CHECK(pp.lateral.kind == LateralKind::PurePursuit);
  CHECK(st.lateral.kind == LateralKind::Stanley);
  CHECK(pp.seed == st.seed);
  ScenarioSpec st_as_pp = st;
  st_as_pp.lateral.kind = LateralKind::PurePursuit;
  CHECK(scenario_to_json(st_as_pp) == scenario_to_json(pp));
  CHECK(pp.vehicles.size() == 3);
}

}  // TEST_SUITE
