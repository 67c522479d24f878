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

#ifndef PLATOON_SCENARIO_HPP_
#define PLATOON_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "platoon/controllers.hpp"
#include "platoon/perception.hpp"
#include "platoon/vehicle_models.hpp"

namespace platoon {

struct VehicleSpec
{
  std::string id;
  VehicleGeometryd geometry;
  double x = 0;
  double y = 0;
  double psi = 0;
  double speed = 0;

  VehicleStated initial_state() const;
};

enum class ManeuverKind { LaneChange, Teleop, StraightCruise };

struct ManeuverSpec
{
  ManeuverKind kind = ManeuverKind::LaneChange;
  double cruise_speed = 0.2;
  // LaneChange parameters; `start_x` and `length` are distances traveled by the lead.
  double start_x = 2.0;
  double lateral_offset = 0.9;
  double length = 4.0;
};

enum class LateralKind { PurePursuit, Stanley };

struct LateralControllerSpec
{
  LateralKind kind = LateralKind::PurePursuit;
  PurePursuitConfigd pure_pursuit;
  StanleyConfigd stanley;
};

/// Complete declarative description of one platoon experiment.
struct ScenarioSpec
{
  std::vector<VehicleSpec> vehicles;  // vehicles[0] is the lead
  LateralControllerSpec lateral;
  PidConfigd pid;
  double d_goal = 0.5;
  CameraModeld camera;
  ManeuverSpec maneuver;
  double duration = 40.0;
  double plant_dt = 1.0 / 180.0;
  double controller_rate = 30.0;
  std::uint64_t seed = 0;
  ActuatorLagsd lags;
  double lost_hold = 0.5;  // seconds a lost detection is bridged before stopping

  /// Throws ValidationError naming the violated invariant.
  void validate() const;

  /// Plant sub-steps per controller tick.
  int substeps() const;
  double tick() const { return 1.0 / controller_rate; }
  long tick_count() const;
};

/// The three-vehicle lane-change platoon with every default filled in.
ScenarioSpec default_scenario();

/// Parses a JSON scenario document. Missing fields take the defaults of
/// default_scenario(); unknown keys are rejected.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::filesystem::path & path);

/// Canonical JSON rendering; parse_scenario(scenario_to_json(s)) == s.
std::string scenario_to_json(const ScenarioSpec & spec);

std::string_view to_string(LateralKind kind);
std::string_view to_string(ManeuverKind kind);
std::string_view to_string(ChassisKind kind);

}  // namespace platoon

#endif  // PLATOON_SCENARIO_HPP_
