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

#ifndef PLATOON_ENGINE_HPP_
#define PLATOON_ENGINE_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "platoon/controllers.hpp"
#include "platoon/perception.hpp"
#include "platoon/scenario.hpp"
#include "platoon/vehicle_models.hpp"

namespace platoon {

struct TraceRecord
{
  double t = 0;
  std::string vehicle_id;
  double x = 0;
  double y = 0;
  double psi = 0;
  double v_actual = 0;
  double vx_cmd = 0;
  double delta_cmd = 0;
  double vx_hat = 0;
  double vy_hat = 0;
  double omega_hat = 0;
  double d_measure = 0;
  double alpha = 0;
  double e_psi = 0;
  double e_y = 0;
  bool obs_valid = false;

  bool operator==(const TraceRecord &) const = default;
};

struct TraceLog
{
  ScenarioSpec scenario;
  std::vector<TraceRecord> records;  // tick-major, lead first within a tick
};

/// Lateral reference of the lane change as a function of the lead's traveled
/// distance: smoothstep from 0 to lateral_offset over `length`.
struct LaneReference
{
  double y = 0;
  double heading = 0;
};

LaneReference lane_change_reference(double traveled, const ManeuverSpec & maneuver);

/// Command of the lead at time t. `traveled` is the lead's odometer; Teleop
/// maneuvers return `operator_cmd` unchanged.
ChassisCommandd lead_command(
  double t, const ManeuverSpec & maneuver, const VehicleStated & lead, double traveled,
  const ChassisCommandd & operator_cmd = {});

/// Everything one vehicle did during one controller tick.
struct VehicleSnapshot
{
  std::string id;
  VehicleStated state;
  ChassisCommandd command;
  EstimatedMotiond estimate;
  RelativeObservationd observation;  // followers only; invalid for the lead
};

struct WorldSnapshot
{
  long tick = 0;
  double t = 0;
  std::vector<VehicleSnapshot> vehicles;
};

/// Closed-loop platoon advanced one controller tick at a time.
///
/// Each tick every follower samples its camera (at the camera rate, held in
/// between), runs the spacing PID and the configured lateral law on its
/// predecessor observation, and the lead follows its maneuver. Commands are
/// then held while the plant sub-steps to the next tick.
class World
{
public:
  explicit World(ScenarioSpec spec);

  /// Computes this tick's commands, advances the plant one tick and returns
  /// the snapshot taken at the start of the tick. `operator_cmd`, when present,
  /// replaces the held teleop command.
  WorldSnapshot step(const std::optional<ChassisCommandd> & operator_cmd = std::nullopt);

  void reset();

  long tick_index() const { return tick_; }
  double time() const { return static_cast<double>(tick_) * spec_.tick(); }
  const ScenarioSpec & spec() const { return spec_; }
  const VehicleStated & state(std::size_t i) const { return vehicles_.at(i).state; }
  void set_state(std::size_t i, const VehicleStated & state) { vehicles_.at(i).state = state; }
  std::size_t size() const { return vehicles_.size(); }
  const ChassisCommandd & operator_command() const { return operator_cmd_; }

private:
  struct Vehicle
  {
    VehicleStated state;
    double odometer = 0;
    ChassisCommandd last_command;
    PidStated pid;
    SensorRng rng;
    RelativeObservationd sample;
    long sample_index = -1;
    std::optional<RelativeObservationd> last_valid;
  };

  VehicleSnapshot command_lead(Vehicle & lead, double t);
  VehicleSnapshot command_follower(std::size_t i, double t);
  EstimatedMotiond estimate(std::size_t i, const ChassisCommandd & cmd) const;

  ScenarioSpec spec_;
  std::vector<Vehicle> vehicles_;
  ChassisCommandd operator_cmd_;
  long tick_ = 0;
};

/// Runs the scenario from t = 0 to duration inclusive. Deterministic in (spec, seed).
TraceLog run_scenario(const ScenarioSpec & spec);

std::vector<TraceRecord> to_records(const WorldSnapshot & snapshot);

// Trace CSV: header `t,vehicle_id,x,...,obs_valid`, floats with 9 significant digits.
extern const char * const kTraceCsvHeader;
void write_trace_csv(const TraceLog & trace, std::ostream & out);
void write_trace_csv(const TraceLog & trace, const std::filesystem::path & path);
/// Reads records back; the scenario snapshot is not part of the file.
std::vector<TraceRecord> read_trace_csv(std::istream & in);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path & path);

}  // namespace platoon

#endif  // PLATOON_ENGINE_HPP_
