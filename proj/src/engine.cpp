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

#include "platoon/engine.hpp"

#include <algorithm>
#include <cmath>

namespace platoon {

namespace {

// Internal lane-change tracking law of the lead (rear-axle Stanley form).
constexpr double kLeadCrosstrackGain = 0.5;
constexpr double kLeadSoftening = 0.05;  // m/s

}  // namespace

LaneReference lane_change_reference(double traveled, const ManeuverSpec & m)
{
  const double u = std::clamp((traveled - m.start_x) / m.length, 0.0, 1.0);
  LaneReference ref;
  ref.y = m.lateral_offset * u * u * (3.0 - 2.0 * u);
  ref.heading = std::atan(m.lateral_offset * 6.0 * u * (1.0 - u) / m.length);
  return ref;
}

ChassisCommandd lead_command(
  double /*t*/, const ManeuverSpec & m, const VehicleStated & lead, double traveled,
  const ChassisCommandd & operator_cmd)
{
  switch (m.kind) {
    case ManeuverKind::Teleop:
      return operator_cmd;
    case ManeuverKind::StraightCruise:
      return {m.cruise_speed, 0.0};
    case ManeuverKind::LaneChange:
      break;
  }
  const LaneReference ref = lane_change_reference(traveled, m);
  const double crosstrack = ref.y - lead.y;
  const double speed = std::max(lead.v_actual, 0.0);
  const double delta = wrap_angle(ref.heading - lead.psi) +
                       std::atan(kLeadCrosstrackGain * crosstrack / (speed + kLeadSoftening));
  return {m.cruise_speed, delta};
}

World::World(ScenarioSpec spec) : spec_(std::move(spec))
{
  spec_.validate();
  reset();
}

void World::reset()
{
  vehicles_.clear();
  const std::uint64_t base = derive_seed(spec_.seed, spec_.camera.seed);
  for (std::size_t i = 0; i < spec_.vehicles.size(); ++i) {
    Vehicle v;
    v.state = spec_.vehicles[i].initial_state();
    v.rng = SensorRng(derive_seed(base, i));
    vehicles_.push_back(std::move(v));
  }
  operator_cmd_ = {};
  tick_ = 0;
}

EstimatedMotiond World::estimate(std::size_t i, const ChassisCommandd & applied) const
{
  const VehicleGeometryd & geom = spec_.vehicles[i].geometry;
  const VehicleStated & s = vehicles_[i].state;
  if (geom.chassis_kind == ChassisKind::AckermannLead) {
    // Encoders see the realized rear wheel speeds and front-left angle.
    const AckermannActuationd wheels = inverse_ackermann(ChassisCommandd{s.v_actual, s.delta_actual}, geom);
    return estimate_lead_motion(wheels.v_left_obj, wheels.v_right_obj, wheels.delta_left_obj, geom);
  }
  const WheelSpeeds4d wheels = inverse_diff_steer(ChassisCommandd{s.v_actual, applied.delta_obj}, geom);
  return estimate_follower_motion(wheels, geom);
}

VehicleSnapshot World::command_lead(Vehicle & lead, double t)
{
  const VehicleGeometryd & geom = spec_.vehicles.front().geometry;
  VehicleSnapshot snap;
  snap.id = spec_.vehicles.front().id;
  snap.state = lead.state;
  snap.estimate = estimate(0, lead.last_command);
  ChassisCommandd cmd = lead_command(t, spec_.maneuver, lead.state, lead.odometer, operator_cmd_);
  cmd.vx_obj = clamp_symmetric(cmd.vx_obj, geom.max_speed);
  cmd.delta_obj = clamp_symmetric(cmd.delta_obj, geom.max_steer);
  lead.last_command = cmd;
  snap.command = cmd;
  return snap;
}

VehicleSnapshot World::command_follower(std::size_t i, double t)
{
  Vehicle & me = vehicles_[i];
  const VehicleGeometryd & geom = spec_.vehicles[i].geometry;

  const long sample_index = static_cast<long>(std::floor(t * spec_.camera.rate + 1e-9));
  if (sample_index != me.sample_index) {
    me.sample = observe(me.state, vehicles_[i - 1].state, spec_.camera, t, me.rng);
    me.sample_index = sample_index;
    if (me.sample.valid) me.last_valid = me.sample;
  }

  VehicleSnapshot snap;
  snap.id = spec_.vehicles[i].id;
  snap.state = me.state;
  snap.observation = me.sample;
  snap.estimate = estimate(i, me.last_command);

  ChassisCommandd cmd{0.0, 0.0};
  if (me.last_valid && t - me.last_valid->stamp <= spec_.lost_hold + 1e-9) {
    const RelativeObservationd & obs = *me.last_valid;
    const PidStepd speed = pid_step(me.pid, spec_.pid, obs.d_measure, spec_.d_goal, spec_.tick());
    me.pid = speed.state;
    cmd.vx_obj = speed.v_des;

    const LateralErrorsd err{obs.alpha, obs.e_psi, obs.e_y, snap.estimate.vx_hat};
    cmd.delta_obj = spec_.lateral.kind == LateralKind::PurePursuit
                      ? pure_pursuit_steer(err, spec_.lateral.pure_pursuit, geom, obs.d_measure)
                      : stanley_steer(err, spec_.lateral.stanley, geom);
  }
  me.last_command = cmd;
  snap.command = cmd;
  return snap;
}

WorldSnapshot World::step(const std::optional<ChassisCommandd> & operator_cmd)
{
  if (operator_cmd && all_finite(operator_cmd->vx_obj, operator_cmd->delta_obj)) {
    operator_cmd_ = *operator_cmd;
  }
  WorldSnapshot out;
  out.tick = tick_;
  out.t = time();
  out.vehicles.reserve(vehicles_.size());
  out.vehicles.push_back(command_lead(vehicles_.front(), out.t));
  for (std::size_t i = 1; i < vehicles_.size(); ++i) {
    out.vehicles.push_back(command_follower(i, out.t));
  }

  const int substeps = spec_.substeps();
  const double dt = spec_.tick() / substeps;
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    Vehicle & v = vehicles_[i];
    for (int k = 0; k < substeps; ++k) {
      v.odometer += std::abs(v.state.v_actual) * dt;
      v.state = step_plant(v.state, v.last_command, spec_.vehicles[i].geometry, dt, spec_.lags);
    }
  }
  ++tick_;
  return out;
}

std::vector<TraceRecord> to_records(const WorldSnapshot & snapshot)
{
  std::vector<TraceRecord> rows;
  rows.reserve(snapshot.vehicles.size());
  for (const auto & v : snapshot.vehicles) {
    TraceRecord r;
    r.t = snapshot.t;
    r.vehicle_id = v.id;
    r.x = v.state.x;
    r.y = v.state.y;
    r.psi = v.state.psi;
    r.v_actual = v.state.v_actual;
    r.vx_cmd = v.command.vx_obj;
    r.delta_cmd = v.command.delta_obj;
    r.vx_hat = v.estimate.vx_hat;
    r.vy_hat = v.estimate.vy_hat;
    r.omega_hat = v.estimate.omega_hat;
    r.d_measure = v.observation.d_measure;
    r.alpha = v.observation.alpha;
    r.e_psi = v.observation.e_psi;
    r.e_y = v.observation.e_y;
    r.obs_valid = v.observation.valid;
    rows.push_back(std::move(r));
  }
  return rows;
}

TraceLog run_scenario(const ScenarioSpec & spec)
{
  World world(spec);
  TraceLog log;
  log.scenario = spec;
  const long ticks = spec.tick_count();
  log.records.reserve(static_cast<std::size_t>(ticks + 1) * spec.vehicles.size());
  for (long k = 0; k <= ticks; ++k) {
    for (auto & r : to_records(world.step())) log.records.push_back(std::move(r));
  }
  return log;
}

}  // namespace platoon
