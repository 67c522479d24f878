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

#ifndef PLATOON_VEHICLE_MODELS_HPP_
#define PLATOON_VEHICLE_MODELS_HPP_

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "platoon/angles.hpp"
#include "platoon/errors.hpp"

namespace platoon {

enum class ChassisKind { AckermannLead, DifferentialFollower };

/// Chassis dimensions and actuation limits. Defaults describe the scaled
/// platform (wheelbase 0.30 m, track 0.25 m, CG 0.15 m ahead of the rear axle).
template <typename Scalar>
struct VehicleGeometry
{
  Scalar wheelbase = Scalar(0.30);
  Scalar track_width = Scalar(0.25);
  Scalar rear_axle_to_cg = Scalar(0.15);
  ChassisKind chassis_kind = ChassisKind::DifferentialFollower;
  Scalar max_steer = Scalar(0.5);
  Scalar max_speed = Scalar(0.5);

  /// Throws ValidationError naming the first violated invariant.
  void validate() const
  {
    if (!(wheelbase > 0)) throw ValidationError("geometry: wheelbase must be > 0");
    if (!(track_width > 0)) throw ValidationError("geometry: track_width must be > 0");
    if (!(rear_axle_to_cg >= 0 && rear_axle_to_cg <= wheelbase)) {
      throw ValidationError("geometry: rear_axle_to_cg must lie in [0, wheelbase]");
    }
    if (!(max_steer > 0 && max_steer < std::numbers::pi_v<Scalar> / 2)) {
      throw ValidationError("geometry: max_steer must lie in (0, pi/2)");
    }
    if (!(max_speed > 0)) throw ValidationError("geometry: max_speed must be > 0");
  }

  static VehicleGeometry lead()
  {
    VehicleGeometry g;
    g.chassis_kind = ChassisKind::AckermannLead;
    return g;
  }

  static VehicleGeometry follower() { return VehicleGeometry{}; }
};

/// Ground-truth planar pose of the rear-axle center plus realized motion.
template <typename Scalar>
struct VehicleState
{
  Scalar x = 0;
  Scalar y = 0;
  Scalar psi = 0;
  Scalar v_actual = 0;
  Scalar delta_actual = 0;  // lead only; followers steer through wheel-speed differentials

  Eigen::Matrix<Scalar, 2, 1> position() const { return {x, y}; }
};

template <typename Scalar>
struct ChassisCommand
{
  Scalar vx_obj = 0;
  Scalar delta_obj = 0;
};

template <typename Scalar>
struct AckermannActuation
{
  Scalar v_left_obj = 0;
  Scalar v_right_obj = 0;
  Scalar delta_left_obj = 0;
};

/// Wheel speeds ordered left-front, left-rear, right-front, right-rear.
template <typename Scalar>
struct WheelSpeeds4
{
  Eigen::Matrix<Scalar, 4, 1> speeds = Eigen::Matrix<Scalar, 4, 1>::Zero();
  bool steer_clamped = false;
};

template <typename Scalar>
struct EstimatedMotion
{
  Scalar vx_hat = 0;
  Scalar vy_hat = 0;
  Scalar omega_hat = 0;
};

/// First-order actuator time constants. Zero disables a lag, infinity holds the value.
template <typename Scalar>
struct ActuatorLags
{
  Scalar tau_v = Scalar(0.4);
  Scalar tau_delta = Scalar(0.15);
};

namespace detail {

template <typename Scalar>
Scalar wheel_speed_ratio(Scalar delta, const VehicleGeometry<Scalar> & geom)
{
  return geom.track_width / (Scalar(2) * geom.wheelbase) * std::tan(delta);
}

template <typename Scalar>
Scalar lag_blend(Scalar dt, Scalar tau)
{
  if (tau <= 0) return Scalar(1);
  return Scalar(1) - std::exp(-dt / tau);
}

}  // namespace detail

/// Rear wheel speeds and front-left steer angle realizing (vx_obj, delta_obj)
/// on the Ackermann lead chassis.
template <typename Scalar>
AckermannActuation<Scalar> inverse_ackermann(
  const ChassisCommand<Scalar> & cmd, const VehicleGeometry<Scalar> & geom)
{
  if (!all_finite(cmd.vx_obj, cmd.delta_obj)) {
    throw InvalidCommand("inverse_ackermann: non-finite command");
  }
  const Scalar tan_delta = std::tan(cmd.delta_obj);
  const Scalar two_l = Scalar(2) * geom.wheelbase;
  const Scalar denom = two_l - geom.track_width * tan_delta;
  if (!(denom > 0)) {
    throw DegenerateGeometry("inverse_ackermann: 2L - W tan(delta) <= 0");
  }
  const Scalar k = detail::wheel_speed_ratio(cmd.delta_obj, geom);
  AckermannActuation<Scalar> out;
  out.v_left_obj = cmd.vx_obj * (Scalar(1) - k);
  out.v_right_obj = cmd.vx_obj * (Scalar(1) + k);
  out.delta_left_obj = std::atan(two_l * tan_delta / denom);
  return out;
}

/// Right front wheel angle satisfying cot(delta_r) - cot(delta_l) = W / L.
/// Straight wheels (delta_l = 0) map to 0.
template <typename Scalar>
Scalar ackermann_right_steer(Scalar delta_left, const VehicleGeometry<Scalar> & geom)
{
  if (delta_left == Scalar(0)) return Scalar(0);
  // cot(delta_r) = cot(delta_l) + W/L  =>  tan(delta_r) = tan(delta_l) / (1 + (W/L) tan(delta_l))
  const Scalar tan_left = std::tan(delta_left);
  const Scalar ratio = geom.track_width / geom.wheelbase;
  return std::atan(tan_left / (Scalar(1) + ratio * tan_left));
}

/// Body motion of the lead from rear wheel speeds and the measured front-left angle.
template <typename Scalar>
EstimatedMotion<Scalar> estimate_lead_motion(
  Scalar v_left_meas, Scalar v_right_meas, Scalar delta_left_meas,
  const VehicleGeometry<Scalar> & geom)
{
  if (!all_finite(v_left_meas, v_right_meas, delta_left_meas)) {
    throw InvalidCommand("estimate_lead_motion: non-finite measurement");
  }
  EstimatedMotion<Scalar> out;
  out.vx_hat = (v_left_meas + v_right_meas) / Scalar(2);
  if (delta_left_meas != Scalar(0)) {
    // L cot(d) + W/2 written as (L + W/2 tan(d)) / tan(d) so small angles stay well conditioned.
    const Scalar tan_left = std::tan(delta_left_meas);
    const Scalar denom = geom.wheelbase + geom.track_width / Scalar(2) * tan_left;
    out.vy_hat = geom.rear_axle_to_cg * tan_left / denom * out.vx_hat;
  }
  out.omega_hat = (v_right_meas - v_left_meas) / geom.track_width;
  return out;
}

/// Four wheel speed commands of the differential follower. The steering input
/// is clamped to max_steer and the clamp is reported.
template <typename Scalar>
WheelSpeeds4<Scalar> inverse_diff_steer(
  const ChassisCommand<Scalar> & cmd, const VehicleGeometry<Scalar> & geom)
{
  if (!all_finite(cmd.vx_obj, cmd.delta_obj)) {
    throw InvalidCommand("inverse_diff_steer: non-finite command");
  }
  WheelSpeeds4<Scalar> out;
  const Scalar delta = clamp_symmetric(cmd.delta_obj, geom.max_steer);
  out.steer_clamped = delta != cmd.delta_obj;
  const Scalar k = detail::wheel_speed_ratio(delta, geom);
  const Scalar left = cmd.vx_obj * (Scalar(1) - k);
  const Scalar right = cmd.vx_obj * (Scalar(1) + k);
  out.speeds << left, left, right, right;
  return out;
}

template <typename Scalar>
EstimatedMotion<Scalar> estimate_follower_motion(
  const WheelSpeeds4<Scalar> & wheels, const VehicleGeometry<Scalar> & geom)
{
  if (!wheels.speeds.allFinite()) {
    throw InvalidCommand("estimate_follower_motion: non-finite wheel speed");
  }
  const Eigen::Matrix<Scalar, 4, 1> yaw_weights(-1, -1, 1, 1);
  EstimatedMotion<Scalar> out;
  out.vx_hat = wheels.speeds.mean();
  out.omega_hat = yaw_weights.dot(wheels.speeds) / (Scalar(2) * geom.track_width);
  return out;
}

/// Advances the kinematic bicycle by one explicit Euler step of `dt`.
///
/// The pose integrates with the speed and steering realized at the start of the
/// step; the actuators then relax toward the clamped command through
/// first-order lags. Followers take the commanded steering directly and keep
/// delta_actual at zero.
template <typename Scalar>
VehicleState<Scalar> step_plant(
  const VehicleState<Scalar> & state, const ChassisCommand<Scalar> & cmd,
  const VehicleGeometry<Scalar> & geom, Scalar dt,
  const ActuatorLags<Scalar> & lags = ActuatorLags<Scalar>{})
{
  const Scalar v_cmd = clamp_symmetric(cmd.vx_obj, geom.max_speed);
  const Scalar delta_cmd = clamp_symmetric(cmd.delta_obj, geom.max_steer);
  const bool lead = geom.chassis_kind == ChassisKind::AckermannLead;
  const Scalar delta = lead ? state.delta_actual : delta_cmd;

  VehicleState<Scalar> next = state;
  next.x += dt * state.v_actual * std::cos(state.psi);
  next.y += dt * state.v_actual * std::sin(state.psi);
  next.psi = wrap_angle(state.psi + dt * state.v_actual * std::tan(delta) / geom.wheelbase);

  next.v_actual += (v_cmd - state.v_actual) * detail::lag_blend(dt, lags.tau_v);
  if (lead) {
    next.delta_actual += (delta_cmd - state.delta_actual) * detail::lag_blend(dt, lags.tau_delta);
  } else {
    next.delta_actual = 0;
  }
  return next;
}

using VehicleGeometryd = VehicleGeometry<double>;
using VehicleStated = VehicleState<double>;
using ChassisCommandd = ChassisCommand<double>;
using AckermannActuationd = AckermannActuation<double>;
using WheelSpeeds4d = WheelSpeeds4<double>;
using EstimatedMotiond = EstimatedMotion<double>;
using ActuatorLagsd = ActuatorLags<double>;

}  // namespace platoon

#endif  // PLATOON_VEHICLE_MODELS_HPP_
