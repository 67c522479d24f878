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

#ifndef PLATOON_CONTROLLERS_HPP_
#define PLATOON_CONTROLLERS_HPP_

#include <algorithm>
#include <cmath>

#include "platoon/angles.hpp"
#include "platoon/errors.hpp"
#include "platoon/vehicle_models.hpp"

namespace platoon {

// ---------------------------------------------------------------------------
// Longitudinal spacing control
// ---------------------------------------------------------------------------

template <typename Scalar>
struct PidConfig
{
  Scalar kp = Scalar(1.5);
  Scalar ki = Scalar(0.3);
  Scalar kd = Scalar(0);
  Scalar v_min = Scalar(0);
  Scalar v_max = Scalar(0.5);
  Scalar integral_limit = Scalar(1.0);  // m*s

  void validate() const
  {
    if (!all_finite(kp, ki, kd, v_min, v_max, integral_limit)) {
      throw ValidationError("pid: gains and limits must be finite");
    }
    if (!(v_min <= v_max)) throw ValidationError("pid: v_min must be <= v_max");
    if (!(integral_limit > 0)) throw ValidationError("pid: integral_limit must be > 0");
  }
};

template <typename Scalar>
struct PidState
{
  Scalar integral = 0;
  Scalar prev_error = 0;
  Scalar last_output = 0;
  bool initialized = false;
  bool fault = false;
};

template <typename Scalar>
struct PidStep
{
  PidState<Scalar> state;
  Scalar v_des = 0;
  Scalar raw = 0;  // before the output clamp
};

/// One discrete PID update on the spacing error d_measure - d_goal.
///
/// Rectangular integration with the integral clamped to +-integral_limit,
/// backward-difference derivative (zero on the first call), output clamped to
/// [v_min, v_max]. Non-finite inputs leave the state untouched, repeat the
/// previous output and raise the fault flag.
template <typename Scalar>
PidStep<Scalar> pid_step(
  const PidState<Scalar> & st, const PidConfig<Scalar> & cfg, Scalar d_measure, Scalar d_goal,
  Scalar dt)
{
  if (!all_finite(d_measure, d_goal, dt) || !(dt > 0)) {
    PidStep<Scalar> held{st, st.last_output, st.last_output};
    held.state.fault = true;
    return held;
  }
  const Scalar error = d_measure - d_goal;
  PidStep<Scalar> out;
  out.state.integral = std::clamp(st.integral + error * dt, -cfg.integral_limit, cfg.integral_limit);
  const Scalar derivative = st.initialized ? (error - st.prev_error) / dt : Scalar(0);
  out.raw = cfg.kp * error + cfg.ki * out.state.integral + cfg.kd * derivative;
  out.v_des = std::clamp(out.raw, cfg.v_min, cfg.v_max);
  out.state.prev_error = error;
  out.state.last_output = out.v_des;
  out.state.initialized = true;
  out.state.fault = false;
  return out;
}

// ---------------------------------------------------------------------------
// Lateral control
// ---------------------------------------------------------------------------

/// Relative geometry between a follower and its predecessor as consumed by the
/// lateral laws.
template <typename Scalar>
struct LateralErrors
{
  Scalar alpha = 0;  // line-of-sight angle
  Scalar e_psi = 0;
  Scalar e_y = 0;
  Scalar v_xf = 0;  // follower longitudinal speed
};

enum class LookaheadMode {
  Fixed,        // l_d = lookahead
  SpeedScaled,  // l_d = max(lookahead_gain * v, min_lookahead)
  Measured,     // l_d = max(d_measure, min_lookahead)
};

template <typename Scalar>
struct PurePursuitConfig
{
  LookaheadMode mode = LookaheadMode::Fixed;
  Scalar lookahead = Scalar(0.3);
  Scalar lookahead_gain = Scalar(1.5);  // seconds
  Scalar min_lookahead = Scalar(0.05);

  void validate() const
  {
    if (!(min_lookahead > 0)) throw ValidationError("pure_pursuit: min_lookahead must be > 0");
    if (mode == LookaheadMode::Fixed && !(lookahead > 0)) {
      throw ValidationError("pure_pursuit: lookahead must be > 0");
    }
    if (mode == LookaheadMode::SpeedScaled && !(lookahead_gain > 0)) {
      throw ValidationError("pure_pursuit: lookahead_gain must be > 0");
    }
  }
};

template <typename Scalar>
struct StanleyConfig
{
  Scalar ky = Scalar(0.4);
  Scalar eps_v = Scalar(0.001);  // magnitude; the sign follows the correction direction

  void validate() const
  {
    if (!(ky > 0) || !std::isfinite(ky)) throw ValidationError("stanley: ky must be > 0");
    if (!(eps_v != 0) || !std::isfinite(eps_v)) throw ValidationError("stanley: eps_v must be != 0");
  }
};

template <typename Scalar>
Scalar resolve_lookahead(
  Scalar v_xf, const PurePursuitConfig<Scalar> & cfg, Scalar d_measure = Scalar(0))
{
  switch (cfg.mode) {
    case LookaheadMode::Fixed:
      return cfg.lookahead;
    case LookaheadMode::SpeedScaled:
      return std::max(cfg.lookahead_gain * v_xf, cfg.min_lookahead);
    case LookaheadMode::Measured:
      return std::max(d_measure, cfg.min_lookahead);
  }
  return cfg.lookahead;
}

/// Steering that puts the rear axle on the arc through the target point.
template <typename Scalar>
Scalar pure_pursuit_steer(
  const LateralErrors<Scalar> & err, const PurePursuitConfig<Scalar> & cfg,
  const VehicleGeometry<Scalar> & geom, Scalar d_measure)
{
  const Scalar lookahead = resolve_lookahead(err.v_xf, cfg, d_measure);
  const Scalar delta = std::atan(Scalar(2) * geom.wheelbase * std::sin(err.alpha) / lookahead);
  return clamp_symmetric(delta, geom.max_steer);
}

/// Signed regularization: +|eps| for e_y >= 0, -|eps| otherwise.
template <typename Scalar>
Scalar stanley_regularization(Scalar e_y, const StanleyConfig<Scalar> & cfg)
{
  const Scalar magnitude = std::abs(cfg.eps_v);
  return e_y >= 0 ? magnitude : -magnitude;
}

/// Heading alignment plus a speed-attenuated crosstrack correction.
template <typename Scalar>
Scalar stanley_steer(
  const LateralErrors<Scalar> & err, const StanleyConfig<Scalar> & cfg,
  const VehicleGeometry<Scalar> & geom)
{
  const Scalar denom = err.v_xf + stanley_regularization(err.e_y, cfg);
  const Scalar delta = err.e_psi + std::atan(cfg.ky * err.e_y / denom);
  return clamp_symmetric(delta, geom.max_steer);
}

using PidConfigd = PidConfig<double>;
using PidStated = PidState<double>;
using PidStepd = PidStep<double>;
using LateralErrorsd = LateralErrors<double>;
using PurePursuitConfigd = PurePursuitConfig<double>;
using StanleyConfigd = StanleyConfig<double>;

}  // namespace platoon

#endif  // PLATOON_CONTROLLERS_HPP_
