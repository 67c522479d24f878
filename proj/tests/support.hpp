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

// Test-only generators and reference evaluations. The reference functions
// take a different algebraic route from the library on purpose (turning
// centers instead of tan ratios, circle geometry instead of the closed-form
// steering law) so agreement means something.

#ifndef PLATOON_TESTS_SUPPORT_HPP_
#define PLATOON_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace platoon::testing {

class Gen
{
public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi)
  {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  bool coin() { return (engine_() & 1U) != 0; }

private:
  std::mt19937_64 engine_;
};

namespace oracle {

struct Wheels
{
  double left = 0;
  double right = 0;
  double steer_left = 0;
};

/// Lead wheel commands from the instantaneous turning center of the rear axle.
inline Wheels ackermann_by_turning_center(double v, double delta, double L, double W)
{
  if (delta == 0.0) return {v, v, 0.0};
  const double radius = L / std::tan(delta);  // signed, rear-axle center to ICR
  const double omega = v / radius;
  Wheels w;
  w.left = omega * (radius - W / 2);
  w.right = omega * (radius + W / 2);
  w.steer_left = std::atan(L / (radius - W / 2));
  return w;
}

inline double yaw_rate(double v, double delta, double L) { return v * std::tan(delta) / L; }

/// Pure Pursuit: curvature of the circle through the rear axle, tangent to the
/// heading, passing through the target at range `lookahead` and bearing `alpha`.
inline double pure_pursuit(double alpha, double lookahead, double L, double max_steer)
{
  const double tx = lookahead * std::cos(alpha);
  const double ty = lookahead * std::sin(alpha);
  const double curvature = 2.0 * ty / (tx * tx + ty * ty);
  return std::clamp(std::atan(L * curvature), -max_steer, max_steer);
}

inline double stanley(double e_psi, double e_y, double v, double ky, double eps, double max_steer)
{
  const double signed_eps = e_y < 0 ? -std::abs(eps) : std::abs(eps);
  const double crosstrack = std::atan(ky * e_y / (v + signed_eps));
  return std::clamp(e_psi + crosstrack, -max_steer, max_steer);
}

struct PidResult
{
  double integral = 0;
  double output = 0;
};

/// One discrete PID update written out term by term.
inline PidResult pid(
  double kp, double ki, double kd, double integral_in, double prev_error, bool first, double measured,
  double goal, double dt, double v_min, double v_max, double integral_limit)
{
  const double e = measured - goal;
  double integral = integral_in + e * dt;
  if (integral > integral_limit) integral = integral_limit;
  if (integral < -integral_limit) integral = -integral_limit;
  double derivative = 0;
  if (!first) derivative = (e - prev_error) / dt;
  double u = kp * e;
  u += ki * integral;
  u += kd * derivative;
  if (u < v_min) u = v_min;
  if (u > v_max) u = v_max;
  return {integral, u};
}

}  // namespace oracle

inline std::filesystem::path scratch_dir(const std::string & name)
{
  const auto dir = std::filesystem::temp_directory_path() / ("platoon_tests_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace platoon::testing

#endif  // PLATOON_TESTS_SUPPORT_HPP_
