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

#ifndef PLATOON_PERCEPTION_HPP_
#define PLATOON_PERCEPTION_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "platoon/angles.hpp"
#include "platoon/errors.hpp"
#include "platoon/vehicle_models.hpp"

namespace platoon {

/// Random source for sensor noise. The engine (mt19937_64) is fully specified
/// by the standard; the uniform and normal transforms are written out here so
/// sequences do not depend on the standard library's distribution code.
class SensorRng
{
public:
  explicit SensorRng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one draw per call, the sine branch is discarded).
  double normal()
  {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  std::mt19937_64 engine_;
};

/// Derives independent per-stream seeds from one scenario seed (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Front camera detecting the fiducial on the predecessor's rear. Defaults:
/// 63.1 deg horizontal FOV, 0.2-2.5 m range, 30 Hz, 5 mm / 0.01 rad noise.
template <typename Scalar>
struct CameraModel
{
  Scalar hfov = Scalar(63.1 * std::numbers::pi / 180.0);
  Scalar range_min = Scalar(0.2);
  Scalar range_max = Scalar(2.5);
  Scalar rate = Scalar(30);
  Scalar noise_sigma_pos = Scalar(0.005);
  Scalar noise_sigma_ang = Scalar(0.01);
  Scalar dropout_prob = Scalar(0);
  std::uint64_t seed = 0;
  // Fiducial metadata; does not enter the geometric model.
  int marker_id = 582;
  Scalar marker_size = Scalar(0.10);

  void validate() const
  {
    if (!(hfov > 0 && hfov < std::numbers::pi_v<Scalar>)) {
      throw ValidationError("camera: hfov must lie in (0, pi)");
    }
    if (!(range_min > 0 && range_min < range_max)) {
      throw ValidationError("camera: need 0 < range_min < range_max");
    }
    if (!(rate > 0)) throw ValidationError("camera: rate must be > 0");
    if (!(noise_sigma_pos >= 0 && noise_sigma_ang >= 0)) {
      throw ValidationError("camera: noise sigmas must be >= 0");
    }
    if (!(dropout_prob >= 0 && dropout_prob < 1)) {
      throw ValidationError("camera: dropout_prob must lie in [0, 1)");
    }
  }

  CameraModel noiseless() const
  {
    CameraModel c = *this;
    c.noise_sigma_pos = 0;
    c.noise_sigma_ang = 0;
    c.dropout_prob = 0;
    return c;
  }
};

template <typename Scalar>
struct RelativeObservation
{
  Scalar d_measure = 0;
  Scalar alpha = 0;
  Scalar e_psi = 0;
  Scalar e_y = 0;
  Scalar stamp = 0;
  bool valid = false;
};

template <typename Scalar>
struct ImuSample
{
  Scalar ax_hat = 0;
  Scalar ay_hat = 0;
  Scalar az_hat = Scalar(9.81);
  Scalar omega_hat = 0;
  Scalar roll_rate_hat = 0;
  Scalar pitch_rate_hat = 0;
};

/// Predecessor marker (its rear-axle center) expressed in the follower body frame.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> marker_in_body_frame(
  const VehicleState<Scalar> & self, const VehicleState<Scalar> & predecessor)
{
  const Eigen::Rotation2D<Scalar> world_to_body(-self.psi);
  return world_to_body * (predecessor.position() - self.position());
}

template <typename Scalar>
bool within_gates(Scalar range, Scalar bearing, const CameraModel<Scalar> & cam)
{
  return range >= cam.range_min && range <= cam.range_max &&
         std::abs(bearing) <= cam.hfov / Scalar(2);
}

/// One camera sample of the predecessor at time t.
///
/// Noise is added to the body-frame marker position and to the relative
/// heading. The sample is valid only if both the true and the noisy geometry
/// pass the range and FOV gates and the dropout draw keeps it. The caller
/// decides when samples are taken and holds them in between.
template <typename Scalar>
RelativeObservation<Scalar> observe(
  const VehicleState<Scalar> & self, const VehicleState<Scalar> & predecessor,
  const CameraModel<Scalar> & cam, Scalar t, SensorRng & rng)
{
  if (!all_finite(self.x, self.y, self.psi, predecessor.x, predecessor.y, predecessor.psi)) {
    throw InvalidCommand("observe: non-finite vehicle state");
  }
  const Eigen::Matrix<Scalar, 2, 1> truth = marker_in_body_frame(self, predecessor);
  const bool geometry_ok = within_gates(truth.norm(), std::atan2(truth.y(), truth.x()), cam);

  Eigen::Matrix<Scalar, 2, 1> measured = truth;
  Scalar e_psi = wrap_angle(predecessor.psi - self.psi);
  if (cam.noise_sigma_pos > 0) {
    measured.x() += cam.noise_sigma_pos * static_cast<Scalar>(rng.normal());
    measured.y() += cam.noise_sigma_pos * static_cast<Scalar>(rng.normal());
  }
  if (cam.noise_sigma_ang > 0) {
    e_psi = wrap_angle(e_psi + cam.noise_sigma_ang * static_cast<Scalar>(rng.normal()));
  }
  const bool dropped = cam.dropout_prob > 0 && rng.bernoulli(static_cast<double>(cam.dropout_prob));

  RelativeObservation<Scalar> obs;
  obs.d_measure = measured.norm();
  obs.alpha = std::atan2(measured.y(), measured.x());
  obs.e_psi = e_psi;
  obs.e_y = measured.y();
  obs.stamp = t;
  obs.valid = geometry_ok && !dropped && within_gates(obs.d_measure, obs.alpha, cam);
  return obs;
}

/// Planar body-frame IMU reading for a vehicle with realized steering `delta`.
template <typename Scalar>
ImuSample<Scalar> simulate_imu(
  const VehicleState<Scalar> & state, Scalar v_dot, const VehicleGeometry<Scalar> & geom,
  Scalar delta)
{
  ImuSample<Scalar> s;
  s.omega_hat = state.v_actual * std::tan(delta) / geom.wheelbase;
  s.ax_hat = v_dot;
  s.ay_hat = state.v_actual * s.omega_hat;
  return s;
}

template <typename Scalar>
ImuSample<Scalar> simulate_imu(
  const VehicleState<Scalar> & state, Scalar v_dot, const VehicleGeometry<Scalar> & geom)
{
  return simulate_imu(state, v_dot, geom, state.delta_actual);
}

/// Noisy variant: independent zero-mean Gaussian noise on the in-plane
/// channels. Vertical acceleration and roll/pitch rates stay exact.
template <typename Scalar>
ImuSample<Scalar> simulate_imu(
  const VehicleState<Scalar> & state, Scalar v_dot, const VehicleGeometry<Scalar> & geom,
  Scalar sigma_acc, Scalar sigma_gyro, SensorRng & rng)
{
  ImuSample<Scalar> s = simulate_imu(state, v_dot, geom);
  auto n = [&rng](Scalar sigma) { return sigma * static_cast<Scalar>(rng.normal()); };
  s.ax_hat += n(sigma_acc);
  s.ay_hat += n(sigma_acc);
  s.omega_hat += n(sigma_gyro);
  return s;
}

using CameraModeld = CameraModel<double>;
using RelativeObservationd = RelativeObservation<double>;
using ImuSampled = ImuSample<double>;

}  // namespace platoon

#endif  // PLATOON_PERCEPTION_HPP_
