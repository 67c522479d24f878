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

#ifndef PLATOON_ANGLES_HPP_
#define PLATOON_ANGLES_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>

namespace platoon {

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar wrap_angle(Scalar angle)
{
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar wrapped = std::remainder(angle, Scalar(2) * pi);
  if (wrapped <= -pi) {
    wrapped += Scalar(2) * pi;
  }
  return wrapped;
}

template <typename Scalar>
Scalar clamp_symmetric(Scalar value, Scalar limit)
{
  return std::clamp(value, -limit, limit);
}

template <typename Scalar>
bool all_finite(Scalar value)
{
  return std::isfinite(value);
}

template <typename Scalar, typename... Rest>
bool all_finite(Scalar value, Rest... rest)
{
  return std::isfinite(value) && all_finite(rest...);
}

}  // namespace platoon

#endif  // PLATOON_ANGLES_HPP_
