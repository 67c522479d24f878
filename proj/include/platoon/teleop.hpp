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

#ifndef PLATOON_TELEOP_HPP_
#define PLATOON_TELEOP_HPP_

#include <optional>
#include <vector>

#include "platoon/engine.hpp"
#include "platoon/wire.hpp"

namespace platoon {

/// Realtime session around a World whose lead is driven by an operator.
///
/// Commands queue up between ticks and only the newest one is applied at the
/// next tick. A missing command holds the previous one; after the operator
/// disconnects the held command stays for `operator_hold` seconds of sim time
/// and then becomes (0, 0). Not synchronized: drive it from one executor.
class TeleopSession
{
public:
  /// The maneuver is forced to Teleop.
  explicit TeleopSession(ScenarioSpec spec, double operator_hold = 0.5);

  void submit(const CmdMessage & cmd);
  void operator_connected();
  void operator_disconnected();

  /// Back to the initial poses at t = 0 with a zero operator command.
  void reset();

  /// Advances exactly one controller tick and returns the frame to broadcast.
  StateFrame tick();

  const World & world() const { return world_; }
  double time() const { return world_.time(); }

private:
  World world_;
  double operator_hold_;
  std::vector<CmdMessage> queue_;
  std::optional<double> disconnected_at_;
  bool stopped_ = false;
};

/// Teleop copy of `spec`: same vehicles and controllers, maneuver kind Teleop.
ScenarioSpec teleop_scenario(ScenarioSpec spec);

}  // namespace platoon

#endif  // PLATOON_TELEOP_HPP_
