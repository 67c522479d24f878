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

#include "platoon/teleop.hpp"

namespace platoon {

ScenarioSpec teleop_scenario(ScenarioSpec spec)
{
  spec.maneuver.kind = ManeuverKind::Teleop;
  return spec;
}

TeleopSession::TeleopSession(ScenarioSpec spec, double operator_hold)
: world_(teleop_scenario(std::move(spec))), operator_hold_(operator_hold)
{
}

void TeleopSession::submit(const CmdMessage & cmd) { queue_.push_back(cmd); }

void TeleopSession::operator_connected()
{
  disconnected_at_.reset();
  stopped_ = false;
}

void TeleopSession::operator_disconnected() { disconnected_at_ = world_.time(); }

void TeleopSession::reset()
{
  world_.reset();
  queue_.clear();
  stopped_ = false;
  if (disconnected_at_) disconnected_at_ = 0.0;
}

StateFrame TeleopSession::tick()
{
  std::optional<ChassisCommandd> cmd;
  if (!queue_.empty()) {
    cmd = ChassisCommandd{queue_.back().speed, queue_.back().steer};
    queue_.clear();
  }
  if (disconnected_at_ && !stopped_ && world_.time() - *disconnected_at_ >= operator_hold_ - 1e-9) {
    cmd = ChassisCommandd{0.0, 0.0};
    stopped_ = true;
  }
  return state_frame(world_.step(cmd));
}

}  // namespace platoon
