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

#ifndef PLATOON_WIRE_HPP_
#define PLATOON_WIRE_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "platoon/engine.hpp"

namespace platoon {

// Teleop wire protocol: JSON text frames.
//   client -> server  {"type":"cmd","steer":<rad>,"speed":<m/s>}  |  {"type":"reset"}
//   server -> client  {"type":"state","t":..,"vehicles":[..]}      |  {"type":"error","msg":..}

struct CmdMessage
{
  double steer = 0;
  double speed = 0;

  bool operator==(const CmdMessage &) const = default;
};

struct ResetMessage
{
  bool operator==(const ResetMessage &) const = default;
};

/// A frame the server could not accept; `msg` goes back in an error frame.
struct RejectedMessage
{
  std::string msg;

  bool operator==(const RejectedMessage &) const = default;
};

using ClientMessage = std::variant<CmdMessage, ResetMessage, RejectedMessage>;

/// Never throws: malformed JSON, unknown types and bad fields become RejectedMessage.
ClientMessage parse_client_message(std::string_view text);

std::string encode_cmd(const CmdMessage & cmd);
std::string encode_reset();

struct VehicleFrame
{
  std::string id;
  double x = 0;
  double y = 0;
  double psi = 0;
  double v = 0;
  double delta = 0;  // commanded steering of this tick
  double d_measure = 0;
  bool obs_valid = false;

  bool operator==(const VehicleFrame &) const = default;
};

struct StateFrame
{
  double t = 0;
  std::vector<VehicleFrame> vehicles;

  bool operator==(const StateFrame &) const = default;
};

StateFrame state_frame(const WorldSnapshot & snapshot);

std::string encode_state(const StateFrame & frame);
std::string encode_error(std::string_view msg);

/// Parses a server state frame. Throws ParseError on anything else.
StateFrame parse_state_frame(std::string_view text);

}  // namespace platoon

#endif  // PLATOON_WIRE_HPP_
