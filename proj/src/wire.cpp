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

#include "platoon/wire.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace platoon {

using nlohmann::json;

namespace {

bool finite_number(const json & doc, const char * key, double & out)
{
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) return false;
  out = it->get<double>();
  return std::isfinite(out);
}

double checked(double value, const char * what)
{
  if (!std::isfinite(value)) throw Error(std::string("wire: non-finite ") + what);
  return value;
}

}  // namespace

ClientMessage parse_client_message(std::string_view text)
{
  const json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) return RejectedMessage{"malformed JSON"};
  if (!doc.is_object()) return RejectedMessage{"expected a JSON object"};
  const auto type = doc.find("type");
  if (type == doc.end() || !type->is_string()) return RejectedMessage{"missing string field 'type'"};

  const std::string kind = type->get<std::string>();
  if (kind == "reset") return ResetMessage{};
  if (kind == "cmd") {
    CmdMessage cmd;
    if (!finite_number(doc, "steer", cmd.steer)) return RejectedMessage{"cmd: 'steer' must be a finite number"};
    if (!finite_number(doc, "speed", cmd.speed)) return RejectedMessage{"cmd: 'speed' must be a finite number"};
    return cmd;
  }
  return RejectedMessage{"unknown type '" + kind + "'"};
}

std::string encode_cmd(const CmdMessage & cmd)
{
  return json{{"type", "cmd"}, {"steer", checked(cmd.steer, "steer")}, {"speed", checked(cmd.speed, "speed")}}
    .dump();
}

std::string encode_reset() { return json{{"type", "reset"}}.dump(); }

StateFrame state_frame(const WorldSnapshot & snapshot)
{
  StateFrame frame;
  frame.t = snapshot.t;
  for (const auto & v : snapshot.vehicles) {
    VehicleFrame f;
    f.id = v.id;
    f.x = v.state.x;
    f.y = v.state.y;
    f.psi = v.state.psi;
    f.v = v.state.v_actual;
    f.delta = v.command.delta_obj;
    f.d_measure = v.observation.d_measure;
    f.obs_valid = v.observation.valid;
    frame.vehicles.push_back(std::move(f));
  }
  return frame;
}

std::string encode_state(const StateFrame & frame)
{
  json vehicles = json::array();
  for (const auto & v : frame.vehicles) {
    vehicles.push_back({
      {"id", v.id},
      {"x", checked(v.x, "x")},
      {"y", checked(v.y, "y")},
      {"psi", checked(v.psi, "psi")},
      {"v", checked(v.v, "v")},
      {"delta", checked(v.delta, "delta")},
      {"d_measure", checked(v.d_measure, "d_measure")},
      {"obs_valid", v.obs_valid},
    });
  }
  return json{{"type", "state"}, {"t", checked(frame.t, "t")}, {"vehicles", std::move(vehicles)}}.dump();
}

std::string encode_error(std::string_view msg)
{
  return json{{"type", "error"}, {"msg", std::string(msg)}}.dump();
}

StateFrame parse_state_frame(std::string_view text)
{
  const json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("type", "") != "state") {
    throw ParseError("wire: not a state frame", "type");
  }
  try {
    StateFrame frame;
    frame.t = doc.at("t").get<double>();
    for (const auto & v : doc.at("vehicles")) {
      VehicleFrame f;
      f.id = v.at("id").get<std::string>();
      f.x = v.at("x").get<double>();
      f.y = v.at("y").get<double>();
      f.psi = v.at("psi").get<double>();
      f.v = v.at("v").get<double>();
      f.delta = v.at("delta").get<double>();
      f.d_measure = v.at("d_measure").get<double>();
      f.obs_valid = v.at("obs_valid").get<bool>();
      frame.vehicles.push_back(std::move(f));
    }
    return frame;
  } catch (const json::exception & e) {
    throw ParseError(std::string("wire: bad state frame: ") + e.what(), "vehicles");
  }
}

}  // namespace platoon
