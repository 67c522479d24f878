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

#ifndef PLATOON_SERVER_HPP_
#define PLATOON_SERVER_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "platoon/scenario.hpp"

namespace platoon {

struct ServerOptions
{
  std::string address = "127.0.0.1";
  unsigned short port = 8765;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;  // plain HTTP GETs are served from here
  std::size_t max_queued_frames = 64;  // a viewer this far behind is disconnected
};

/// WebSocket teleop server around a TeleopSession.
///
/// Ticks at the scenario's controller rate on a fixed wall-clock cadence; a
/// late tick runs immediately and none is skipped, so sim time stays
/// tick count / rate. The first client to send a `cmd` is the operator until it
/// disconnects; every client receives the state stream.
class TeleopServer
{
public:
  /// Binds immediately; throws Error when the address or port is unavailable.
  TeleopServer(const ScenarioSpec & spec, ServerOptions options = {});
  ~TeleopServer();

  TeleopServer(const TeleopServer &) = delete;
  TeleopServer & operator=(const TeleopServer &) = delete;

  unsigned short port() const;

  /// Serves until stop() is called.
  void run();

  /// Safe to call from any thread.
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace platoon

#endif  // PLATOON_SERVER_HPP_
