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

// Socket-level tests against a live server on an ephemeral localhost port.

#include <chrono>
#include <cmath>
#include <fstream>
#include <string>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "platoon/engine.hpp"
#include "platoon/server.hpp"
#include "platoon/wire.hpp"
#include "support.hpp"

using namespace platoon;
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

ScenarioSpec quiet_scenario()
{
  ScenarioSpec s = default_scenario();
  s.camera = s.camera.noiseless();
  return s;
}

class RunningServer
{
public:
  explicit RunningServer(const ScenarioSpec & spec, ServerOptions options = {})
  : server_(spec, with_ephemeral_port(std::move(options))), thread_([this] { server_.run(); })
  {
  }

  ~RunningServer()
  {
    server_.stop();
    thread_.join();
  }

  unsigned short port() const { return server_.port(); }

private:
  static ServerOptions with_ephemeral_port(ServerOptions o)
  {
    o.port = 0;
    return o;
  }

  TeleopServer server_;
  std::thread thread_;
};

class Client
{
public:
  explicit Client(unsigned short port) : ws_(ioc_)
  {
    tcp::resolver resolver(ioc_);
    asio::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws_.handshake("127.0.0.1", "/");
    ws_.text(true);
  }

  ~Client()
  {
    beast::error_code ec;
    ws_.close(websocket::close_code::normal, ec);
  }

  void send(const std::string & text) { ws_.write(asio::buffer(text)); }

  nlohmann::json read()
  {
    beast::flat_buffer buffer;
    ws_.read(buffer);
    return nlohmann::json::parse(beast::buffers_to_string(buffer.data()));
  }

  StateFrame read_state()
  {
    for (;;) {
      const auto doc = read();
      if (doc["type"] == "state") return parse_state_frame(doc.dump());
    }
  }

  /// Reads until an error frame arrives; state frames in between are skipped.
  std::string read_error(int max_frames = 30)
  {
    for (int i = 0; i < max_frames; ++i) {
      const auto doc = read();
      if (doc["type"] == "error") return doc["msg"].get<std::string>();
    }
    return {};
  }

private:
  asio::io_context ioc_;
  websocket::stream<tcp::socket> ws_;
};

http::response<http::string_body> http_get(unsigned short port, const std::string & target)
{
  asio::io_context ioc;
  tcp::socket socket(ioc);
  tcp::resolver resolver(ioc);
  asio::connect(socket, resolver.resolve("127.0.0.1", std::to_string(port)));
  http::request<http::empty_body> req{http::verb::get, target, 11};
  req.set(http::field::host, "127.0.0.1");
  http::write(socket, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(socket, buffer, res);
  return res;
}

}  // namespace

TEST_SUITE("server") {

TEST_CASE("state frames stream at the controller rate") {
  RunningServer server(quiet_scenario());
  Client client(server.port());
  const StateFrame first = client.read_state();
  const auto start = std::chrono::steady_clock::now();
  int frames = 0;
  StateFrame last = first;
  while (std::chrono::steady_clock::now() - start < std::chrono::seconds(1)) {
    const StateFrame f = client.read_state();
    CHECK(f.t == doctest::Approx(last.t + 1.0 / 30.0).epsilon(1e-9));
    last = f;
    ++frames;
  }
  CHECK(frames >= 20);
  CHECK(first.vehicles.size() == 3);
}

TEST_CASE("a constant operator command reproduces straight cruise") {
  ScenarioSpec cruise = quiet_scenario();
  cruise.maneuver.kind = ManeuverKind::StraightCruise;
  cruise.duration = 4.0;
  const TraceLog reference = run_scenario(cruise);
  const std::size_t n = cruise.vehicles.size();

  RunningServer server(quiet_scenario());
  Client client(server.port());
  client.read_state();
  client.send(encode_cmd({0.0, 0.2}));

  // Reference tick 1 is the first with the lead moving.
  StateFrame f = client.read_state();
  while (f.vehicles[0].v == 0.0) f = client.read_state();
  double worst = 0;
  for (std::size_t k = 1; k < 90; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const TraceRecord & r = reference.records[k * n + i];
      worst = std::max({worst, std::abs(f.vehicles[i].x - r.x), std::abs(f.vehicles[i].y - r.y),
                        std::abs(f.vehicles[i].psi - r.psi), std::abs(f.vehicles[i].v - r.v_actual)});
    }
    f = client.read_state();
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("a steer command shows up in the broadcast within two ticks") {
  RunningServer server(quiet_scenario());
  Client client(server.port());
  const StateFrame before = client.read_state();
  client.send(encode_cmd({0.3, 0.1}));
  StateFrame f = client.read_state();
  while (f.vehicles[0].delta != 0.3 && f.t < before.t + 1.0) f = client.read_state();
  CHECK(f.vehicles[0].delta == 0.3);
  CHECK(f.t <= before.t + 2.0 / 30.0 + 1e-9);
}

TEST_CASE("bad messages get an error frame and the connection survives") {
  RunningServer server(quiet_scenario());
  Client client(server.port());
  client.send(R"({"type":"warp"})");
  CHECK(client.read_error().find("warp") != std::string::npos);
  client.send("{not json");
  CHECK_FALSE(client.read_error().empty());
  CHECK(client.read_state().vehicles.size() == 3);
}

TEST_CASE("only the first commanding client steers") {
  RunningServer server(quiet_scenario());
  Client operator_client(server.port());
  Client viewer(server.port());
  operator_client.send(encode_cmd({0.1, 0.1}));
  operator_client.read_state();
  viewer.send(encode_cmd({-0.4, 0.1}));
  CHECK(viewer.read_error().find("operator") != std::string::npos);
  StateFrame f = operator_client.read_state();
  for (int i = 0; i < 3; ++i) f = operator_client.read_state();
  CHECK(f.vehicles[0].delta == 0.1);
}

TEST_CASE("reset rewinds the session") {
  RunningServer server(quiet_scenario());
  Client client(server.port());
  client.send(encode_cmd({0.0, 0.2}));
  StateFrame f = client.read_state();
  while (f.t < 0.5) f = client.read_state();
  client.send(encode_reset());
  while (f.t >= 0.5) f = client.read_state();
  CHECK(f.t < 0.2);
  CHECK(f.vehicles[0].x == 0.0);
}

TEST_CASE("static files and a busy port") {
  const auto dir = platoon::testing::scratch_dir("static");
  std::ofstream(dir / "index.html") << "<html>cockpit</html>";
  ServerOptions options;
  options.static_dir = dir;
  RunningServer server(quiet_scenario(), options);

  const auto index = http_get(server.port(), "/");
  CHECK(index.result() == http::status::ok);
  CHECK(index.body() == "<html>cockpit</html>");
  CHECK(index[http::field::content_type] == "text/html");
  CHECK(http_get(server.port(), "/../etc/passwd").result() == http::status::not_found);
  CHECK(http_get(server.port(), "/missing.js").result() == http::status::not_found);

  ServerOptions clash;
  clash.port = server.port();
  CHECK_THROWS_AS(TeleopServer(quiet_scenario(), clash), Error);
}

}  // TEST_SUITE
