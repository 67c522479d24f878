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

#include "platoon/server.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "platoon/teleop.hpp"

namespace platoon {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class WsSession;

/// What sessions need from the server; everything runs on the one io_context thread.
class Hub
{
public:
  virtual ~Hub() = default;
  virtual void join(const std::shared_ptr<WsSession> & s) = 0;
  virtual void leave(WsSession * s) = 0;
  virtual void on_message(WsSession & s, const std::string & text) = 0;
  virtual std::size_t max_queued_frames() const = 0;
};

class WsSession : public std::enable_shared_from_this<WsSession>
{
public:
  WsSession(tcp::socket && socket, Hub & hub) : ws_(std::move(socket)), hub_(hub) {}

  void start(http::request<http::string_body> req)
  {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  void send(std::shared_ptr<const std::string> frame)
  {
    if (closed_) return;
    if (queue_.size() >= hub_.max_queued_frames()) {
      close();
      return;
    }
    queue_.push_back(std::move(frame));
    if (queue_.size() == 1) do_write();
  }

  void close()
  {
    if (closed_) return;
    closed_ = true;
    hub_.leave(this);
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(ws_).socket().close(ec);
  }

private:
  void on_accept(beast::error_code ec)
  {
    if (ec) return;
    ws_.text(true);
    hub_.join(shared_from_this());
    do_read();
  }

  void do_read()
  {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec) {
      close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    hub_.on_message(*this, text);
    if (!closed_) do_read();
  }

  void do_write()
  {
    ws_.async_write(
      asio::buffer(*queue_.front()), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t)
  {
    if (ec) {
      close();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty() && !closed_) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  Hub & hub_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool closed_ = false;
};

std::string_view mime_type(const std::filesystem::path & p)
{
  const std::string ext = p.extension().string();
  if (ext == ".html") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

/// First request on a connection: upgrade to WebSocket or answer one plain GET.
class HttpConnection : public std::enable_shared_from_this<HttpConnection>
{
public:
  HttpConnection(tcp::socket && socket, Hub & hub, const std::optional<std::filesystem::path> & root)
  : stream_(std::move(socket)), hub_(hub), root_(root)
  {
  }

  void start()
  {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(
      stream_, buffer_, req_, beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

private:
  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      std::make_shared<WsSession>(stream_.release_socket(), hub_)->start(std::move(req_));
      return;
    }
    auto res = std::make_shared<http::response<http::string_body>>(respond());
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
      beast::error_code ignored;
      self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
    });
  }

  http::response<http::string_body> respond() const
  {
    http::response<http::string_body> res{http::status::not_found, req_.version()};
    res.set(http::field::content_type, "text/plain");
    res.body() = "not found\n";
    std::string target(req_.target());
    if (root_ && req_.method() == http::verb::get && target.find("..") == std::string::npos) {
      if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
      if (target.empty() || target.back() == '/') target += "index.html";
      const std::filesystem::path file = *root_ / std::filesystem::path(target).relative_path();
      std::ifstream in(file, std::ios::binary);
      if (in) {
        std::ostringstream body;
        body << in.rdbuf();
        res.result(http::status::ok);
        res.set(http::field::content_type, std::string(mime_type(file)));
        res.body() = body.str();
      }
    }
    res.keep_alive(false);
    res.prepare_payload();
    return res;
  }

  beast::tcp_stream stream_;
  Hub & hub_;
  const std::optional<std::filesystem::path> & root_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct TeleopServer::Impl : Hub
{
  Impl(const ScenarioSpec & spec, ServerOptions opts)
  : options(std::move(opts)),
    session(spec),
    period(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(spec.tick()))),
    acceptor(ioc),
    timer(ioc)
  {
    try {
      const tcp::endpoint endpoint(asio::ip::make_address(options.address), options.port);
      acceptor.open(endpoint.protocol());
      acceptor.set_option(asio::socket_base::reuse_address(true));
      acceptor.bind(endpoint);
      acceptor.listen(asio::socket_base::max_listen_connections);
    } catch (const boost::system::system_error & e) {
      throw Error(
        "serve: cannot listen on " + options.address + ":" + std::to_string(options.port) + ": " +
        e.code().message());
    }
  }

  ~Impl() override
  {
    beast::error_code ec;
    acceptor.close(ec);
    timer.cancel();
    for (const auto & s : std::set<std::shared_ptr<WsSession>>(sessions)) s->close();
    sessions.clear();
  }

  void join(const std::shared_ptr<WsSession> & s) override { sessions.insert(s); }

  void leave(WsSession * s) override
  {
    for (auto it = sessions.begin(); it != sessions.end(); ++it) {
      if (it->get() == s) {
        sessions.erase(it);
        break;
      }
    }
    if (operator_session == s) {
      operator_session = nullptr;
      session.operator_disconnected();
    }
  }

  void on_message(WsSession & s, const std::string & text) override
  {
    const ClientMessage msg = parse_client_message(text);
    if (const auto * cmd = std::get_if<CmdMessage>(&msg)) {
      if (operator_session == nullptr) {
        operator_session = &s;
        session.operator_connected();
      }
      if (operator_session != &s) {
        s.send(std::make_shared<const std::string>(encode_error("another client is the operator")));
        return;
      }
      session.submit(*cmd);
    } else if (std::holds_alternative<ResetMessage>(msg)) {
      session.reset();
    } else {
      s.send(std::make_shared<const std::string>(encode_error(std::get<RejectedMessage>(msg).msg)));
    }
  }

  std::size_t max_queued_frames() const override { return options.max_queued_frames; }

  void do_accept()
  {
    acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (!acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpConnection>(std::move(socket), *this, options.static_dir)->start();
      do_accept();
    });
  }

  void schedule_tick()
  {
    deadline += period;
    timer.expires_at(deadline);
    timer.async_wait([this](beast::error_code ec) {
      if (ec) return;
      const auto frame = std::make_shared<const std::string>(encode_state(session.tick()));
      for (const auto & s : std::set<std::shared_ptr<WsSession>>(sessions)) s->send(frame);
      schedule_tick();
    });
  }

  ServerOptions options;
  TeleopSession session;
  std::chrono::steady_clock::duration period;
  asio::io_context ioc{1};
  tcp::acceptor acceptor;
  asio::steady_timer timer;
  std::chrono::steady_clock::time_point deadline;
  std::set<std::shared_ptr<WsSession>> sessions;
  WsSession * operator_session = nullptr;
};

TeleopServer::TeleopServer(const ScenarioSpec & spec, ServerOptions options)
: impl_(std::make_unique<Impl>(spec, std::move(options)))
{
}

TeleopServer::~TeleopServer() = default;

unsigned short TeleopServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void TeleopServer::run()
{
  impl_->do_accept();
  impl_->deadline = std::chrono::steady_clock::now();
  impl_->schedule_tick();
  impl_->ioc.run();
}

void TeleopServer::stop() { impl_->ioc.stop(); }

}  // namespace platoon
