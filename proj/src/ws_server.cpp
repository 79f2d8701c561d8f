#include "jbi/ws_server.hpp"

#include <deque>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace jbi::session {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

/// One text frame may carry several newline-delimited messages.
class WebSocketTransport : public LineTransport {
 public:
  explicit WebSocketTransport(websocket::stream<tcp::socket>& ws) : ws_(ws) {}

  std::optional<std::string> read_line() override {
    while (pending_.empty()) {
      if (closed_) return std::nullopt;
      beast::flat_buffer buffer;
      beast::error_code ec;
      ws_.read(buffer, ec);
      if (ec) {
        closed_ = true;
        return std::nullopt;
      }
      split(beast::buffers_to_string(buffer.data()));
    }
    std::string line = std::move(pending_.front());
    pending_.pop_front();
    return line;
  }

  void write_line(std::string_view line) override {
    ws_.text(true);
    ws_.write(asio::buffer(line.data(), line.size()));
  }

 private:
  void split(const std::string& frame) {
    std::size_t start = 0;
    while (start < frame.size()) {
      auto nl = frame.find('\n', start);
      if (nl == std::string::npos) nl = frame.size();
      std::string line = frame.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) pending_.push_back(std::move(line));
      start = nl + 1;
    }
  }

  websocket::stream<tcp::socket>& ws_;
  std::deque<std::string> pending_;
  bool closed_ = false;
};

void reply_plain(tcp::socket& socket, const http::request<http::string_body>& req,
                 http::status status, std::string body) {
  http::response<http::string_body> res{status, req.version()};
  res.set(http::field::content_type, "text/plain");
  res.keep_alive(false);
  res.body() = std::move(body);
  res.prepare_payload();
  beast::error_code ec;
  http::write(socket, res, ec);
}

void handle_connection(tcp::socket socket, const SessionOptions& options,
                       const std::optional<std::string>& fallback_source) {
  beast::error_code ec;
  beast::flat_buffer buffer;
  http::request<http::string_body> req;
  http::read(socket, buffer, req, ec);
  if (ec) return;
  if (req.target() != "/session") {
    reply_plain(socket, req, http::status::not_found, "only /session is served\n");
    return;
  }
  if (!websocket::is_upgrade(req)) {
    reply_plain(socket, req, http::status::upgrade_required, "websocket upgrade required\n");
    return;
  }
  websocket::stream<tcp::socket> ws(std::move(socket));
  ws.accept(req, ec);
  if (ec) return;
  try {
    WebSocketTransport transport(ws);
    run_session(transport, options, fallback_source);
    ws.close(websocket::close_code::normal, ec);
  } catch (const beast::system_error&) {
    // Peer vanished mid-session.
  }
}

}  // namespace

struct SessionServer::Impl {
  Impl(unsigned short port, SessionOptions opts, std::optional<std::string> fallback,
       const std::string& address)
      : options(opts),
        fallback_source(std::move(fallback)),
        acceptor(io, tcp::endpoint(asio::ip::make_address(address), port)) {}

  asio::io_context io;
  SessionOptions options;
  std::optional<std::string> fallback_source;
  tcp::acceptor acceptor;
  std::atomic<bool> stopping{false};
  std::mutex mutex;
  std::vector<std::thread> workers;
};

SessionServer::SessionServer(unsigned short port, SessionOptions options,
                             std::optional<std::string> fallback_source, std::string address)
    : impl_(std::make_unique<Impl>(port, options, std::move(fallback_source), address)) {}

SessionServer::~SessionServer() {
  stop();
  std::lock_guard lock(impl_->mutex);
  for (auto& t : impl_->workers) {
    if (t.joinable()) t.join();
  }
}

unsigned short SessionServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void SessionServer::run() {
  accept_next();
  impl_->io.run();
}

void SessionServer::accept_next() {
  impl_->acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (impl_->stopping) return;
    if (!ec) {
      std::lock_guard lock(impl_->mutex);
      impl_->workers.emplace_back([this, s = std::move(socket)]() mutable {
        handle_connection(std::move(s), impl_->options, impl_->fallback_source);
      });
    }
    accept_next();
  });
}

void SessionServer::stop() {
  if (impl_->stopping.exchange(true)) return;
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->io.stop();
}

}  // namespace jbi::session
