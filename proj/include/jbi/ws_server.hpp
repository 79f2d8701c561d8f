#pragma once

// WebSocket endpoint for the session protocol. Clients connect to
// ws://host:port/session; each connection runs one independent session.

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "jbi/session.hpp"

namespace jbi::session {

class SessionServer {
 public:
  /// Binds to 127.0.0.1:`port`; port 0 picks a free one.
  SessionServer(unsigned short port, SessionOptions options,
                std::optional<std::string> fallback_source = std::nullopt,
                std::string address = "127.0.0.1");
  ~SessionServer();

  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  unsigned short port() const;

  /// Accepts connections until stop() is called.
  void run();
  void stop();

 private:
  void accept_next();

  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace jbi::session
