#pragma once

// Newline-delimited JSON session protocol. The server sends events, the
// client answers each request with exactly one action:
//
//   -> {"action":"load","source":S,"goal":G}
//   <- {"event":"choice_request","id":1,"kind":"kchoose","options":[...]}
//   -> {"action":"choice","id":1,"index":2}
//   <- {"event":"print","value":"40"}
//   <- {"event":"result","status":"success","reason":null,"bindings":{...}}

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jbi/channel.hpp"
#include "jbi/evaluator.hpp"

namespace jbi::session {

// ---------------------------------------------------------------------------
// Events (server -> client)

struct ChoiceRequestEvent {
  int id;
  ChoiceRequest request;
  bool operator==(const ChoiceRequestEvent&) const = default;
};

struct ReadRequestEvent {
  int id;
  std::string var;
  bool operator==(const ReadRequestEvent&) const = default;
};

struct PrintEvent {
  std::string value;
  bool operator==(const PrintEvent&) const = default;
};

struct TraceEvent {
  std::string line;
  bool operator==(const TraceEvent&) const = default;
};

struct ResultEvent {
  bool success;
  std::optional<std::string> reason;
  std::map<std::string, std::string> bindings;
  bool operator==(const ResultEvent&) const = default;
};

using SessionEvent =
    std::variant<ChoiceRequestEvent, ReadRequestEvent, PrintEvent, TraceEvent, ResultEvent>;

/// Single-line JSON with a fixed field order, terminated by '\n'.
std::string encode_event(const SessionEvent& ev);

/// The result event for an execution outcome.
ResultEvent make_result(const Outcome& outcome);

// ---------------------------------------------------------------------------
// Actions (client -> server)

struct LoadAction {
  std::string source;
  std::optional<std::string> goal;
  bool operator==(const LoadAction&) const = default;
};

struct ChoiceAction {
  int id;
  std::int64_t index;  // 1-based
  bool operator==(const ChoiceAction&) const = default;
};

struct InputAction {
  int id;
  std::string value;
  bool operator==(const InputAction&) const = default;
};

struct CancelAction {
  bool operator==(const CancelAction&) const = default;
};

using SessionAction = std::variant<LoadAction, ChoiceAction, InputAction, CancelAction>;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict parse of one action line; unknown fields are rejected. When
/// `outstanding_id` is given, choice and input actions must carry it.
SessionAction decode_action(std::string_view line, std::optional<int> outstanding_id = std::nullopt);

/// Single-line JSON for an action, terminated by '\n'.
std::string encode_action(const SessionAction& action);

// ---------------------------------------------------------------------------
// Serving

/// A bidirectional, ordered line stream.
class LineTransport {
 public:
  virtual ~LineTransport() = default;
  /// Next line without its terminator, or nullopt once the peer is gone.
  virtual std::optional<std::string> read_line() = 0;
  /// Writes `line`, which already carries its terminator.
  virtual void write_line(std::string_view line) = 0;
};

class StreamTransport : public LineTransport {
 public:
  StreamTransport(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::optional<std::string> read_line() override;
  void write_line(std::string_view line) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

struct SessionOptions {
  bool trace = false;
  int reprompt_limit = 3;
  int max_call_depth = 1000;
};

struct SessionOutcome {
  ResultEvent result;
  /// Every line sent or received, in order, without terminators.
  std::vector<std::string> transcript;
};

/// Runs one loaded execution over `transport` with reprompt policy.
SessionOutcome serve_session(const Program& prog, const Stmt& goal, LineTransport& transport,
                             const SessionOptions& options = {});

/// Reads the client's `load` action, then serves it. `fallback_source` is
/// used when the load action omits its source.
SessionOutcome run_session(LineTransport& transport, const SessionOptions& options = {},
                           const std::optional<std::string>& fallback_source = std::nullopt);

/// Scripted-channel tokens equivalent to the actions in a transcript:
/// choices as digit tokens, inputs as raw lines.
std::vector<std::string> replay_tokens(const std::vector<std::string>& transcript);

}  // namespace jbi::session
