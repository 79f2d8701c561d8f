#include "jbi/session.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include <json.hpp>

#include "jbi/parser.hpp"

namespace jbi::session {

using ordered_json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string to_line(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string encode_event(const SessionEvent& ev) {
  ordered_json j;
  std::visit(overloaded{
                 [&](const ChoiceRequestEvent& e) {
                   j["event"] = "choice_request";
                   j["id"] = e.id;
                   j["kind"] = std::string(to_string(e.request.kind));
                   auto options = ordered_json::array();
                   for (const auto& o : e.request.options) {
                     options.push_back(ordered_json{{"label", o.label}, {"display", o.display}});
                   }
                   j["options"] = std::move(options);
                 },
                 [&](const ReadRequestEvent& e) {
                   j["event"] = "read_request";
                   j["id"] = e.id;
                   j["var"] = e.var;
                 },
                 [&](const PrintEvent& e) {
                   j["event"] = "print";
                   j["value"] = e.value;
                 },
                 [&](const TraceEvent& e) {
                   j["event"] = "trace";
                   j["line"] = e.line;
                 },
                 [&](const ResultEvent& e) {
                   j["event"] = "result";
                   j["status"] = e.success ? "success" : "failure";
                   j["reason"] = e.reason ? ordered_json(*e.reason) : ordered_json(nullptr);
                   auto bindings = ordered_json::object();
                   for (const auto& [k, v] : e.bindings) bindings[k] = v;
                   j["bindings"] = std::move(bindings);
                 },
             },
             ev);
  return to_line(j);
}

ResultEvent make_result(const Outcome& outcome) {
  if (const auto* f = std::get_if<Failure>(&outcome)) {
    return ResultEvent{false, std::string(to_string(f->reason)), {}};
  }
  ResultEvent r{true, std::nullopt, {}};
  for (const auto& [name, value] : std::get<Success>(outcome).store) {
    r.bindings.emplace(name, render(value));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_fields(const nlohmann::json& j, std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) {
  std::set<std::string_view> allowed(required);
  allowed.insert(optional.begin(), optional.end());
  allowed.insert("action");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ProtocolError("unknown field '" + key + "'");
  }
  for (auto key : required) {
    if (!j.contains(key)) throw ProtocolError("missing field '" + std::string(key) + "'");
  }
}

std::int64_t get_integer(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ProtocolError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int get_id(const nlohmann::json& j, std::optional<int> outstanding) {
  const std::int64_t id = get_integer(j, "id");
  if (outstanding && id != *outstanding) {
    throw ProtocolError("id " + std::to_string(id) + " does not match outstanding request " +
                        std::to_string(*outstanding));
  }
  if (id < 0 || id > std::numeric_limits<int>::max()) throw ProtocolError("id out of range");
  return static_cast<int>(id);
}

}  // namespace

SessionAction decode_action(std::string_view line, std::optional<int> outstanding_id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProtocolError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProtocolError("action must be a JSON object");
  if (!j.contains("action") || !j["action"].is_string()) {
    throw ProtocolError("missing string field 'action'");
  }
  const std::string action = j["action"].get<std::string>();
  if (action == "choice") {
    require_fields(j, {"id", "index"});
    return ChoiceAction{get_id(j, outstanding_id), get_integer(j, "index")};
  }
  if (action == "input") {
    require_fields(j, {"id", "value"});
    return InputAction{get_id(j, outstanding_id), get_string(j, "value")};
  }
  if (action == "cancel") {
    require_fields(j, {});
    return CancelAction{};
  }
  if (action == "load") {
    require_fields(j, {}, {"source", "goal"});
    LoadAction load;
    if (j.contains("source")) load.source = get_string(j, "source");
    if (j.contains("goal")) load.goal = get_string(j, "goal");
    return load;
  }
  throw ProtocolError("unknown action '" + action + "'");
}

std::string encode_action(const SessionAction& action) {
  ordered_json j;
  std::visit(overloaded{
                 [&](const LoadAction& a) {
                   j["action"] = "load";
                   j["source"] = a.source;
                   if (a.goal) j["goal"] = *a.goal;
                 },
                 [&](const ChoiceAction& a) {
                   j["action"] = "choice";
                   j["id"] = a.id;
                   j["index"] = a.index;
                 },
                 [&](const InputAction& a) {
                   j["action"] = "input";
                   j["id"] = a.id;
                   j["value"] = a.value;
                 },
                 [&](const CancelAction&) { j["action"] = "cancel"; },
             },
             action);
  return to_line(j);
}

// ---------------------------------------------------------------------------

std::optional<std::string> StreamTransport::read_line() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void StreamTransport::write_line(std::string_view line) {
  out_ << line;
  out_.flush();
}

namespace {

struct Cancelled {};

std::string strip_newline(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  return std::string(line);
}

/// Records every line in both directions.
class Wire {
 public:
  Wire(LineTransport& transport, std::vector<std::string>& transcript)
      : transport_(transport), transcript_(transcript) {}

  void send(const SessionEvent& ev) {
    const std::string line = encode_event(ev);
    transcript_.push_back(strip_newline(line));
    transport_.write_line(line);
  }

  std::string receive() {
    for (;;) {
      auto line = transport_.read_line();
      if (!line) throw ProtocolError("connection closed");
      if (line->find_first_not_of(" \t\r") == std::string::npos) continue;
      transcript_.push_back(*line);
      return *line;
    }
  }

 private:
  LineTransport& transport_;
  std::vector<std::string>& transcript_;
};

/// Bridges channel requests onto the wire, one outstanding request at a time.
class SessionChannel : public InteractionChannel {
 public:
  explicit SessionChannel(Wire& wire) : wire_(wire) {}

  std::optional<std::string> ask_choice(const ChoiceRequest& req, int) override {
    const int id = next_id_++;
    wire_.send(ChoiceRequestEvent{id, req});
    auto action = decode_action(wire_.receive(), id);
    if (std::holds_alternative<CancelAction>(action)) throw Cancelled{};
    const auto* choice = std::get_if<ChoiceAction>(&action);
    if (choice == nullptr) throw ProtocolError("expected a choice action for request " + std::to_string(id));
    return std::to_string(choice->index);
  }

  std::optional<std::string> ask_line(std::string_view var) override {
    const int id = next_id_++;
    wire_.send(ReadRequestEvent{id, std::string(var)});
    auto action = decode_action(wire_.receive(), id);
    if (std::holds_alternative<CancelAction>(action)) throw Cancelled{};
    const auto* input = std::get_if<InputAction>(&action);
    if (input == nullptr) throw ProtocolError("expected an input action for request " + std::to_string(id));
    return input->value;
  }

  void emit_print(std::string_view rendered) override { wire_.send(PrintEvent{std::string(rendered)}); }

 private:
  Wire& wire_;
  int next_id_ = 1;
};

ResultEvent failure_result(std::string reason) {
  return ResultEvent{false, std::move(reason), {}};
}

SessionOutcome serve_on(Wire& wire, std::vector<std::string>& transcript, const Program& prog,
                        const Stmt& goal, const SessionOptions& options) {
  SessionChannel channel(wire);
  ExecOptions exec;
  exec.policy = ChannelPolicy::reprompt(options.reprompt_limit);
  exec.max_call_depth = options.max_call_depth;
  if (options.trace) {
    exec.on_trace = [&](const TraceEntry& e) { wire.send(TraceEvent{format_trace_line(e)}); };
  }
  ResultEvent result;
  try {
    result = make_result(execute(prog, goal, channel, exec).outcome);
  } catch (const Cancelled&) {
    result = failure_result("cancelled");
  } catch (const ProtocolError& e) {
    result = failure_result(std::string("protocol error: ") + e.what());
  }
  try {
    wire.send(result);
  } catch (const std::exception&) {
    // The peer is gone; the outcome still stands.
  }
  return {std::move(result), std::move(transcript)};
}

}  // namespace

SessionOutcome serve_session(const Program& prog, const Stmt& goal, LineTransport& transport,
                             const SessionOptions& options) {
  std::vector<std::string> transcript;
  Wire wire(transport, transcript);
  return serve_on(wire, transcript, prog, goal, options);
}

SessionOutcome run_session(LineTransport& transport, const SessionOptions& options,
                           const std::optional<std::string>& fallback_source) {
  std::vector<std::string> transcript;
  Wire wire(transport, transcript);
  auto reject = [&](std::string reason) {
    ResultEvent result = failure_result(std::move(reason));
    try {
      wire.send(result);
    } catch (const std::exception&) {
    }
    return SessionOutcome{std::move(result), std::move(transcript)};
  };

  LoadAction load;
  try {
    auto action = decode_action(wire.receive());
    if (std::holds_alternative<CancelAction>(action)) return reject("cancelled");
    const auto* l = std::get_if<LoadAction>(&action);
    if (l == nullptr) throw ProtocolError("expected a load action first");
    load = *l;
  } catch (const ProtocolError& e) {
    return reject(std::string("protocol error: ") + e.what());
  }

  if (load.source.empty() && fallback_source) load.source = *fallback_source;
  Program prog;
  Stmt goal = true_stmt();
  try {
    prog.defs = parse_program(load.source);
    goal = parse_goal(load.goal.value_or("main()"));
  } catch (const ParseError& e) {
    return reject(std::string("parse error: ") + e.what());
  }
  return serve_on(wire, transcript, prog, goal, options);
}

std::vector<std::string> replay_tokens(const std::vector<std::string>& transcript) {
  std::vector<std::string> tokens;
  for (const auto& line : transcript) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_object() || !j.contains("action")) continue;
    const auto& kind = j["action"];
    if (kind == "choice") tokens.push_back(std::to_string(j["index"].get<std::int64_t>()));
    if (kind == "input") tokens.push_back(j["value"].get<std::string>());
  }
  return tokens;
}

}  // namespace jbi::session
