#pragma once

// Big-step execution of statements against a program. Every derivation step
// is recorded as a trace entry citing the inference rule it used:
//
//   R1 true            R5 assignment      R0 print
//   R2 clause body     R6 sequencing
//   R3 argument pass   R7 read
//   R4 procedure call  R8 bounded choice (kchoose / mchoose)

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jbi/channel.hpp"
#include "jbi/store.hpp"
#include "jbi/syntax.hpp"

namespace jbi {

/// Procedure definitions plus the machine state.
struct Program {
  std::vector<ProcDef> defs;  // at most one per name
  Store store;

  const ProcDef* find(std::string_view name) const;
};

struct TraceEntry {
  int step;  // consecutive from 1
  int rule;  // 1..8, or 0 for print
  std::string summary;
  Store store_after;
  bool operator==(const TraceEntry&) const = default;
};

struct ExecOptions {
  /// Overrides the channel's default policy.
  std::optional<ChannelPolicy> policy;
  /// Called for every trace entry as it is recorded.
  std::function<void(const TraceEntry&)> on_trace;
  /// Nested procedure calls beyond this fail with EvalError.
  int max_call_depth = 1000;
};

struct ExecResult {
  Outcome outcome;
  std::vector<TraceEntry> trace;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs `goal` from `prog`'s store. Never throws for language-level failures;
/// exceptions raised by the channel propagate.
ExecResult execute(const Program& prog, const Stmt& goal, InteractionChannel& channel,
                   const ExecOptions& options = {});

/// Unbound identifiers are self-quoting symbols. Throws EvalError.
Value eval_expr(const Store& store, const Expr& e);

/// Backchains one call: select the definition, pass arguments by value,
/// run the instantiated body.
ExecResult resolve_call(const Program& prog, const Call& call, InteractionChannel& channel,
                        const ExecOptions& options = {});

/// Keyboard token to value: digits, a double-quoted string, or a symbol.
std::variant<Value, Failure> parse_kbd_token(std::string_view raw);

/// `#<step> R<rule> <summary>`
std::string format_trace_line(const TraceEntry& entry);
/// One line per entry, each newline-terminated.
std::string format_trace(const std::vector<TraceEntry>& entries);

}  // namespace jbi
