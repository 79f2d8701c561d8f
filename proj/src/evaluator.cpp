#include "jbi/evaluator.hpp"

#include <charconv>
#include <limits>

#include "jbi/lexer.hpp"

namespace jbi {

const ProcDef* Program::find(std::string_view name) const {
  for (const auto& d : defs) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t checked(BinaryOp op, std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case BinaryOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
    case BinaryOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
    case BinaryOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
  }
  if (overflow) throw EvalError("integer overflow");
  return r;
}

const char* op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
  }
  return "?";
}

std::string kind_of(const Value& v) {
  return std::visit(overloaded{
                        [](const IntVal&) { return "integer"; },
                        [](const StrVal&) { return "string"; },
                        [](const SymVal&) { return "symbol"; },
                    },
                    v);
}

}  // namespace

Value eval_expr(const Store& store, const Expr& e) {
  return std::visit(
      overloaded{
          [](const IntLit& i) -> Value { return IntVal{i.value}; },
          [](const StrLit& s) -> Value { return StrVal{s.value}; },
          [&](const Ident& id) -> Value {
            if (auto v = store.lookup(id.name)) return *v;
            return SymVal{id.name};
          },
          [&](const BinOp& b) -> Value {
            Value lhs = eval_expr(store, *b.lhs);
            Value rhs = eval_expr(store, *b.rhs);
            const auto* li = std::get_if<IntVal>(&lhs);
            const auto* ri = std::get_if<IntVal>(&rhs);
            if (li != nullptr && ri != nullptr) return IntVal{checked(b.op, li->value, ri->value)};
            const auto* ls = std::get_if<StrVal>(&lhs);
            const auto* rs = std::get_if<StrVal>(&rhs);
            if (b.op == BinaryOp::Add && ls != nullptr && rs != nullptr) {
              return StrVal{ls->value + rs->value};
            }
            throw EvalError("cannot apply '" + std::string(op_name(b.op)) + "' to " +
                            kind_of(lhs) + " and " + kind_of(rhs));
          },
      },
      e.node);
}

std::variant<Value, Failure> parse_kbd_token(std::string_view raw) {
  auto bad = [&](const char* why) {
    return Failure{FailureReason::BadInputToken, "input '" + std::string(raw) + "' " + why};
  };
  if (raw.empty()) return bad("is empty");
  if (raw.find_first_not_of("0123456789") == std::string_view::npos) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{}) return bad("is out of range");
    return IntVal{value};
  }
  if (raw.front() == '"') {
    try {
      auto tokens = tokenize(raw);
      if (tokens.size() == 1 && tokens[0].kind == TokenKind::String) {
        return StrVal{unquote(tokens[0].text)};
      }
    } catch (const ParseError&) {
    }
    return bad("is not a valid string");
  }
  if (is_identifier(raw)) return SymVal{std::string(raw)};
  return bad("is not a number, string or symbol");
}

namespace {

class Executor {
 public:
  Executor(const Program& prog, InteractionChannel& channel, const ExecOptions& options)
      : prog_(prog),
        channel_(channel),
        options_(options),
        policy_(options.policy.value_or(channel.default_policy())),
        store_(prog.store) {}

  ExecResult finish(std::optional<Failure> failure) {
    if (failure) return {std::move(*failure), std::move(trace_)};
    return {Success{std::move(store_)}, std::move(trace_)};
  }

  std::optional<Failure> run(const Stmt& s) {
    const Stmt* cur = &s;
    // Rule 6: the right spine of a sequence runs iteratively, stopping at
    // the first failure.
    while (const auto* q = std::get_if<Seq>(&cur->node)) {
      log(6, summarize(*cur));
      if (auto f = run(*q->first)) return f;
      cur = &*q->second;
    }
    return std::visit([&](const auto& node) { return step(node, *cur); }, cur->node);
  }

  std::optional<Failure> run_call(const Call& c) {
    const std::string redex = pretty_print(Stmt{c});
    const ProcDef* def = prog_.find(c.name);
    if (def == nullptr || def->params.size() != c.args.size()) {
      return fail(4, redex, FailureReason::NoMatchingProcedure,
                  "no procedure " + c.name + "/" + std::to_string(c.args.size()));
    }
    if (depth_ >= options_.max_call_depth) {
      return fail(4, redex, FailureReason::EvalError,
                  "call depth limit " + std::to_string(options_.max_call_depth) + " exceeded");
    }
    log(4, redex);

    // Rule 3, once per quantified parameter; arguments are evaluated in the
    // caller's store.
    std::vector<std::pair<std::string, Value>> bindings;
    std::vector<Expr> instantiated;
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      const std::string& param = def->params[i];
      Value v;
      try {
        v = eval_expr(store_, c.args[i]);
      } catch (const EvalError& e) {
        return fail(3, "[" + pretty_print(c.args[i]) + "/" + param + "] " + c.name,
                    FailureReason::EvalError, e.what());
      }
      log(3, "[" + pretty_print(literal(v)) + "/" + param + "] " + c.name);
      instantiated.push_back(literal(v));
      bindings.emplace_back(param, std::move(v));
    }

    // Rule 2: the distinguished clause's head matches; run its body once.
    Stmt body = substitute(def->body, bindings);
    log(2, pretty_print(call(c.name, std::move(instantiated))) + " = " + summarize(body));
    ++depth_;
    auto result = run(body);
    --depth_;
    return result;
  }

 private:
  std::optional<Failure> step(const True&, const Stmt&) {
    log(1, "true");
    return std::nullopt;
  }

  std::optional<Failure> step(const Seq&, const Stmt&) { return std::nullopt; }

  std::optional<Failure> step(const Assign& a, const Stmt& s) {
    const std::string redex = pretty_print(s);
    try {
      Value v = eval_expr(store_, a.rhs);
      store_.bind(a.var, std::move(v));
    } catch (const EvalError& e) {
      return fail(5, redex, FailureReason::EvalError, e.what());
    }
    log(5, redex);
    return std::nullopt;
  }

  std::optional<Failure> step(const Read& r, const Stmt& s) {
    const std::string redex = pretty_print(s);
    auto line = request_input(channel_, r.var);
    if (auto* f = std::get_if<Failure>(&line)) return fail(7, redex, f->reason, f->detail);
    auto token = parse_kbd_token(std::get<std::string>(line));
    if (auto* f = std::get_if<Failure>(&token)) return fail(7, redex, f->reason, f->detail);
    Value v = std::get<Value>(std::move(token));
    const std::string shown = pretty_print(literal(v));
    store_.bind(r.var, std::move(v));
    log(7, redex + " -> " + shown);
    return std::nullopt;
  }

  std::optional<Failure> step(const KChoose& k, const Stmt& s) {
    auto index = choose(make_choice_request(k), s);
    if (auto* f = std::get_if<Failure>(&index)) return std::move(*f);
    return run(k.branches[std::get<std::size_t>(index) - 1]);
  }

  std::optional<Failure> step(const MChoose& m, const Stmt& s) {
    auto index = choose(make_choice_request(m), s);
    if (auto* f = std::get_if<Failure>(&index)) return std::move(*f);
    return run(*m.branches[std::get<std::size_t>(index) - 1].body);
  }

  std::optional<Failure> step(const Call& c, const Stmt&) { return run_call(c); }

  std::optional<Failure> step(const Print& p, const Stmt& s) {
    const std::string redex = pretty_print(s);
    Value v;
    try {
      v = eval_expr(store_, p.arg);
    } catch (const EvalError& e) {
      return fail(0, redex, FailureReason::EvalError, e.what());
    }
    channel_.emit_print(render(v));
    log(0, redex + " -> " + pretty_print(literal(v)));
    return std::nullopt;
  }

  // Rule 8: read the user's index; the caller runs that branch.
  ChoiceResult choose(const ChoiceRequest& req, const Stmt& s) {
    const std::string redex = summarize(s);
    auto index = request_choice(channel_, req, policy_);
    if (auto* f = std::get_if<Failure>(&index)) {
      return *fail(8, redex, f->reason, f->detail);
    }
    log(8, redex + " -> " + std::to_string(std::get<std::size_t>(index)));
    return index;
  }

  void log(int rule, std::string summary) {
    trace_.push_back(TraceEntry{static_cast<int>(trace_.size()) + 1, rule, std::move(summary), store_});
    if (options_.on_trace) options_.on_trace(trace_.back());
  }

  std::optional<Failure> fail(int rule, const std::string& redex, FailureReason reason,
                              std::string detail) {
    log(rule, redex + " -> failure(" + std::string(to_string(reason)) + ")");
    return Failure{reason, std::move(detail)};
  }

  const Program& prog_;
  InteractionChannel& channel_;
  const ExecOptions& options_;
  ChannelPolicy policy_;
  Store store_;
  std::vector<TraceEntry> trace_;
  int depth_ = 0;
};

}  // namespace

ExecResult execute(const Program& prog, const Stmt& goal, InteractionChannel& channel,
                   const ExecOptions& options) {
  Executor ex(prog, channel, options);
  auto failure = ex.run(goal);
  return ex.finish(std::move(failure));
}

ExecResult resolve_call(const Program& prog, const Call& c, InteractionChannel& channel,
                        const ExecOptions& options) {
  Executor ex(prog, channel, options);
  auto failure = ex.run_call(c);
  return ex.finish(std::move(failure));
}

std::string format_trace_line(const TraceEntry& entry) {
  return "#" + std::to_string(entry.step) + " R" + std::to_string(entry.rule) + " " +
         entry.summary;
}

std::string format_trace(const std::vector<TraceEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += format_trace_line(e);
    out += '\n';
  }
  return out;
}

}  // namespace jbi
