#pragma once

// Shared fixtures for the unit and acceptance suites: corpus access and
// seeded random program generators.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jbi/channel.hpp"
#include "jbi/evaluator.hpp"
#include "jbi/parser.hpp"
#include "jbi/syntax.hpp"

namespace jbi::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(JBI_CORPUS_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(JBI_GOLDEN_DIR) + "/" + name;
}

inline std::vector<std::string> corpus_files() {
  return {"employee.jbi", "tuition.jbi", "procedures.jbi", "greeting.jbi"};
}

inline Program load_program(const std::string& name) {
  Program p;
  p.defs = parse_program(read_file(corpus_path(name)));
  return p;
}

/// A committed trace: which program, goal and inputs produce it.
struct GoldenCase {
  std::string golden;
  std::string program;  // corpus file, or empty for no procedures
  std::string goal;
  std::vector<std::string> tokens;
};

inline std::vector<GoldenCase> golden_cases() {
  return {
      {"rule1_true.trace", "", "true", {}},
      {"rule2_3_4_call.trace", "procedures.jbi", "double(3)", {}},
      {"rule5_assign.trace", "", "x = 1 + 2 * 3", {}},
      {"rule6_seq.trace", "", "x = 1; y = x; print(y)", {}},
      {"rule7_read.trace", "", "read(who); print(who)", {"kim"}},
      {"rule8_tuition.trace", "tuition.jbi", "main()", {"1"}},
      {"rule8_mchoose.trace", "greeting.jbi", "main()", {"kim", "2"}},
      {"failure_undefined.trace", "", "undefined()", {}},
  };
}

inline std::string golden_trace(const GoldenCase& c) {
  Program p = c.program.empty() ? Program{} : load_program(c.program);
  ScriptedChannel ch(c.tokens);
  return format_trace(execute(p, parse_goal(c.goal), ch).trace);
}

/// Seeded generator of syntax trees.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))];
  }

  std::string name() {
    static const std::vector<std::string> pool = {"a", "b", "x", "y", "emp", "age",
                                                  "tuition", "major", "kim", "v1", "n_2", "Tom"};
    return pick(pool);
  }

  std::string text() {
    static const std::string alphabet = "abc XYZ019_-+*;,.()=:\"\\\n\t{}";
    std::string s;
    const int n = range(0, 6);
    for (int i = 0; i < n; ++i) {
      s += alphabet[static_cast<std::size_t>(range(0, static_cast<int>(alphabet.size()) - 1))];
    }
    return s;
  }

  Expr expr(int depth) {
    const int k = depth <= 0 ? range(0, 2) : range(0, 4);
    switch (k) {
      case 0: return int_lit(range(0, 5000));
      case 1: return chance(0.3) ? str_lit(text()) : ident(name());
      case 2: return ident(name());
      default: {
        static const std::vector<BinaryOp> ops = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
        return binop(pick(ops), expr(depth - 1), expr(depth - 1));
      }
    }
  }

  /// Arbitrary statement, for syntax round trips.
  Stmt stmt(int depth) {
    const int k = depth <= 0 ? range(0, 4) : range(0, 8);
    switch (k) {
      case 0: return true_stmt();
      case 1: return assign(name(), expr(2));
      case 2: {
        std::vector<Expr> args;
        const int n = range(0, 3);
        for (int i = 0; i < n; ++i) args.push_back(expr(1));
        return call(name(), std::move(args));
      }
      case 3: return read(name());
      case 4: return print(expr(2));
      case 5: return seq(stmt(depth - 1), stmt(depth - 1));
      case 6: return seq(seq(stmt(depth - 1), stmt(depth - 1)), stmt(depth - 1));
      case 7: {
        std::vector<Stmt> branches;
        const int n = range(1, 4);
        for (int i = 0; i < n; ++i) branches.push_back(stmt(depth - 1));
        return kchoose(std::move(branches));
      }
      default: {
        std::vector<std::pair<std::string, Stmt>> branches;
        const int n = range(1, 3);
        for (int i = 0; i < n; ++i) branches.emplace_back("b" + std::to_string(i) + text(), stmt(depth - 1));
        return mchoose(std::move(branches));
      }
    }
  }

  /// Interaction-free statement: assignments, prints, true and calls.
  Stmt quiet_step(const std::vector<ProcDef>& callable) {
    const int k = range(0, 9);
    if (k <= 3) return assign(name(), expr(2));
    if (k <= 5) return print(expr(2));
    if (k == 6) return true_stmt();
    if (k == 7 || callable.empty()) {
      // Occasionally call something that does not exist.
      return call(chance(0.5) ? "missing" : name(), {expr(1)});
    }
    const ProcDef& d = pick(callable);
    std::vector<Expr> args;
    for (std::size_t i = 0; i < d.params.size(); ++i) args.push_back(expr(1));
    return call(d.name, std::move(args));
  }

  Stmt quiet_block(const std::vector<ProcDef>& callable, int max_steps) {
    std::vector<Stmt> steps;
    const int n = range(1, max_steps);
    for (int i = 0; i < n; ++i) steps.push_back(quiet_step(callable));
    return seq(std::move(steps));
  }

  /// Up to three non-recursive, interaction-free procedures plus a few
  /// initial bindings.
  Program program() {
    Program p;
    const int n = range(0, 3);
    for (int i = 0; i < n; ++i) {
      ProcDef d{"p" + std::to_string(i), {}, true_stmt()};
      static const std::vector<std::string> params = {"x", "y", "a"};
      const int arity = range(0, 2);
      for (int j = 0; j < arity; ++j) d.params.push_back(params[static_cast<std::size_t>(j)]);
      d.body = quiet_block(p.defs, 3);
      p.defs.push_back(std::move(d));
    }
    const int bindings = range(0, 3);
    for (int i = 0; i < bindings; ++i) {
      if (chance(0.5)) {
        p.store.bind(name(), IntVal{range(0, 100)});
      } else {
        p.store.bind(name(), StrVal{text()});
      }
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace jbi::testing
