#include "jbi/parser.hpp"

#include <charconv>
#include <set>

namespace jbi {

namespace {

constexpr int kMaxNesting = 512;

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(tokenize_with_end(source)) {}

  std::vector<ProcDef> program() {
    std::vector<ProcDef> defs;
    std::set<std::string> names;
    while (!at(TokenKind::End)) {
      expect_keyword("proc");
      const Token& name_tok = expect(TokenKind::Ident, "procedure name");
      if (!names.insert(name_tok.text).second) {
        fail_at(name_tok, "duplicate procedure '" + name_tok.text + "'");
      }
      ProcDef def{name_tok.text, {}, true_stmt()};
      expect_punct("(");
      std::set<std::string> seen;
      if (!at_punct(")")) {
        do {
          const Token& p = expect(TokenKind::Ident, "parameter name");
          if (!seen.insert(p.text).second) {
            fail_at(p, "duplicate parameter '" + p.text + "'");
          }
          def.params.push_back(p.text);
        } while (accept_punct(","));
      }
      expect_punct(")");
      expect_punct("=");
      def.body = stmt();
      expect_punct(".");
      defs.push_back(std::move(def));
    }
    return defs;
  }

  Stmt goal() {
    Stmt s = stmt();
    if (!at(TokenKind::End)) fail_at(peek(), "unexpected '" + peek().text + "' after statement");
    return s;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) parser.fail_at(parser.peek(), "nesting too deep");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  Stmt stmt() {
    DepthGuard guard(*this);
    std::vector<Stmt> steps;
    steps.push_back(prim());
    while (accept_punct(";")) steps.push_back(prim());
    return seq(std::move(steps));
  }

  Stmt prim() {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "true") {
        ++pos_;
        return true_stmt();
      }
      if (t.text == "read") {
        ++pos_;
        expect_punct("(");
        const Token& v = expect(TokenKind::Ident, "variable name");
        expect_punct(")");
        return read(v.text);
      }
      if (t.text == "print") {
        ++pos_;
        expect_punct("(");
        Expr e = expr();
        expect_punct(")");
        return print(std::move(e));
      }
      if (t.text == "kchoose") {
        ++pos_;
        expect_punct("(");
        require_branch();
        std::vector<Stmt> branches;
        do {
          branches.push_back(stmt());
        } while (accept_punct(","));
        expect_punct(")");
        return kchoose(std::move(branches));
      }
      if (t.text == "mchoose") {
        ++pos_;
        expect_punct("(");
        require_branch();
        std::vector<std::pair<std::string, Stmt>> branches;
        std::set<std::string> labels;
        do {
          const Token& l = expect(TokenKind::String, "button label");
          std::string label = unquote(l.text);
          if (!labels.insert(label).second) fail_at(l, "duplicate label " + l.text);
          expect_punct(":");
          branches.emplace_back(std::move(label), stmt());
        } while (accept_punct(","));
        expect_punct(")");
        return mchoose(std::move(branches));
      }
      fail_at(t, "unexpected keyword '" + t.text + "'");
    }
    if (t.kind == TokenKind::Ident) {
      ++pos_;
      if (accept_punct("=")) return assign(t.text, expr());
      if (accept_punct("(")) {
        std::vector<Expr> args;
        if (!at_punct(")")) {
          do {
            args.push_back(expr());
          } while (accept_punct(","));
        }
        expect_punct(")");
        return call(t.text, std::move(args));
      }
      fail_at(peek(), "expected '=' or '(' after '" + t.text + "'");
    }
    if (accept_punct("(")) {
      Stmt s = stmt();
      expect_punct(")");
      return s;
    }
    fail_at(t, describe(t) + " cannot start a statement");
  }

  Expr expr() {
    DepthGuard guard(*this);
    Expr lhs = term();
    for (;;) {
      if (accept_punct("+")) {
        lhs = binop(BinaryOp::Add, std::move(lhs), term());
      } else if (accept_punct("-")) {
        lhs = binop(BinaryOp::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (accept_punct("*")) lhs = binop(BinaryOp::Mul, std::move(lhs), factor());
    return lhs;
  }

  Expr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Int: {
        ++pos_;
        std::int64_t value = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || p != t.text.data() + t.text.size()) {
          fail_at(t, "integer literal out of range");
        }
        return int_lit(value);
      }
      case TokenKind::String:
        ++pos_;
        return str_lit(unquote(t.text));
      case TokenKind::Ident:
        ++pos_;
        return ident(t.text);
      default:
        break;
    }
    if (accept_punct("(")) {
      Expr e = expr();
      expect_punct(")");
      return e;
    }
    fail_at(t, "expected an expression, found " + describe(t));
  }

  void require_branch() {
    if (at_punct(")")) fail_at(peek(), "a choice needs at least one branch");
  }

  const Token& peek() const { return tokens_[pos_]; }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_punct(std::string_view p) const {
    return peek().kind == TokenKind::Punct && peek().text == p;
  }

  bool accept_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }

  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) {
      fail_at(peek(), "expected '" + std::string(p) + "', found " + describe(peek()));
    }
  }

  void expect_keyword(std::string_view kw) {
    if (peek().kind != TokenKind::Keyword || peek().text != kw) {
      fail_at(peek(), "expected '" + std::string(kw) + "', found " + describe(peek()));
    }
    ++pos_;
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (!at(kind)) fail_at(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return tokens_[pos_++];
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail_at(const Token& t, std::string message) const {
    throw ParseError(std::move(message), t.line, t.col);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

std::vector<ProcDef> parse_program(std::string_view source) {
  return Parser(source).program();
}

Stmt parse_goal(std::string_view source) { return Parser(source).goal(); }

}  // namespace jbi
