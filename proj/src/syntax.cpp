#include "jbi/syntax.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace jbi {

Expr int_lit(std::int64_t value) { return Expr{IntLit{value}}; }
Expr str_lit(std::string value) { return Expr{StrLit{std::move(value)}}; }
Expr ident(std::string name) { return Expr{Ident{std::move(name)}}; }
Expr binop(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{BinOp{op, std::move(lhs), std::move(rhs)}};
}

Stmt true_stmt() { return Stmt{True{}}; }
Stmt call(std::string name, std::vector<Expr> args) {
  return Stmt{Call{std::move(name), std::move(args)}};
}
Stmt assign(std::string var, Expr rhs) {
  return Stmt{Assign{std::move(var), std::move(rhs)}};
}
Stmt seq(Stmt first, Stmt second) {
  return Stmt{Seq{std::move(first), std::move(second)}};
}
Stmt seq(std::vector<Stmt> steps) {
  Stmt result = std::move(steps.back());
  for (auto it = steps.rbegin() + 1; it != steps.rend(); ++it) {
    result = seq(std::move(*it), std::move(result));
  }
  return result;
}
Stmt read(std::string var) { return Stmt{Read{std::move(var)}}; }
Stmt kchoose(std::vector<Stmt> branches) {
  return Stmt{KChoose{std::move(branches)}};
}
Stmt mchoose(std::vector<std::pair<std::string, Stmt>> branches) {
  MChoose m;
  for (auto& [label, body] : branches) {
    m.branches.push_back(LabeledBranch{std::move(label), std::move(body)});
  }
  return Stmt{std::move(m)};
}
Stmt print(Expr arg) { return Stmt{Print{std::move(arg)}}; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string render(const Value& v) {
  return std::visit(overloaded{
                        [](const IntVal& i) { return std::to_string(i.value); },
                        [](const StrVal& s) { return s.value; },
                        [](const SymVal& s) { return s.name; },
                    },
                    v);
}

Expr literal(const Value& v) {
  return std::visit(overloaded{
                        [](const IntVal& i) { return int_lit(i.value); },
                        [](const StrVal& s) { return str_lit(s.value); },
                        [](const SymVal& s) { return ident(s.name); },
                    },
                    v);
}

namespace {

constexpr std::array<std::string_view, 6> kKeywords = {
    "proc", "true", "read", "kchoose", "mchoose", "print"};

bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_identifier(std::string_view word) {
  if (word.empty() || !is_letter(word.front())) return false;
  for (char c : word) {
    if (!is_letter(c) && !is_digit(c) && c != '_') return false;
  }
  return !is_keyword(word);
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

using Active = std::map<std::string, Value>;

Expr subst_expr(const Expr& e, const Active& active) {
  return std::visit(
      overloaded{
          [&](const Ident& id) -> Expr {
            auto it = active.find(id.name);
            return it == active.end() ? e : literal(it->second);
          },
          [&](const BinOp& b) -> Expr {
            return binop(b.op, subst_expr(*b.lhs, active),
                         subst_expr(*b.rhs, active));
          },
          [&](const auto&) -> Expr { return e; },
      },
      e.node);
}

// `active` shrinks as read binders are passed; the caller observes that so
// the rest of a sequence is not substituted.
Stmt subst_stmt(const Stmt& s, Active& active) {
  if (active.empty()) return s;
  return std::visit(
      overloaded{
          [&](const True&) -> Stmt { return s; },
          [&](const Call& c) -> Stmt {
            std::vector<Expr> args;
            args.reserve(c.args.size());
            for (const auto& a : c.args) args.push_back(subst_expr(a, active));
            return call(c.name, std::move(args));
          },
          [&](const Assign& a) -> Stmt {
            return assign(a.var, subst_expr(a.rhs, active));
          },
          [&](const Seq& q) -> Stmt {
            Stmt first = subst_stmt(*q.first, active);
            Stmt second = subst_stmt(*q.second, active);
            return seq(std::move(first), std::move(second));
          },
          [&](const Read& r) -> Stmt {
            active.erase(r.var);
            return s;
          },
          [&](const KChoose& k) -> Stmt {
            std::vector<Stmt> branches;
            for (const auto& b : k.branches) {
              Active local = active;
              branches.push_back(subst_stmt(b, local));
            }
            return kchoose(std::move(branches));
          },
          [&](const MChoose& m) -> Stmt {
            MChoose out;
            for (const auto& b : m.branches) {
              Active local = active;
              out.branches.push_back(
                  LabeledBranch{b.label, subst_stmt(*b.body, local)});
            }
            return Stmt{std::move(out)};
          },
          [&](const Print& p) -> Stmt {
            return print(subst_expr(p.arg, active));
          },
      },
      s.node);
}

void collect_expr(const Expr& e, const std::set<std::string>& bound,
                  std::set<std::string>& out) {
  if (const auto* id = std::get_if<Ident>(&e.node)) {
    if (!bound.contains(id->name)) out.insert(id->name);
  } else if (const auto* b = std::get_if<BinOp>(&e.node)) {
    collect_expr(*b->lhs, bound, out);
    collect_expr(*b->rhs, bound, out);
  }
}

void collect_stmt(const Stmt& s, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const True&) {},
                 [&](const Call& c) {
                   for (const auto& a : c.args) collect_expr(a, bound, out);
                 },
                 [&](const Assign& a) { collect_expr(a.rhs, bound, out); },
                 [&](const Seq& q) {
                   collect_stmt(*q.first, bound, out);
                   collect_stmt(*q.second, bound, out);
                 },
                 [&](const Read& r) { bound.insert(r.var); },
                 [&](const KChoose& k) {
                   for (const auto& b : k.branches) {
                     auto local = bound;
                     collect_stmt(b, local, out);
                   }
                 },
                 [&](const MChoose& m) {
                   for (const auto& b : m.branches) {
                     auto local = bound;
                     collect_stmt(*b.body, local, out);
                   }
                 },
                 [&](const Print& p) { collect_expr(p.arg, bound, out); },
             },
             s.node);
}

}  // namespace

Stmt substitute(const Stmt& stmt, const std::string& var, const Value& val) {
  Active active{{var, val}};
  return subst_stmt(stmt, active);
}

Stmt substitute(const Stmt& stmt,
                const std::vector<std::pair<std::string, Value>>& bindings) {
  Active active(bindings.begin(), bindings.end());
  return subst_stmt(stmt, active);
}

std::set<std::string> free_idents(const Stmt& stmt) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_stmt(stmt, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

namespace {

int precedence(BinaryOp op) { return op == BinaryOp::Mul ? 2 : 1; }

const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return " + ";
    case BinaryOp::Sub: return " - ";
    case BinaryOp::Mul: return " * ";
  }
  return " ? ";
}

void print_expr(const Expr& e, std::string& out);

void print_operand(const Expr& e, int min_prec, std::string& out) {
  const auto* b = std::get_if<BinOp>(&e.node);
  if (b != nullptr && precedence(b->op) < min_prec) {
    out += '(';
    print_expr(e, out);
    out += ')';
  } else {
    print_expr(e, out);
  }
}

void print_expr(const Expr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const IntLit& i) { out += std::to_string(i.value); },
                 [&](const StrLit& s) { out += quote(s.value); },
                 [&](const Ident& id) { out += id.name; },
                 [&](const BinOp& b) {
                   const int p = precedence(b.op);
                   print_operand(*b.lhs, p, out);
                   out += spelling(b.op);
                   print_operand(*b.rhs, p + 1, out);
                 },
             },
             e.node);
}

void print_stmt(const Stmt& s, bool abbreviate, std::string& out);

void print_choice_count(const char* kw, std::size_t n, std::string& out) {
  out += kw;
  out += '(';
  out += std::to_string(n);
  out += n == 1 ? " branch)" : " branches)";
}

void print_stmt(const Stmt& s, bool abbreviate, std::string& out) {
  const Stmt* cur = &s;
  // Walk the right spine of a sequence iteratively.
  while (const auto* q = std::get_if<Seq>(&cur->node)) {
    const bool paren = std::holds_alternative<Seq>(q->first->node);
    if (paren) out += '(';
    print_stmt(*q->first, abbreviate, out);
    if (paren) out += ')';
    out += "; ";
    cur = &*q->second;
  }
  std::visit(
      overloaded{
          [&](const True&) { out += "true"; },
          [&](const Call& c) {
            out += c.name;
            out += '(';
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              if (i > 0) out += ", ";
              print_expr(c.args[i], out);
            }
            out += ')';
          },
          [&](const Assign& a) {
            out += a.var;
            out += " = ";
            print_expr(a.rhs, out);
          },
          [](const Seq&) {},
          [&](const Read& r) {
            out += "read(";
            out += r.var;
            out += ')';
          },
          [&](const KChoose& k) {
            if (abbreviate) return print_choice_count("kchoose", k.branches.size(), out);
            out += "kchoose(";
            for (std::size_t i = 0; i < k.branches.size(); ++i) {
              if (i > 0) out += ", ";
              print_stmt(k.branches[i], abbreviate, out);
            }
            out += ')';
          },
          [&](const MChoose& m) {
            if (abbreviate) return print_choice_count("mchoose", m.branches.size(), out);
            out += "mchoose(";
            for (std::size_t i = 0; i < m.branches.size(); ++i) {
              if (i > 0) out += ", ";
              out += quote(m.branches[i].label);
              out += ": ";
              print_stmt(*m.branches[i].body, abbreviate, out);
            }
            out += ')';
          },
          [&](const Print& p) {
            out += "print(";
            print_expr(p.arg, out);
            out += ')';
          },
      },
      cur->node);
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

std::string pretty_print(const Stmt& s) {
  std::string out;
  print_stmt(s, false, out);
  return out;
}

std::string pretty_print(const ProcDef& d) {
  std::string out = "proc " + d.name + "(";
  for (std::size_t i = 0; i < d.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += d.params[i];
  }
  out += ") = ";
  print_stmt(d.body, false, out);
  out += '.';
  return out;
}

std::string summarize(const Stmt& s) {
  std::string out;
  print_stmt(s, true, out);
  return out;
}

}  // namespace jbi
