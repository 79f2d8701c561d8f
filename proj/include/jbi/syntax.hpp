#pragma once

// Abstract syntax of the bounded-choice language: expressions, statements,
// procedure definitions and runtime values.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace jbi {

/// Immutable shared node with structural (deep) equality.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

// ---------------------------------------------------------------------------
// Expressions

enum class BinaryOp { Add, Sub, Mul };

struct Expr;

struct IntLit {
  std::int64_t value;
  bool operator==(const IntLit&) const = default;
};

struct StrLit {
  std::string value;
  bool operator==(const StrLit&) const = default;
};

struct Ident {
  std::string name;
  bool operator==(const Ident&) const = default;
};

struct BinOp {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const BinOp&) const = default;
};

struct Expr {
  std::variant<IntLit, StrLit, Ident, BinOp> node;
  bool operator==(const Expr&) const = default;
};

Expr int_lit(std::int64_t value);
Expr str_lit(std::string value);
Expr ident(std::string name);
Expr binop(BinaryOp op, Expr lhs, Expr rhs);

// ---------------------------------------------------------------------------
// Statements

struct Stmt;

struct True {
  bool operator==(const True&) const = default;
};

struct Call {
  std::string name;
  std::vector<Expr> args;
  bool operator==(const Call&) const = default;
};

struct Assign {
  std::string var;
  Expr rhs;
  bool operator==(const Assign&) const = default;
};

/// Binary sequencing; longer sequences nest to the right.
struct Seq {
  Box<Stmt> first;
  Box<Stmt> second;
  bool operator==(const Seq&) const = default;
};

/// `read(x)`. Binds x over the rest of the enclosing sequence.
struct Read {
  std::string var;
  bool operator==(const Read&) const = default;
};

struct KChoose {
  std::vector<Stmt> branches;  // nonempty
  bool operator==(const KChoose&) const = default;
};

struct LabeledBranch {
  std::string label;
  Box<Stmt> body;
  bool operator==(const LabeledBranch&) const = default;
};

struct MChoose {
  std::vector<LabeledBranch> branches;  // nonempty, distinct labels
  bool operator==(const MChoose&) const = default;
};

struct Print {
  Expr arg;
  bool operator==(const Print&) const = default;
};

struct Stmt {
  std::variant<True, Call, Assign, Seq, Read, KChoose, MChoose, Print> node;
  bool operator==(const Stmt&) const = default;
};

Stmt true_stmt();
Stmt call(std::string name, std::vector<Expr> args = {});
Stmt assign(std::string var, Expr rhs);
Stmt seq(Stmt first, Stmt second);
/// Right-nested sequence of a nonempty list.
Stmt seq(std::vector<Stmt> steps);
Stmt read(std::string var);
Stmt kchoose(std::vector<Stmt> branches);
Stmt mchoose(std::vector<std::pair<std::string, Stmt>> branches);
Stmt print(Expr arg);

/// ∀p₁…∀pₙ (name(p₁,…,pₙ) = body)
struct ProcDef {
  std::string name;
  std::vector<std::string> params;
  Stmt body;
  bool operator==(const ProcDef&) const = default;
};

// ---------------------------------------------------------------------------
// Values

struct IntVal {
  std::int64_t value;
  bool operator==(const IntVal&) const = default;
};

struct StrVal {
  std::string value;
  bool operator==(const StrVal&) const = default;
};

/// Symbolic constant, e.g. the `kim` in `emp = kim`.
struct SymVal {
  std::string name;
  bool operator==(const SymVal&) const = default;
};

using Value = std::variant<IntVal, StrVal, SymVal>;

/// Output rendering: decimal, verbatim string, or symbol name.
std::string render(const Value& v);

/// The literal expression denoting `v`.
Expr literal(const Value& v);

// ---------------------------------------------------------------------------
// Identifiers

bool is_keyword(std::string_view word);
/// Letter, then letters/digits/underscore, and not a keyword.
bool is_identifier(std::string_view word);

// ---------------------------------------------------------------------------
// Operations

/// Replaces free occurrences of `var` in expression position with the
/// literal of `val`. Assignment targets are locations and stay untouched;
/// a `read(var)` shadows the remainder of its sequence.
Stmt substitute(const Stmt& stmt, const std::string& var, const Value& val);

/// Simultaneous substitution of several variables.
Stmt substitute(const Stmt& stmt,
                const std::vector<std::pair<std::string, Value>>& bindings);

std::set<std::string> free_idents(const Stmt& stmt);

std::string pretty_print(const Expr& e);
std::string pretty_print(const Stmt& s);
std::string pretty_print(const ProcDef& d);

/// Like pretty_print, but choices collapse to `kchoose(N branches)`.
std::string summarize(const Stmt& s);

/// Double-quoted string literal with escapes.
std::string quote(std::string_view text);

}  // namespace jbi
