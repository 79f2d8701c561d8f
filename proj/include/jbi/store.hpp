#pragma once

// Machine state and execution results.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "jbi/syntax.hpp"

namespace jbi {

/// Variable bindings, at most one per identifier. Iteration is sorted by name.
class Store {
 public:
  using Map = std::map<std::string, Value, std::less<>>;

  Store() = default;
  Store(std::initializer_list<Map::value_type> init) : bindings_(init) {}

  std::optional<Value> lookup(std::string_view name) const;
  void bind(const std::string& name, Value v) { bindings_.insert_or_assign(name, std::move(v)); }

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  Map::const_iterator begin() const { return bindings_.begin(); }
  Map::const_iterator end() const { return bindings_.end(); }

  bool operator==(const Store&) const = default;

 private:
  Map bindings_;
};

/// Store with `x` bound to exactly `v`, replacing any previous binding.
Store update_store(Store store, const std::string& x, Value v);

/// `{a=1, b=kim}` in key order, values rendered as for print.
std::string format_store(const Store& store);

enum class FailureReason {
  NoMatchingProcedure,
  EvalError,
  ChoiceOutOfRange,
  InputExhausted,
  BadInputToken,
};

std::string_view to_string(FailureReason reason);

struct Success {
  Store store;
  bool operator==(const Success&) const = default;
};

struct Failure {
  FailureReason reason;
  std::string detail;
  bool operator==(const Failure&) const = default;
};

using Outcome = std::variant<Success, Failure>;

inline bool succeeded(const Outcome& o) { return std::holds_alternative<Success>(o); }

/// `success` or `failure(<Reason>)`.
std::string describe(const Outcome& o);

}  // namespace jbi
