#include "jbi/store.hpp"

namespace jbi {

std::optional<Value> Store::lookup(std::string_view name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

Store update_store(Store store, const std::string& x, Value v) {
  store.bind(x, std::move(v));
  return store;
}

std::string format_store(const Store& store) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : store) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += '=';
    out += render(value);
  }
  out += '}';
  return out;
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NoMatchingProcedure: return "NoMatchingProcedure";
    case FailureReason::EvalError: return "EvalError";
    case FailureReason::ChoiceOutOfRange: return "ChoiceOutOfRange";
    case FailureReason::InputExhausted: return "InputExhausted";
    case FailureReason::BadInputToken: return "BadInputToken";
  }
  return "Unknown";
}

std::string describe(const Outcome& o) {
  if (const auto* f = std::get_if<Failure>(&o)) {
    return "failure(" + std::string(to_string(f->reason)) + ")";
  }
  return "success";
}

}  // namespace jbi
