#include "jbi/channel.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

namespace jbi {

std::string_view to_string(ChoiceKind kind) {
  return kind == ChoiceKind::KChoose ? "kchoose" : "mchoose";
}

ChoiceRequest make_choice_request(const KChoose& k) {
  ChoiceRequest req{ChoiceKind::KChoose, {}};
  for (std::size_t i = 0; i < k.branches.size(); ++i) {
    req.options.push_back({std::to_string(i + 1), pretty_print(k.branches[i])});
  }
  return req;
}

ChoiceRequest make_choice_request(const MChoose& m) {
  ChoiceRequest req{ChoiceKind::MChoose, {}};
  for (const auto& b : m.branches) {
    req.options.push_back({b.label, pretty_print(*b.body)});
  }
  return req;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string range_text(const ChoiceRequest& req) {
  return "[1-" + std::to_string(req.upper()) + "]";
}

}  // namespace

std::optional<std::size_t> parse_choice_index(std::string_view raw, std::size_t n) {
  raw = trim(raw);
  if (!all_digits(raw)) return std::nullopt;
  std::size_t value = 0;
  auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc{} || value < 1 || value > n) return std::nullopt;
  return value;
}

ChoiceResult request_choice(InteractionChannel& channel, const ChoiceRequest& req,
                            const ChannelPolicy& policy) {
  const bool reprompt = policy.on_out_of_range == ChannelPolicy::OnOutOfRange::Reprompt;
  const int attempts = reprompt ? std::max(policy.reprompt_limit, 1) : 1;
  std::string last;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto answer = channel.ask_choice(req, attempt);
    if (!answer) {
      return Failure{FailureReason::InputExhausted, "no answer for a choice among " +
                                                        std::to_string(req.upper())};
    }
    if (auto index = parse_choice_index(*answer, req.upper())) return *index;
    last = std::string(trim(*answer));
    if (!reprompt && !all_digits(last)) {
      return Failure{FailureReason::BadInputToken,
                     "choice answer '" + last + "' is not a number"};
    }
  }
  return Failure{FailureReason::ChoiceOutOfRange,
                 "answer '" + last + "' outside " + range_text(req)};
}

InputResult request_input(InteractionChannel& channel, std::string_view var) {
  auto line = channel.ask_line(var);
  if (!line) {
    return Failure{FailureReason::InputExhausted, "no input for read(" + std::string(var) + ")"};
  }
  return std::string(trim(*line));
}

std::string choice_prompt(const ChoiceRequest& req) {
  std::string out;
  for (std::size_t i = 0; i < req.options.size(); ++i) {
    out += std::to_string(i + 1);
    out += ") ";
    if (req.kind == ChoiceKind::MChoose) {
      out += '[';
      out += req.options[i].label;
      out += "] ";
    }
    out += req.options[i].display;
    out += '\n';
  }
  out += "choose " + range_text(req) + ": ";
  return out;
}

std::string reprompt_notice(const ChoiceRequest& req) {
  return "invalid choice, try again " + range_text(req) + ": ";
}

std::string read_prompt(std::string_view var) {
  return "read " + std::string(var) + "> ";
}

// ---------------------------------------------------------------------------

ScriptedChannel::ScriptedChannel(std::vector<std::string> tokens)
    : tokens_(tokens.begin(), tokens.end()) {}

std::optional<std::string> ScriptedChannel::pop() {
  if (tokens_.empty()) return std::nullopt;
  std::string t = std::move(tokens_.front());
  tokens_.pop_front();
  ++consumed_;
  return t;
}

std::optional<std::string> ScriptedChannel::ask_choice(const ChoiceRequest& req, int attempt) {
  if (attempt > 0) {
    notices_.push_back(reprompt_notice(req));
    if (notice_sink_ != nullptr) *notice_sink_ << notices_.back() << '\n';
  }
  return pop();
}

std::optional<std::string> ScriptedChannel::ask_line(std::string_view) { return pop(); }

void ScriptedChannel::emit_print(std::string_view rendered) {
  prints_.emplace_back(rendered);
  if (print_sink_ != nullptr) *print_sink_ << rendered << '\n';
}

// ---------------------------------------------------------------------------

std::optional<std::string> ConsoleChannel::next_line() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  return line;
}

std::optional<std::string> ConsoleChannel::ask_choice(const ChoiceRequest& req, int attempt) {
  out_ << (attempt == 0 ? choice_prompt(req) : reprompt_notice(req)) << std::flush;
  return next_line();
}

std::optional<std::string> ConsoleChannel::ask_line(std::string_view var) {
  out_ << read_prompt(var) << std::flush;
  return next_line();
}

void ConsoleChannel::emit_print(std::string_view rendered) {
  out_ << rendered << '\n' << std::flush;
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_inline_tokens(std::string_view csv) {
  std::vector<std::string> out;
  if (csv.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = csv.find(',', start);
    out.emplace_back(trim(csv.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_script_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
    start = nl + 1;
  }
  return out;
}

}  // namespace jbi
