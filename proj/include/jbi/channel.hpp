#pragma once

// Where choices, keyboard lines and print output go.

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jbi/store.hpp"

namespace jbi {

enum class ChoiceKind { KChoose, MChoose };

std::string_view to_string(ChoiceKind kind);

struct ChoiceOption {
  std::string label;    // "1", "2", ... for kchoose; the button caption for mchoose
  std::string display;  // pretty-printed branch
  bool operator==(const ChoiceOption&) const = default;
};

/// A bounded choice offered to the user. Answers are 1-based indices.
struct ChoiceRequest {
  ChoiceKind kind;
  std::vector<ChoiceOption> options;

  std::size_t lower() const { return 1; }
  std::size_t upper() const { return options.size(); }
  bool operator==(const ChoiceRequest&) const = default;
};

ChoiceRequest make_choice_request(const KChoose& k);
ChoiceRequest make_choice_request(const MChoose& m);

struct ChannelPolicy {
  enum class OnOutOfRange { Strict, Reprompt };

  OnOutOfRange on_out_of_range = OnOutOfRange::Strict;
  int reprompt_limit = 3;  // total attempts, >= 1

  static ChannelPolicy strict() { return {}; }
  static ChannelPolicy reprompt(int limit = 3) { return {OnOutOfRange::Reprompt, limit}; }
  bool operator==(const ChannelPolicy&) const = default;
};

/// An interaction device. Requests are answered in issue order.
class InteractionChannel {
 public:
  virtual ~InteractionChannel() = default;

  /// Raw answer to a choice prompt, or nullopt when input is exhausted.
  /// `attempt` is 0 for the first ask; later attempts follow an invalid answer.
  virtual std::optional<std::string> ask_choice(const ChoiceRequest& req, int attempt) = 0;

  /// Raw line for `read(var)`, or nullopt when input is exhausted.
  virtual std::optional<std::string> ask_line(std::string_view var) = 0;

  virtual void emit_print(std::string_view rendered) = 0;

  virtual ChannelPolicy default_policy() const { return ChannelPolicy::reprompt(); }
};

/// Validates an answer line: all digits and within [1, n].
std::optional<std::size_t> parse_choice_index(std::string_view raw, std::size_t n);

using ChoiceResult = std::variant<std::size_t, Failure>;
using InputResult = std::variant<std::string, Failure>;

/// Asks until a valid index arrives or the policy gives up.
ChoiceResult request_choice(InteractionChannel& channel, const ChoiceRequest& req,
                            const ChannelPolicy& policy);

/// Next raw line, trimmed.
InputResult request_input(InteractionChannel& channel, std::string_view var);

/// Console wording of a choice prompt, shared by every text channel.
std::string choice_prompt(const ChoiceRequest& req);
std::string reprompt_notice(const ChoiceRequest& req);
std::string read_prompt(std::string_view var);

/// Answers from a fixed token list. Strict by default.
class ScriptedChannel : public InteractionChannel {
 public:
  explicit ScriptedChannel(std::vector<std::string> tokens);

  /// Print lines are echoed to `out` as they happen.
  void set_print_sink(std::ostream* out) { print_sink_ = out; }
  /// Reprompt notices are echoed to `out`, one per line.
  void set_notice_sink(std::ostream* out) { notice_sink_ = out; }

  std::optional<std::string> ask_choice(const ChoiceRequest& req, int attempt) override;
  std::optional<std::string> ask_line(std::string_view var) override;
  void emit_print(std::string_view rendered) override;
  ChannelPolicy default_policy() const override { return ChannelPolicy::strict(); }

  const std::vector<std::string>& prints() const { return prints_; }
  const std::vector<std::string>& notices() const { return notices_; }
  std::size_t consumed() const { return consumed_; }
  std::size_t remaining() const { return tokens_.size(); }

 private:
  std::optional<std::string> pop();

  std::deque<std::string> tokens_;
  std::vector<std::string> prints_;
  std::vector<std::string> notices_;
  std::size_t consumed_ = 0;
  std::ostream* print_sink_ = nullptr;
  std::ostream* notice_sink_ = nullptr;
};

/// Interactive text console. Reprompts by default.
class ConsoleChannel : public InteractionChannel {
 public:
  ConsoleChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::optional<std::string> ask_choice(const ChoiceRequest& req, int attempt) override;
  std::optional<std::string> ask_line(std::string_view var) override;
  void emit_print(std::string_view rendered) override;

 private:
  std::optional<std::string> next_line();

  std::istream& in_;
  std::ostream& out_;
};

/// Splits `1,2,3` into tokens. An empty string yields no tokens.
std::vector<std::string> split_inline_tokens(std::string_view csv);
/// One token per line; a trailing newline does not add an empty token.
std::vector<std::string> split_script_lines(std::string_view text);

}  // namespace jbi
