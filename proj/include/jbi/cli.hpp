#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace jbi::cli {

enum class ExitCode : int {
  Success = 0,
  Failure = 1,     // the program ran and failed
  ParseError = 2,  // source or goal does not parse
  IoError = 3,     // unreadable files, protocol errors, bad usage
};

enum class InputMode { Console, Inline, ScriptFile, Serve };

struct RunConfig {
  std::optional<std::string> source_path;  // optional only when serving
  std::string goal = "main()";
  InputMode input_mode = InputMode::Console;
  std::string inline_tokens;  // Inline: comma-separated
  std::string script_path;    // ScriptFile: one token per line
  std::string serve_target;   // Serve: a port number, or "stdio"
  bool trace = false;
  bool dump_state = false;
  std::optional<int> reprompt;  // switches on reprompt policy with this limit
};

/// Runs one configuration. Program output, trace, and the outcome line go
/// to `out`; diagnostics and reprompt notices of scripted runs go to `err`.
ExitCode run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Parses `argv` (`jbi run <file> ...`) and runs it.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err);

}  // namespace jbi::cli
