#include "jbi/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jbi/channel.hpp"
#include "jbi/evaluator.hpp"
#include "jbi/parser.hpp"
#include "jbi/session.hpp"
#include "jbi/ws_server.hpp"

namespace jbi::cli {

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

ExitCode serve(const RunConfig& config, const std::optional<std::string>& source,
               std::istream& in, std::ostream& out, std::ostream& err) {
  session::SessionOptions options;
  options.trace = config.trace;
  if (config.reprompt) options.reprompt_limit = *config.reprompt;

  if (config.serve_target == "stdio") {
    session::StreamTransport transport(in, out);
    auto outcome = session::run_session(transport, options, source);
    const auto& reason = outcome.result.reason;
    if (outcome.result.success) return ExitCode::Success;
    if (reason && reason->starts_with("parse error")) return ExitCode::ParseError;
    if (reason && reason->starts_with("protocol error")) return ExitCode::IoError;
    return ExitCode::Failure;
  }

  unsigned port = 0;
  const auto& t = config.serve_target;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), port);
  if (ec != std::errc{} || p != t.data() + t.size() || port > 65535) {
    err << "jbi: --serve expects a port number or 'stdio', got '" << t << "'\n";
    return ExitCode::IoError;
  }
  try {
    session::SessionServer server(static_cast<unsigned short>(port), options, source);
    err << "listening on ws://127.0.0.1:" << server.port() << "/session" << std::endl;
    server.run();
  } catch (const std::exception& e) {
    err << "jbi: " << e.what() << '\n';
    return ExitCode::IoError;
  }
  return ExitCode::Success;
}

}  // namespace

ExitCode run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  std::optional<std::string> source;
  if (config.source_path) {
    source = slurp(*config.source_path);
    if (!source) {
      err << "jbi: cannot read '" << *config.source_path << "'\n";
      return ExitCode::IoError;
    }
  }

  Program prog;
  Stmt goal = true_stmt();
  if (source) {
    try {
      prog.defs = parse_program(*source);
    } catch (const ParseError& e) {
      err << *config.source_path << ":" << e.line() << ":" << e.col()
          << ": parse error: " << e.message() << '\n';
      return ExitCode::ParseError;
    }
  }

  if (config.input_mode == InputMode::Serve) return serve(config, source, in, out, err);

  if (!source) {
    err << "jbi: a program file is required\n";
    return ExitCode::IoError;
  }
  try {
    goal = parse_goal(config.goal);
  } catch (const ParseError& e) {
    err << "goal:" << e.line() << ":" << e.col() << ": parse error: " << e.message() << '\n';
    return ExitCode::ParseError;
  }

  std::unique_ptr<InteractionChannel> channel;
  switch (config.input_mode) {
    case InputMode::Console:
      channel = std::make_unique<ConsoleChannel>(in, out);
      break;
    case InputMode::Inline:
    case InputMode::ScriptFile: {
      std::vector<std::string> tokens;
      if (config.input_mode == InputMode::Inline) {
        tokens = split_inline_tokens(config.inline_tokens);
      } else {
        auto text = slurp(config.script_path);
        if (!text) {
          err << "jbi: cannot read '" << config.script_path << "'\n";
          return ExitCode::IoError;
        }
        tokens = split_script_lines(*text);
      }
      auto scripted = std::make_unique<ScriptedChannel>(std::move(tokens));
      scripted->set_print_sink(&out);
      scripted->set_notice_sink(&err);
      channel = std::move(scripted);
      break;
    }
    case InputMode::Serve:
      break;
  }

  ExecOptions options;
  if (config.reprompt) options.policy = ChannelPolicy::reprompt(*config.reprompt);
  auto result = execute(prog, goal, *channel, options);

  if (config.trace) out << format_trace(result.trace);
  out << "outcome: " << describe(result.outcome) << '\n';
  if (const auto* f = std::get_if<Failure>(&result.outcome)) {
    err << "jbi: " << to_string(f->reason) << ": " << f->detail << '\n';
    return ExitCode::Failure;
  }
  if (config.dump_state) out << "state: " << format_store(std::get<Success>(result.outcome).store) << '\n';
  out.flush();
  return ExitCode::Success;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Interpreter for a small imperative language with bounded-choice input", "jbi"};
  app.require_subcommand(1);

  RunConfig config;
  std::string source_path;
  std::optional<std::string> input_csv;
  std::string script_path;
  std::string serve_target;
  int reprompt = 0;

  auto* run_cmd = app.add_subcommand("run", "Execute a program file");
  run_cmd->add_option("file", source_path, "Program source (.jbi)");
  run_cmd->add_option("--goal", config.goal, "Goal statement to execute")->capture_default_str();
  auto* input_opt = run_cmd->add_option("--input", input_csv, "Comma-separated input tokens");
  auto* file_opt = run_cmd->add_option("--input-file", script_path, "Input tokens, one per line");
  auto* serve_opt = run_cmd->add_option("--serve", serve_target,
                                        "Serve sessions on PORT (ws://.../session), or 'stdio'");
  run_cmd->add_flag("--trace", config.trace, "Print the derivation trace");
  run_cmd->add_flag("--dump-state", config.dump_state, "Print the final store");
  auto* reprompt_opt = run_cmd->add_option("--reprompt", reprompt,
                                           "Re-ask invalid choices, N attempts in total")
                           ->check(CLI::PositiveNumber);
  input_opt->excludes(file_opt)->excludes(serve_opt);
  file_opt->excludes(serve_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::IoError);
  }

  if (!source_path.empty()) config.source_path = source_path;
  if (*serve_opt) {
    config.input_mode = InputMode::Serve;
    config.serve_target = serve_target;
  } else if (input_csv) {
    config.input_mode = InputMode::Inline;
    config.inline_tokens = *input_csv;
  } else if (*file_opt) {
    config.input_mode = InputMode::ScriptFile;
    config.script_path = script_path;
  }
  if (*reprompt_opt) config.reprompt = reprompt;
  if (!config.source_path && config.input_mode != InputMode::Serve) {
    err << "jbi run: a program file is required\n";
    return static_cast<int>(ExitCode::IoError);
  }
  return static_cast<int>(run(config, in, out, err));
}

}  // namespace jbi::cli
