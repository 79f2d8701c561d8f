#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jbi/cli.hpp"
#include "jbi/evaluator.hpp"
#include "support.hpp"

namespace jbi {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun jbi_run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "jbi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return testing::corpus_path(name); }

std::string temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("jbi_cli_test_" + name);
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

TEST(Cli, TuitionInputs) {
  const char* expected[] = {"2000", "4000", "2200"};
  for (int i = 1; i <= 3; ++i) {
    auto r = jbi_run({"run", corpus("tuition.jbi"), "--input", std::to_string(i)});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, std::string(expected[i - 1]) + "\noutcome: success\n");
  }
}

TEST(Cli, OutOfRangeExitsOne) {
  auto r = jbi_run({"run", corpus("tuition.jbi"), "--input", "9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "outcome: failure(ChoiceOutOfRange)\n");
  EXPECT_NE(r.err.find("ChoiceOutOfRange"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwo) {
  auto path = temp_file("broken.jbi", "proc p( = true.");
  auto r = jbi_run({"run", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err, path + ":1:9: parse error: expected parameter name, found '='\n");
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--goal", "main("}).code, 2);
}

TEST(Cli, FailureReasons) {
  auto undefined = jbi_run({"run", corpus("tuition.jbi"), "--goal", "undefined()", "--input", ""});
  EXPECT_EQ(undefined.code, 1);
  EXPECT_EQ(undefined.out, "outcome: failure(NoMatchingProcedure)\n");
  auto exhausted = jbi_run({"run", corpus("tuition.jbi"), "--input", ""});
  EXPECT_EQ(exhausted.code, 1);
  EXPECT_EQ(exhausted.out, "outcome: failure(InputExhausted)\n");
}

TEST(Cli, IoAndUsageErrorsExitThree) {
  EXPECT_EQ(jbi_run({"run", "/nonexistent/x.jbi"}).code, 3);
  EXPECT_EQ(jbi_run({"run"}).code, 3);
  EXPECT_EQ(jbi_run({}).code, 3);
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--bogus"}).code, 3);
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--input", "1", "--input-file", "x"}).code, 3);
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--input-file", "/nonexistent/tokens"}).code, 3);
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--reprompt", "0"}).code, 3);
  EXPECT_EQ(jbi_run({"run", corpus("tuition.jbi"), "--serve", "notaport"}).code, 3);
}

TEST(Cli, HelpExitsZero) {
  auto r = jbi_run({"run", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--input"), std::string::npos);
}

TEST(Cli, DumpStateSortedAfterOutcome) {
  auto r = jbi_run({"run", corpus("employee.jbi"), "--input", "2", "--dump-state"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "outcome: success\nstate: {age=40, emp=kim}\n");
}

TEST(Cli, TracePrecedesOutcome) {
  auto r = jbi_run({"run", corpus("tuition.jbi"), "--input", "1", "--trace"});
  EXPECT_EQ(r.out, "2000\n" + testing::read_file(testing::golden_path("rule8_tuition.trace")) +
                       "outcome: success\n");
}

TEST(Cli, InlineAndScriptFileAreByteIdentical) {
  auto script = temp_file("tokens.txt", "kim\n2\n");
  for (const std::vector<std::string> extra :
       {std::vector<std::string>{}, {"--trace"}, {"--dump-state"}, {"--trace", "--dump-state"}}) {
    std::vector<std::string> a = {"run", corpus("greeting.jbi"), "--input", "kim,2"};
    std::vector<std::string> b = {"run", corpus("greeting.jbi"), "--input-file", script};
    a.insert(a.end(), extra.begin(), extra.end());
    b.insert(b.end(), extra.begin(), extra.end());
    auto ra = jbi_run(a);
    auto rb = jbi_run(b);
    EXPECT_EQ(ra.out, rb.out);
    EXPECT_EQ(ra.code, rb.code);
  }
}

TEST(Cli, RepromptFlag) {
  auto strict = jbi_run({"run", corpus("employee.jbi"), "--input", "9,2"});
  EXPECT_EQ(strict.code, 1);
  auto lenient = jbi_run({"run", corpus("employee.jbi"), "--input", "9,2", "--reprompt", "3", "--dump-state"});
  EXPECT_EQ(lenient.code, 0);
  EXPECT_EQ(lenient.out, "outcome: success\nstate: {age=40, emp=kim}\n");
  EXPECT_EQ(lenient.err, "invalid choice, try again [1-3]: \n");
}

TEST(Cli, ConsoleMode) {
  auto r = jbi_run({"run", corpus("employee.jbi"), "--dump-state"}, "9\n2\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "1) emp = tom; age = 31\n"
            "2) emp = kim; age = 40\n"
            "3) emp = sue; age = 22\n"
            "choose [1-3]: "
            "invalid choice, try again [1-3]: "
            "outcome: success\n"
            "state: {age=40, emp=kim}\n");
}

TEST(Cli, ConsoleReadPrompt) {
  auto r = jbi_run({"run", corpus("greeting.jbi")}, "kim\n1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.starts_with("read name> 1) [OK] print(name); status = accepted\n"));
  EXPECT_TRUE(r.out.ends_with("choose [1-2]: kim\noutcome: success\n"));
}

TEST(Cli, ServeStdio) {
  const std::string input =
      R"j({"action":"load","goal":"main()"})j" "\n" R"({"action":"choice","id":1,"index":3})" "\n";
  auto r = jbi_run({"run", corpus("tuition.jbi"), "--serve", "stdio"}, input);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.ends_with("{\"event\":\"print\",\"value\":\"2200\"}\n"
                              "{\"event\":\"result\",\"status\":\"success\",\"reason\":null,"
                              "\"bindings\":{\"major\":\"libarts\",\"tuition\":\"2200\"}}\n"));
  auto cancelled = jbi_run({"run", corpus("tuition.jbi"), "--serve", "stdio"},
                           R"({"action":"load"})" "\n" R"({"action":"cancel"})" "\n");
  EXPECT_EQ(cancelled.code, 1);
  auto garbage = jbi_run({"run", "--serve", "stdio"}, "nope\n");
  EXPECT_EQ(garbage.code, 3);
}

TEST(Cli, RealBinaryExitCodes) {
  const std::string bin = JBI_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("run " + corpus("tuition.jbi") + " --input 1"), 0);
  EXPECT_EQ(status("run " + corpus("tuition.jbi") + " --input 9"), 1);
  EXPECT_EQ(status("run " + temp_file("broken2.jbi", "proc p( = true.")), 2);
  EXPECT_EQ(status("run /nonexistent.jbi"), 3);
}

TEST(FormatTrace, Examples) {
  EXPECT_EQ(format_trace({}), "");
  EXPECT_EQ(format_trace({TraceEntry{1, 1, "true", {}}}), "#1 R1 true\n");
  EXPECT_EQ(format_trace_line(TraceEntry{1, 8, "kchoose(3 branches) -> 1", {}}), "#1 R8 kchoose(3 branches) -> 1");
}

TEST(Goldens, ByteExact) {
  for (const auto& c : testing::golden_cases()) {
    EXPECT_EQ(testing::golden_trace(c), testing::read_file(testing::golden_path(c.golden))) << c.golden;
  }
}

}  // namespace
}  // namespace jbi
