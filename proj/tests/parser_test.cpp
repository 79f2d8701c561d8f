#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "jbi/lexer.hpp"
#include "jbi/parser.hpp"
#include "support.hpp"

namespace jbi {
namespace {

std::vector<std::pair<TokenKind, std::string>> kinds_and_texts(std::string_view src) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const auto& t : tokenize(src)) out.emplace_back(t.kind, t.text);
  return out;
}

TEST(Tokenize, Examples) {
  using enum TokenKind;
  EXPECT_EQ(kinds_and_texts("age = 31"),
            (std::vector<std::pair<TokenKind, std::string>>{{Ident, "age"}, {Punct, "="}, {Int, "31"}}));
  EXPECT_EQ(kinds_and_texts("kchoose("),
            (std::vector<std::pair<TokenKind, std::string>>{{Keyword, "kchoose"}, {Punct, "("}}));
}

TEST(Tokenize, RejectsCharactersOutsideAlphabet) {
  try {
    tokenize("@");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.col(), 1);
  }
}

TEST(Tokenize, RejectsCurrencyAndGrouping) {
  EXPECT_THROW(tokenize("tuition = $2000"), ParseError);
  EXPECT_THROW(tokenize("tuition = 2,000"), ParseError);
  EXPECT_NO_THROW(tokenize("f(1,2)"));
  EXPECT_NO_THROW(tokenize("f(1, 234)"));
}

TEST(Tokenize, CommentsAndPositions) {
  auto tokens = tokenize("// header\n  x = 1 // trailing\ny");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].line, 2);
  EXPECT_EQ(tokens[0].col, 3);
  EXPECT_EQ(tokens[3].text, "y");
  EXPECT_EQ(tokens[3].line, 3);
}

TEST(Tokenize, ColumnsCountCodePoints) {
  try {
    tokenize("\"é\" @");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.col(), 5);
  }
}

TEST(Tokenize, StringErrors) {
  EXPECT_THROW(tokenize("\"open"), ParseError);
  EXPECT_THROW(tokenize("\"a\\qb\""), ParseError);
  EXPECT_THROW(tokenize("\"line\nbreak\""), ParseError);
  EXPECT_EQ(unquote(tokenize(R"("a\"b\\c\n")")[0].text), "a\"b\\c\n");
}

TEST(ParseProgram, TuitionListing) {
  auto defs = parse_program(testing::read_file(testing::corpus_path("tuition.jbi")));
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].name, "main");
  EXPECT_TRUE(defs[0].params.empty());
  const auto& body = std::get<Seq>(defs[0].body.node);
  const auto& choice = std::get<KChoose>(body.first->node);
  ASSERT_EQ(choice.branches.size(), 3u);
  EXPECT_EQ(choice.branches[2], seq(assign("major", ident("libarts")), assign("tuition", int_lit(2200))));
  EXPECT_EQ(*body.second, print(ident("tuition")));
}

TEST(ParseProgram, Minimal) {
  EXPECT_EQ(parse_program("proc main() = true."),
            (std::vector<ProcDef>{ProcDef{"main", {}, true_stmt()}}));
  EXPECT_TRUE(parse_program("").empty());
  EXPECT_TRUE(parse_program("// nothing here\n").empty());
}

TEST(ParseProgram, Errors) {
  EXPECT_THROW(parse_program("proc p() = kchoose()."), ParseError);
  EXPECT_THROW(parse_program("proc p() = mchoose()."), ParseError);
  EXPECT_THROW(parse_program("proc p() = true"), ParseError);
  EXPECT_THROW(parse_program("proc p() = true. proc p(x) = true."), ParseError);
  EXPECT_THROW(parse_program("proc p(x, x) = true."), ParseError);
  EXPECT_THROW(parse_program("proc p() = mchoose(\"a\": true, \"a\": true)."), ParseError);
  EXPECT_THROW(parse_program("proc p() = x = 99999999999999999999."), ParseError);
  EXPECT_THROW(parse_program("proc p() = main."), ParseError);
  EXPECT_THROW(parse_program("proc true() = true."), ParseError);
}

TEST(ParseProgram, ErrorLocation) {
  try {
    parse_program("proc p( = true.");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.col(), 9);
  }
  try {
    parse_program("proc a() = true.\nproc a() = true.");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 6);
  }
}

TEST(ParseGoal, Examples) {
  EXPECT_EQ(parse_goal("main()"), call("main"));
  EXPECT_EQ(parse_goal("x = 1; print(x)"), seq(assign("x", int_lit(1)), print(ident("x"))));
  EXPECT_THROW(parse_goal("x = 1 extra"), ParseError);
  EXPECT_THROW(parse_goal(""), ParseError);
  EXPECT_THROW(parse_goal("main"), ParseError);
}

TEST(ParseGoal, CommaBindsLooserThanSemicolon) {
  EXPECT_EQ(parse_goal("kchoose(a = 1; b = 2, c = 3)"),
            kchoose({seq(assign("a", int_lit(1)), assign("b", int_lit(2))), assign("c", int_lit(3))}));
}

TEST(ParseGoal, GroupingAndPrecedence) {
  using enum BinaryOp;
  EXPECT_EQ(parse_goal("(a = 1; b = 2); c = 3"),
            seq(seq(assign("a", int_lit(1)), assign("b", int_lit(2))), assign("c", int_lit(3))));
  EXPECT_EQ(parse_goal("a = 1; (b = 2; c = 3)"), parse_goal("a = 1; b = 2; c = 3"));
  EXPECT_EQ(parse_goal("x = 1 + 2 * 3 - 4"),
            assign("x", binop(Sub, binop(Add, int_lit(1), binop(Mul, int_lit(2), int_lit(3))), int_lit(4))));
}

TEST(ParseGoal, DeepNestingIsAnErrorNotACrash) {
  std::string deep(5000, '(');
  deep += "true";
  deep += std::string(5000, ')');
  EXPECT_THROW(parse_goal(deep), ParseError);
}

TEST(ParseGoal, LongSequences) {
  std::string src = "x = 0";
  for (int i = 0; i < 5000; ++i) src += "; x = x + 1";
  Stmt s = parse_goal(src);
  EXPECT_EQ(parse_goal(pretty_print(s)), s);
}

TEST(RoundTripProperty, GeneratedStatements) {
  testing::Gen gen(2024);
  for (int i = 0; i < 1500; ++i) {
    Stmt s = gen.stmt(4);
    const std::string text = pretty_print(s);
    ASSERT_EQ(text.find('\n'), std::string::npos);
    ASSERT_EQ(parse_goal(text), s) << text;
  }
}

TEST(RoundTripProperty, CorpusDefinitions) {
  for (const auto& file : testing::corpus_files()) {
    for (const auto& d : parse_program(testing::read_file(testing::corpus_path(file)))) {
      EXPECT_EQ(parse_program(pretty_print(d)), std::vector<ProcDef>{d}) << file;
      EXPECT_EQ(parse_goal(pretty_print(d.body)), d.body) << file;
    }
  }
}

TEST(TokenizeProperty, SpaceJoinedTextsRetokenizeToSameKinds) {
  testing::Gen gen(77);
  std::vector<std::string> sources;
  for (const auto& f : testing::corpus_files()) sources.push_back(testing::read_file(testing::corpus_path(f)));
  for (int i = 0; i < 300; ++i) sources.push_back(pretty_print(gen.stmt(3)));
  for (const auto& src : sources) {
    auto tokens = tokenize(src);
    std::string joined;
    for (const auto& t : tokens) joined += t.text + " ";
    auto again = tokenize(joined);
    ASSERT_EQ(again.size(), tokens.size()) << src;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      EXPECT_EQ(again[i].kind, tokens[i].kind);
      EXPECT_EQ(again[i].text, tokens[i].text);
    }
  }
}

TEST(ParseErrorProperty, DeletedTokenErrorsPointInsideSource) {
  for (const auto& f : testing::corpus_files()) {
    const std::string src = testing::read_file(testing::corpus_path(f));
    auto tokens = tokenize(src);
    for (std::size_t skip = 0; skip < tokens.size(); ++skip) {
      std::string mutated;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i == skip) continue;
        // Preserve line structure so positions stay meaningful.
        while (std::count(mutated.begin(), mutated.end(), '\n') + 1 < tokens[i].line) mutated += '\n';
        mutated += tokens[i].text + " ";
      }
      std::vector<std::string> lines;
      std::stringstream ss(mutated);
      for (std::string l; std::getline(ss, l);) lines.push_back(l);
      if (lines.empty()) lines.emplace_back();
      try {
        parse_program(mutated);
      } catch (const ParseError& e) {
        ASSERT_GE(e.line(), 1);
        ASSERT_LE(e.line(), static_cast<int>(lines.size()));
        ASSERT_GE(e.col(), 1);
        ASSERT_LE(e.col(), static_cast<int>(lines[e.line() - 1].size()) + 1) << f << " skip " << skip;
      }
    }
  }
}

}  // namespace
}  // namespace jbi
