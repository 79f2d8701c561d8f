#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jbi {

enum class TokenKind { Ident, Int, String, Keyword, Punct, End };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;  // source spelling; strings keep their quotes
  int line;
  int col;
};

/// First syntax error in a source text. Positions are 1-based; columns
/// count code points.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int col);

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string message_;
  int line_;
  int col_;
};

/// Splits source into tokens, dropping whitespace and `//` comments.
std::vector<Token> tokenize(std::string_view source);

/// As tokenize, terminated by an End token positioned after the input.
std::vector<Token> tokenize_with_end(std::string_view source);

/// Decodes the escapes of a STRING token's spelling.
std::string unquote(std::string_view spelling);

}  // namespace jbi
