#include "jbi/lexer.hpp"

#include "jbi/syntax.hpp"

namespace jbi {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Int: return "INT";
    case TokenKind::String: return "STRING";
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Punct: return "PUNCT";
    case TokenKind::End: return "END";
  }
  return "?";
}

ParseError::ParseError(std::string message, int line, int col)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                         ": " + message),
      message_(std::move(message)),
      line_(line),
      col_(col) {}

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_punct(char c) {
  switch (c) {
    case '(': case ')': case ',': case ';': case '=':
    case '.': case ':': case '+': case '-': case '*':
      return true;
    default:
      return false;
  }
}

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  std::vector<Token> run(bool with_end) {
    std::vector<Token> tokens;
    for (;;) {
      skip_blank();
      if (at_end()) break;
      tokens.push_back(next());
    }
    if (with_end) tokens.push_back(Token{TokenKind::End, "", line_, col_});
    return tokens;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip_blank() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    const int line = line_;
    const int col = col_;
    const std::size_t start = pos_;
    const char c = peek();
    auto make = [&](TokenKind kind) {
      return Token{kind, std::string(src_.substr(start, pos_ - start)), line, col};
    };

    if (is_alpha(c)) {
      while (is_alpha(peek()) || is_digit(peek()) || peek() == '_') advance();
      Token t = make(TokenKind::Ident);
      if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
      return t;
    }
    if (is_digit(c)) {
      while (is_digit(peek())) advance();
      if (is_alpha(peek()) || peek() == '_') {
        throw ParseError("malformed number", line, col);
      }
      // 2,000 is a grouped literal, not two arguments.
      if (peek() == ',' && is_digit(peek(1)) && is_digit(peek(2)) &&
          is_digit(peek(3)) && !is_digit(peek(4))) {
        throw ParseError(
            "thousands separators are not allowed in numeric literals", line,
            col);
      }
      return make(TokenKind::Int);
    }
    if (c == '"') {
      advance();
      for (;;) {
        if (at_end() || peek() == '\n') {
          throw ParseError("unterminated string literal", line, col);
        }
        if (peek() == '\\') {
          const char e = peek(1);
          if (e != '"' && e != '\\' && e != 'n' && e != 't') {
            const int el = line_;
            const int ec = col_;
            throw ParseError("invalid escape sequence", el, ec);
          }
          advance();
          advance();
          continue;
        }
        if (peek() == '"') {
          advance();
          break;
        }
        advance();
      }
      return make(TokenKind::String);
    }
    if (is_punct(c)) {
      advance();
      return make(TokenKind::Punct);
    }
    if (c == '$') {
      throw ParseError("currency symbols are not allowed; write plain integers",
                       line, col);
    }
    throw ParseError("unexpected character", line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  return Scanner(source).run(false);
}

std::vector<Token> tokenize_with_end(std::string_view source) {
  return Scanner(source).run(true);
}

std::string unquote(std::string_view spelling) {
  std::string out;
  for (std::size_t i = 1; i + 1 < spelling.size(); ++i) {
    char c = spelling[i];
    if (c == '\\') {
      c = spelling[++i];
      if (c == 'n') c = '\n';
      else if (c == 't') c = '\t';
    }
    out += c;
  }
  return out;
}

}  // namespace jbi
