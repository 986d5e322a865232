#include "symelim/lexer.hpp"

#include <cctype>

namespace symelim {

std::string format_diagnostic(const ParseDiagnostic& d) {
  return std::string(d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning") + " at line " +
         std::to_string(d.span.line) + ", column " + std::to_string(d.span.column) + ": " + d.message;
}

namespace {
std::string summarize(const std::vector<ParseDiagnostic>& ds) {
  return ds.empty() ? std::string("parse error") : format_diagnostic(ds.front());
}
}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ParseError::ParseError(SourceSpan span, const std::string& message)
    : ParseError(std::vector<ParseDiagnostic>{{ParseDiagnostic::Severity::Error, span, message}}) {}

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1, i = 0;
  bool line_start = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
        line_start = true;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](TokenKind kind, std::string s, std::size_t len) {
    out.push_back(Token{kind, std::move(s), SourceSpan{line, col, len}});
    line_start = false;
    advance(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (line_start && (c == '%' || c == '#')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    auto rest = text.substr(i);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (n < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[n])) || rest[n] == '_')) ++n;
      while (n < rest.size() && rest[n] == '\'') ++n;
      emit(TokenKind::Identifier, std::string(rest.substr(0, n)), n);
      continue;
    }
    if (c == '_' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = c == '_' ? 1 : 0;
      std::size_t start = n;
      while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
      if (n == start) throw ParseError(SourceSpan{line, col, 1}, "expected digits after '_'");
      emit(TokenKind::Number, std::string(rest.substr(start, n - start)), n);
      continue;
    }
    if (c == '\'') {
      for (const char* word : {"true", "false"}) {
        std::string quoted = std::string("'") + word + "'";
        if (rest.substr(0, quoted.size()) == quoted) {
          emit(TokenKind::Boolean, word, quoted.size());
          goto next;
        }
      }
      throw ParseError(SourceSpan{line, col, 1}, "unexpected quote");
    }
    if (rest.substr(0, 3) == "-->") {
      emit(TokenKind::Arrow, "-->", 3);
      continue;
    }
    if (rest.substr(0, 2) == "->") {
      emit(TokenKind::Arrow, "->", 2);
      continue;
    }
    if (rest.substr(0, 2) == ":=") {
      emit(TokenKind::Assign, ":=", 2);
      continue;
    }
    if (rest.substr(0, 2) == "<=" || rest.substr(0, 2) == ">=" || rest.substr(0, 2) == "<>" ||
        rest.substr(0, 2) == "!=") {
      emit(TokenKind::Relation, std::string(rest.substr(0, 2)), 2);
      continue;
    }
    switch (c) {
      case '<':
      case '>':
      case '=': emit(TokenKind::Relation, std::string(1, c), 1); continue;
      case '(': emit(TokenKind::LParen, "(", 1); continue;
      case ')': emit(TokenKind::RParen, ")", 1); continue;
      case '{': emit(TokenKind::LBrace, "{", 1); continue;
      case '}': emit(TokenKind::RBrace, "}", 1); continue;
      case '[': emit(TokenKind::LBracket, "[", 1); continue;
      case ']': emit(TokenKind::RBracket, "]", 1); continue;
      case ',': emit(TokenKind::Comma, ",", 1); continue;
      case ';': emit(TokenKind::Semicolon, ";", 1); continue;
      case '.': emit(TokenKind::Dot, ".", 1); continue;
      case ':': emit(TokenKind::Colon, ":", 1); continue;
      case '+': emit(TokenKind::Plus, "+", 1); continue;
      case '-': emit(TokenKind::Minus, "-", 1); continue;
      case '*': emit(TokenKind::Star, "*", 1); continue;
      case '/': emit(TokenKind::Slash, "/", 1); continue;
      case '?': emit(TokenKind::Question, "?", 1); continue;
      default: throw ParseError(SourceSpan{line, col, 1}, std::string("unexpected character '") + c + "'");
    }
  next:;
  }
  out.push_back(Token{TokenKind::End, "", SourceSpan{line, col, 0}});
  return out;
}

}  // namespace symelim
