#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symelim {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
};

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
};

std::string format_diagnostic(const ParseDiagnostic& d);

/// Raised by every parser entry point on rejection; carries at least one diagnostic.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> diagnostics);
  ParseError(SourceSpan span, const std::string& message);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

enum class TokenKind {
  Identifier,
  Number,    // "_12" or "12"; text holds the digits only
  Boolean,   // 'true' / 'false'; text holds the word
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Dot,
  Colon,
  Assign,    // :=
  Arrow,     // --> or ->
  Plus,
  Minus,
  Star,
  Slash,
  Relation,  // = <> != <= < >= >
  Question,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;
  SourceSpan span;
};

/// Tokenizes problem, formula and automaton text. Lines whose first
/// non-blank character is '%' or '#' are comments.
std::vector<Token> tokenize(std::string_view text, std::size_t first_line = 1);

}  // namespace symelim
