#pragma once

// Shared recursive-descent machinery for the problem, formula and automaton parsers.

#include "symelim/problem.hpp"

#include <set>
#include <string>
#include <vector>

namespace symelim::detail {

class TokenStream {
 public:
  TokenStream(const std::vector<Token>& tokens, std::size_t begin, std::size_t end);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return pos_ >= end_; }
  bool accept(TokenKind kind);
  bool accept_identifier(const char* word);
  const Token& expect(TokenKind kind, const char* what);
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  const std::vector<Token>& tokens_;
  std::size_t pos_, end_;
  Token end_token_;
};

struct SymbolContext {
  const Signature* signature = nullptr;
  /// Receives implicitly declared constants; may be null.
  Signature* implicit_sink = nullptr;
  bool strict_constants = false;
  std::set<std::string> variables;
  std::string wildcard;  // empty: '?' not allowed
};

class ExpressionParser {
 public:
  ExpressionParser(TokenStream& ts, SymbolContext& ctx) : ts_(ts), ctx_(ctx) {}

  Formula formula();
  /// A single comparison `expr rel expr`.
  Formula comparison();
  Polynomial expression();
  /// Comma-separated formulas up to (not including) a token of kind `stop`.
  std::vector<Formula> formula_list();

 private:
  Polynomial product();
  Polynomial unary();
  Polynomial primary();
  Term identifier_term(const Token& id);

  TokenStream& ts_;
  SymbolContext& ctx_;
};

Rel parse_relation(const std::string& text);

}  // namespace symelim::detail
