#include "symelim/printer.hpp"
#include "symelim/problem.hpp"
#include "token_stream.hpp"

#include <algorithm>
#include <sstream>

namespace symelim {

const FunctionDecl* Signature::function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

int Signature::level_of(const std::string& fn) const {
  const FunctionDecl* d = function(fn);
  return d ? d->level : 0;
}

int Signature::max_level() const {
  int m = 0;
  for (const auto& [n, d] : functions) m = std::max(m, d.level);
  return m;
}

std::set<std::string> Signature::symbols_at(int level) const {
  std::set<std::string> out;
  for (const auto& [n, d] : functions)
    if (d.level == level) out.insert(n);
  return out;
}

std::set<std::string> Signature::extension_symbols() const {
  std::set<std::string> out;
  for (const auto& [n, d] : functions) out.insert(n);
  return out;
}

int ProblemSpec::level_of(const Formula& f) const {
  int lvl = 0;
  for (const auto& fn : function_symbols_of(f)) lvl = std::max(lvl, signature.level_of(fn));
  return lvl;
}

int ProblemSpec::clause_level(const Clause& c) const { return level_of(c.matrix()); }

namespace detail {

TokenStream::TokenStream(const std::vector<Token>& tokens, std::size_t begin, std::size_t end)
    : tokens_(tokens), pos_(begin), end_(std::min(end, tokens.size() - 1)) {
  end_token_ = Token{TokenKind::End, "", tokens_[end_].span};
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return pos_ + ahead < end_ ? tokens_[pos_ + ahead] : end_token_;
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < end_) ++pos_;
  return t;
}

bool TokenStream::accept(TokenKind kind) {
  if (peek().kind != kind) return false;
  next();
  return true;
}

bool TokenStream::accept_identifier(const char* word) {
  if (peek().kind != TokenKind::Identifier || peek().text != word) return false;
  next();
  return true;
}

const Token& TokenStream::expect(TokenKind kind, const char* what) {
  if (peek().kind != kind) {
    const Token& t = peek();
    fail(t, std::string("expected ") + what + (t.kind == TokenKind::End ? " before end of section" : ", found '" + t.text + "'"));
  }
  return next();
}

void TokenStream::fail(const std::string& message) const { fail(peek(), message); }

void TokenStream::fail(const Token& at, const std::string& message) const { throw ParseError(at.span, message); }

Rel parse_relation(const std::string& text) {
  if (text == "=") return Rel::Eq;
  if (text == "<>" || text == "!=") return Rel::Ne;
  if (text == "<=") return Rel::Le;
  if (text == "<") return Rel::Lt;
  if (text == ">=") return Rel::Ge;
  return Rel::Gt;
}

namespace {
bool is_keyword(const Token& t, const char* w) { return t.kind == TokenKind::Identifier && t.text == w; }
}  // namespace

Formula ExpressionParser::formula() {
  const Token& t = ts_.peek();
  if ((is_keyword(t, "AND") || is_keyword(t, "OR")) && ts_.peek(1).kind == TokenKind::LParen) {
    bool is_and = t.text == "AND";
    ts_.next();
    ts_.next();
    std::vector<Formula> parts;
    if (ts_.peek().kind != TokenKind::RParen) parts = formula_list();
    ts_.expect(TokenKind::RParen, is_and ? "')' closing AND" : "')' closing OR");
    return is_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
  }
  if (is_keyword(t, "NOT") && ts_.peek(1).kind == TokenKind::LParen) {
    ts_.next();
    ts_.next();
    Formula inner = formula();
    ts_.expect(TokenKind::RParen, "')'");
    return negate(inner);
  }
  if (t.kind == TokenKind::Boolean) {
    ts_.next();
    return Formula::boolean(t.text == "true");
  }
  if (t.kind == TokenKind::LParen && (is_keyword(ts_.peek(1), "FORALL") || is_keyword(ts_.peek(1), "EXISTS"))) {
    ts_.next();
    bool universal = ts_.next().text == "FORALL";
    std::vector<Term> vars;
    std::vector<std::string> added;
    do {
      const Token& v = ts_.expect(TokenKind::Identifier, "bound variable");
      vars.push_back(Term::variable(v.text));
      if (ctx_.variables.insert(v.text).second) added.push_back(v.text);
    } while (ts_.accept(TokenKind::Comma));
    ts_.expect(TokenKind::RParen, "')' after bound variables");
    ts_.expect(TokenKind::Dot, "'.' after quantifier prefix");
    Formula body = formula();
    for (const auto& v : added) ctx_.variables.erase(v);
    return universal ? Formula::forall(std::move(vars), body) : Formula::exists(std::move(vars), body);
  }
  return comparison();
}

Formula ExpressionParser::comparison() {
  Polynomial lhs = expression();
  const Token& r = ts_.expect(TokenKind::Relation, "relation symbol");
  Rel rel = parse_relation(r.text);
  Polynomial rhs = expression();
  return Formula::atom(lhs, rel, rhs);
}

std::vector<Formula> ExpressionParser::formula_list() {
  std::vector<Formula> out;
  out.push_back(formula());
  while (ts_.accept(TokenKind::Comma)) out.push_back(formula());
  return out;
}

Polynomial ExpressionParser::expression() {
  Polynomial acc = product();
  for (;;) {
    if (ts_.accept(TokenKind::Plus))
      acc += product();
    else if (ts_.accept(TokenKind::Minus))
      acc -= product();
    else
      return acc;
  }
}

Polynomial ExpressionParser::product() {
  Polynomial acc = unary();
  for (;;) {
    if (ts_.accept(TokenKind::Star)) {
      acc = acc * unary();
    } else if (ts_.peek().kind == TokenKind::Slash) {
      const Token& slash = ts_.next();
      Polynomial d = unary();
      if (!d.is_constant() || d.is_zero()) ts_.fail(slash, "division is only supported by a nonzero numeric literal");
      acc *= Rational(1) / d.constant_term();
    } else {
      return acc;
    }
  }
}

Polynomial ExpressionParser::unary() {
  if (ts_.accept(TokenKind::Minus)) return -unary();
  if (ts_.accept(TokenKind::Plus)) return unary();
  return primary();
}

Polynomial ExpressionParser::primary() {
  const Token& t = ts_.peek();
  switch (t.kind) {
    case TokenKind::Number: {
      ts_.next();
      return Polynomial::constant(Rational(mpz_class(t.text)));
    }
    case TokenKind::LParen: {
      ts_.next();
      Polynomial p = expression();
      ts_.expect(TokenKind::RParen, "')'");
      return p;
    }
    case TokenKind::Question: {
      if (ctx_.wildcard.empty()) ts_.fail(t, "wildcard '?' is only allowed in assumptions");
      ts_.next();
      return Polynomial::atom(Term::variable(ctx_.wildcard));
    }
    case TokenKind::Identifier: {
      Token id = ts_.next();
      if (ts_.peek().kind != TokenKind::LParen) return Polynomial::atom(identifier_term(id));
      ts_.next();
      std::vector<Term> args;
      if (ts_.peek().kind != TokenKind::RParen) {
        do {
          args.push_back(Term::from_polynomial(expression()));
        } while (ts_.accept(TokenKind::Comma));
      }
      ts_.expect(TokenKind::RParen, "')' closing argument list");
      if (ctx_.signature) {
        const FunctionDecl* d = ctx_.signature->function(id.text);
        if (!d) ts_.fail(id, "unknown function symbol '" + id.text + "'");
        if (d->arity != args.size())
          ts_.fail(id, "arity mismatch for '" + id.text + "': declared " + std::to_string(d->arity) + ", used with " +
                           std::to_string(args.size()));
      }
      return Polynomial::atom(Term::apply(id.text, std::move(args)));
    }
    default: ts_.fail(t, t.kind == TokenKind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }
}

Term ExpressionParser::identifier_term(const Token& id) {
  if (ctx_.variables.count(id.text)) return Term::variable(id.text);
  if (ctx_.signature) {
    if (const FunctionDecl* d = ctx_.signature->function(id.text); d && d->arity > 0)
      ts_.fail(id, "arity mismatch for '" + id.text + "': declared " + std::to_string(d->arity) + ", used with 0");
    if (!ctx_.signature->constants.count(id.text) && !ctx_.signature->function(id.text)) {
      if (ctx_.strict_constants) ts_.fail(id, "unknown symbol '" + id.text + "'");
      if (ctx_.implicit_sink) {
        ctx_.implicit_sink->constants.emplace(id.text, kScalarSort);
        ctx_.implicit_sink->implicit_constants.insert(id.text);
      }
    }
  }
  return Term::constant(id.text);
}

}  // namespace detail

namespace {

using detail::ExpressionParser;
using detail::SymbolContext;
using detail::TokenStream;

const std::set<std::string>& section_names() {
  static const std::set<std::string> names{"Base_functions", "Extension_functions", "Relations", "Constants",
                                           "Clauses",        "Query",               "Stably_local"};
  return names;
}

struct Section {
  Token name;
  std::size_t begin, end;
};

std::string tuple_name(TokenStream& ts) {
  const Token& t = ts.next();
  switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::Plus:
    case TokenKind::Minus:
    case TokenKind::Star:
    case TokenKind::Slash:
    case TokenKind::Relation: return t.text;
    default: ts.fail(t, "expected a symbol name");
  }
}

unsigned tuple_number(TokenStream& ts, const char* what) {
  const Token& t = ts.expect(TokenKind::Number, what);
  return static_cast<unsigned>(std::stoul(t.text));
}

/// `{ (a, ...), (b, ...) }` with optional commas between tuples.
template <typename Fn>
void parse_tuple_set(TokenStream& ts, const Token& section, Fn&& each) {
  ts.expect(TokenKind::LBrace, "'{'");
  while (true) {
    if (ts.accept(TokenKind::RBrace)) break;
    if (ts.at_end()) ts.fail(section, "unterminated section '" + section.text + "': missing '}'");
    ts.expect(TokenKind::LParen, "'(' starting a tuple");
    each(ts);
    if (ts.peek().kind != TokenKind::RParen) {
      if (ts.at_end()) ts.fail(section, "unterminated section '" + section.text + "': missing ')'");
      ts.expect(TokenKind::RParen, "')' closing a tuple");
    }
    ts.next();
    ts.accept(TokenKind::Comma);
  }
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after '}'");
}

std::vector<Formula> parse_literals(ExpressionParser& ep) { return ep.formula_list(); }

Clause parse_clause(TokenStream& ts, SymbolContext ctx) {
  Clause c;
  if (ts.peek().kind == TokenKind::LParen && ts.peek(1).kind == TokenKind::Identifier && ts.peek(1).text == "FORALL") {
    ts.next();
    ts.next();
    do {
      const Token& v = ts.expect(TokenKind::Identifier, "clause variable");
      c.vars.push_back(Term::variable(v.text));
      ctx.variables.insert(v.text);
    } while (ts.accept(TokenKind::Comma));
    ts.expect(TokenKind::RParen, "')' after clause variables");
    ts.expect(TokenKind::Dot, "'.' after clause variables");
  }
  ExpressionParser ep(ts, ctx);
  std::vector<Formula> first = parse_literals(ep);
  if (ts.accept(TokenKind::Arrow)) {
    c.guard = std::move(first);
    c.head = parse_literals(ep);
  } else {
    c.head = std::move(first);
  }
  return c;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text, std::size_t first_line) {
  std::vector<Token> tokens = tokenize(text, first_line);
  std::vector<Section> sections;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::Identifier && tokens[i + 1].kind == TokenKind::Assign) {
      if (!section_names().count(tokens[i].text))
        throw ParseError(tokens[i].span, "unknown section '" + tokens[i].text + "'");
      if (!sections.empty()) sections.back().end = i;
      sections.push_back(Section{tokens[i], i + 2, tokens.size() - 1});
      ++i;
    } else if (sections.empty()) {
      throw ParseError(tokens[i].span, "expected a section such as 'Extension_functions :='");
    }
  }

  ProblemSpec spec;
  auto find = [&](const char* name) -> const Section* {
    const Section* found = nullptr;
    for (const auto& s : sections) {
      if (s.name.text != name) continue;
      if (found) throw ParseError(s.name.span, std::string("duplicate section '") + name + "'");
      found = &s;
    }
    return found;
  };

  if (const Section* s = find("Base_functions")) {
    TokenStream ts(tokens, s->begin, s->end);
    parse_tuple_set(ts, s->name, [&](TokenStream& t) {
      FunctionDecl d;
      d.name = tuple_name(t);
      t.expect(TokenKind::Comma, "','");
      d.arity = tuple_number(t, "arity");
      if (t.accept(TokenKind::Comma)) d.level = static_cast<int>(tuple_number(t, "level"));
      if (t.accept(TokenKind::Comma)) d.sort = t.expect(TokenKind::Identifier, "sort").text;
      static const std::set<std::string> ops{"+", "-", "*", "/"};
      if (!ops.count(d.name)) t.fail("base function '" + d.name + "' is not supported (only + - * /)");
      spec.signature.base_functions.push_back(d);
    });
  }
  if (const Section* s = find("Extension_functions")) {
    TokenStream ts(tokens, s->begin, s->end);
    parse_tuple_set(ts, s->name, [&](TokenStream& t) {
      FunctionDecl d;
      const Token& name = t.expect(TokenKind::Identifier, "function name");
      d.name = name.text;
      t.expect(TokenKind::Comma, "','");
      d.arity = tuple_number(t, "arity");
      if (!t.accept(TokenKind::Comma)) t.fail(name, "missing level for extension function '" + d.name + "'");
      d.level = static_cast<int>(tuple_number(t, "level"));
      if (d.level < 1) t.fail(name, "extension function '" + d.name + "' must have level >= 1");
      if (t.accept(TokenKind::Comma)) t.expect(TokenKind::Identifier, "sort");
      if (spec.signature.functions.count(d.name)) t.fail(name, "duplicate extension function '" + d.name + "'");
      spec.signature.functions.emplace(d.name, d);
    });
  }
  if (const Section* s = find("Relations")) {
    TokenStream ts(tokens, s->begin, s->end);
    parse_tuple_set(ts, s->name, [&](TokenStream& t) {
      std::string name = tuple_name(t);
      t.expect(TokenKind::Comma, "','");
      spec.signature.relations.emplace_back(name, tuple_number(t, "arity"));
    });
  }
  if (const Section* s = find("Constants")) {
    TokenStream ts(tokens, s->begin, s->end);
    parse_tuple_set(ts, s->name, [&](TokenStream& t) {
      const Token& name = t.expect(TokenKind::Identifier, "constant name");
      std::string sort = kScalarSort;
      if (t.accept(TokenKind::Comma)) t.expect(TokenKind::Identifier, "sort");
      if (spec.signature.functions.count(name.text))
        t.fail(name, "'" + name.text + "' is declared both as a function and as a constant");
      spec.signature.constants.emplace(name.text, sort);
    });
  }
  if (const Section* s = find("Stably_local")) {
    TokenStream ts(tokens, s->begin, s->end);
    ts.expect(TokenKind::LBrace, "'{'");
    while (!ts.accept(TokenKind::RBrace)) {
      if (ts.at_end()) ts.fail(s->name, "unterminated section 'Stably_local': missing '}'");
      spec.stably_local_levels.insert(static_cast<int>(tuple_number(ts, "level")));
      ts.accept(TokenKind::Comma);
    }
  }

  Signature& sig = spec.signature;
  SymbolContext ctx;
  ctx.signature = &sig;
  ctx.implicit_sink = &sig;

  if (const Section* s = find("Clauses")) {
    TokenStream ts(tokens, s->begin, s->end);
    while (!ts.at_end()) {
      const Token& start = ts.peek();
      Clause c = parse_clause(ts, ctx);
      if (!ts.accept(TokenKind::Semicolon)) {
        if (ts.at_end()) ts.fail(start, "unterminated clause: missing ';'");
        ts.fail("expected ';' or '-->' in clause, found '" + ts.peek().text + "'");
      }
      spec.clauses.push_back(std::move(c));
    }
  }
  if (const Section* s = find("Query")) {
    TokenStream ts(tokens, s->begin, s->end);
    while (!ts.at_end()) {
      const Token& start = ts.peek();
      ExpressionParser ep(ts, ctx);
      std::vector<Formula> lits = ep.formula_list();
      if (!ts.accept(TokenKind::Semicolon)) {
        if (ts.at_end()) ts.fail(start, "unterminated query literal: missing ';'");
        ts.fail("expected ';' after query literal, found '" + ts.peek().text + "'");
      }
      spec.query.push_back(Formula::disj(std::move(lits)));
    }
  }
  return spec;
}

Formula parse_formula(std::string_view text, const FormulaParseOptions& options) {
  std::vector<Token> tokens = tokenize(text);
  TokenStream ts(tokens, 0, tokens.size() - 1);
  SymbolContext ctx;
  ctx.signature = options.signature;
  ctx.strict_constants = options.strict_constants;
  ctx.variables.insert(options.variables.begin(), options.variables.end());
  if (options.wildcard) ctx.wildcard = *options.wildcard;
  ExpressionParser ep(ts, ctx);
  Formula f = ep.formula();
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after formula");
  if (options.wildcard) f = Formula::forall({Term::variable(*options.wildcard)}, f);
  return f;
}

std::string print_problem(const ProblemSpec& spec) {
  std::ostringstream os;
  const Signature& sig = spec.signature;
  auto join = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s;
  };
  std::vector<std::string> items;
  for (const auto& d : sig.base_functions)
    items.push_back("(" + d.name + "," + std::to_string(d.arity) + "," + std::to_string(d.level) + "," + d.sort + ")");
  os << "Base_functions := {" << join(items) << "}\n";
  items.clear();
  for (const auto& [n, d] : sig.functions)
    items.push_back("(" + n + ", " + std::to_string(d.arity) + ", " + std::to_string(d.level) + ")");
  os << "Extension_functions := {" << join(items) << "}\n";
  items.clear();
  for (const auto& [n, a] : sig.relations) items.push_back("(" + n + "," + std::to_string(a) + ")");
  os << "Relations := {" << join(items) << "}\n";
  items.clear();
  for (const auto& [n, s] : sig.constants) items.push_back("(" + n + ", " + s + ")");
  os << "Constants := {" << join(items) << "}\n";
  if (!spec.stably_local_levels.empty()) {
    items.clear();
    for (int l : spec.stably_local_levels) items.push_back(std::to_string(l));
    os << "Stably_local := {" << join(items) << "}\n";
  }
  os << "Clauses :=\n";
  for (const auto& c : spec.clauses) os << to_string(c) << "\n";
  os << "Query :=\n";
  for (const auto& q : spec.query) os << to_string(q) << ";\n";
  return os.str();
}

}  // namespace symelim
