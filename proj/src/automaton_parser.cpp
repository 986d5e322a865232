#include "symelim/hybrid.hpp"

#include "token_stream.hpp"

#include <set>

namespace symelim {

using detail::ExpressionParser;
using detail::SymbolContext;
using detail::TokenStream;

namespace {

constexpr const char* kWildcard = "x";

bool is_word(const Token& t, const char* w) { return t.kind == TokenKind::Identifier && t.text == w; }

class AutomatonParser {
 public:
  explicit AutomatonParser(std::string_view text) : tokens_(tokenize(text)), ts_(tokens_, 0, tokens_.size() - 1) {}

  AutomatonFile parse() {
    AutomatonFile out;
    const Token& kind = ts_.expect(TokenKind::Identifier, "'automaton' or 'family'");
    if (kind.text == "automaton") {
      family_ = false;
    } else if (kind.text == "family") {
      family_ = true;
    } else {
      ts_.fail(kind, "expected 'automaton' or 'family', found '" + kind.text + "'");
    }
    name_ = ts_.expect(TokenKind::Identifier, "automaton name").text;
    ts_.expect(TokenKind::Semicolon, "';'");
    while (!ts_.at_end()) item();
    finish();
    if (family_) out.family = std::move(fam_);
    else out.plha = std::move(plha_);
    return out;
  }

 private:
  std::vector<std::string> identifiers() {
    std::vector<std::string> out;
    if (ts_.peek().kind == TokenKind::Semicolon) return out;
    do {
      out.push_back(ts_.expect(TokenKind::Identifier, "identifier").text);
    } while (ts_.accept(TokenKind::Comma));
    return out;
  }

  void end_item() { ts_.expect(TokenKind::Semicolon, "';'"); }

  SymbolContext context() const {
    SymbolContext ctx;
    if (family_) ctx.variables.insert(fam_.index);
    return ctx;
  }

  std::vector<Formula> formulas() {
    SymbolContext ctx = context();
    ExpressionParser ep(ts_, ctx);
    if (ts_.peek().kind == TokenKind::Semicolon) return {};
    return ep.formula_list();
  }

  // Template symbols of a family: a bare occurrence means the value at index i.
  std::set<std::string> indexed_names() const {
    std::set<std::string> out;
    auto add = [&](const std::vector<std::string>& names) {
      for (const auto& n : names) {
        out.insert(n);
        out.insert(n + "'");
      }
    };
    add(fam_.variables);
    add(fam_.inputs);
    add(fam_.links);
    add(fam_.parameter_functions);
    for (const auto& s : fam_.sensed) {
      out.insert(s.name);
      out.insert(s.name + "'");
    }
    return out;
  }

  // Deferred so that declarations may follow their first use.
  Formula instantiate_template(const Formula& f) const {
    if (!family_) return f;
    Substitution sigma;
    Term i = Term::variable(fam_.index);
    for (const auto& n : indexed_names()) sigma.emplace(Term::constant(n), Term::apply(n, {i}));
    return substitute(f, sigma);
  }

  Term instantiate_template(const Term& t) const {
    Substitution sigma;
    Term i = Term::variable(fam_.index);
    for (const auto& n : indexed_names()) sigma.emplace(Term::constant(n), Term::apply(n, {i}));
    return substitute(t, sigma);
  }

  std::vector<Formula>& list_for(Mode& m, const Token& key) {
    if (key.text == "inv") return m.inv;
    if (key.text == "flow") return m.flow;
    if (key.text == "init") return m.init;
    if (key.text == "rates") return m.rates;
    ts_.fail(key, "unknown mode section '" + key.text + "' (expected inv, flow, init or rates)");
  }

  void mode() {
    Mode m;
    m.name = ts_.expect(TokenKind::Identifier, "mode name").text;
    ts_.expect(TokenKind::LBrace, "'{'");
    while (!ts_.accept(TokenKind::RBrace)) {
      if (ts_.at_end()) ts_.fail("unterminated mode block '" + m.name + "'");
      const Token& key = ts_.expect(TokenKind::Identifier, "mode section");
      ts_.expect(TokenKind::Colon, "':'");
      auto& target = list_for(m, key);
      for (auto& f : formulas()) target.push_back(f);
      end_item();
    }
    for (const auto& other : modes_)
      if (other.name == m.name) ts_.fail("duplicate mode '" + m.name + "'");
    modes_.push_back(std::move(m));
  }

  void edge() {
    Edge e;
    e.source = ts_.expect(TokenKind::Identifier, "source mode").text;
    ts_.expect(TokenKind::Arrow, "'->'");
    e.target = ts_.expect(TokenKind::Identifier, "target mode").text;
    ts_.expect(TokenKind::LBrace, "'{'");
    while (!ts_.accept(TokenKind::RBrace)) {
      if (ts_.at_end()) ts_.fail("unterminated edge block");
      const Token& key = ts_.expect(TokenKind::Identifier, "edge section");
      ts_.expect(TokenKind::Colon, "':'");
      std::vector<Formula>* target = nullptr;
      if (key.text == "guard") target = &e.guard;
      else if (key.text == "jump") target = &e.jump;
      else ts_.fail(key, "unknown edge section '" + key.text + "' (expected guard or jump)");
      for (auto& f : formulas()) target->push_back(f);
      end_item();
    }
    edges_.push_back({std::move(e), ts_.position()});
  }

  void assumption() {
    SymbolContext ctx = context();
    ctx.wildcard = kWildcard;
    ExpressionParser ep(ts_, ctx);
    for (auto& f : ep.formula_list()) {
      bool wild = free_variables(f).count(Term::variable(kWildcard)) > 0;
      assumptions_.push_back(wild ? Formula::forall({Term::variable(kWildcard)}, f) : f);
    }
  }

  void link_clause() {
    Clause c;
    c.vars.push_back(Term::variable(fam_.index));
    std::vector<Formula> first = formulas();
    if (ts_.accept(TokenKind::Arrow)) {
      c.guard = std::move(first);
      c.head = formulas();
    } else {
      c.head = std::move(first);
    }
    links_.push_back(std::move(c));
  }

  void update() {
    TopologyUpdate u;
    u.name = ts_.expect(TokenKind::Identifier, "update name").text;
    ts_.expect(TokenKind::LBrace, "'{'");
    while (!ts_.accept(TokenKind::RBrace)) {
      if (ts_.at_end()) ts_.fail("unterminated update block '" + u.name + "'");
      const Token& key = ts_.expect(TokenKind::Identifier, "'case'");
      if (key.text != "case") ts_.fail(key, "expected 'case', found '" + key.text + "'");
      ts_.expect(TokenKind::Colon, "':'");
      UpdateCase c;
      if (ts_.peek().kind != TokenKind::Arrow) c.guard = formulas();
      ts_.expect(TokenKind::Arrow, "'-->'");
      do {
        const Token& lhs = ts_.expect(TokenKind::Identifier, "updated link");
        std::string name = lhs.text;
        if (name.size() < 2 || name.back() != '\'') ts_.fail(lhs, "updated link must be primed, e.g. front' = sidefront");
        name.pop_back();
        const Token& eq = ts_.expect(TokenKind::Relation, "'='");
        if (eq.text != "=") ts_.fail(eq, "expected '=' in link update");
        SymbolContext ctx = context();
        ExpressionParser ep(ts_, ctx);
        c.assignments.emplace_back(name, Term::from_polynomial(ep.expression()));
      } while (ts_.accept(TokenKind::Comma));
      end_item();
      u.cases.push_back(std::move(c));
    }
    fam_.updates.push_back(std::move(u));
  }

  void sensed() {
    do {
      SensedValue s;
      s.name = ts_.expect(TokenKind::Identifier, "sensed value name").text;
      const Token& eq = ts_.expect(TokenKind::Relation, "'='");
      if (eq.text != "=") ts_.fail(eq, "expected '='");
      s.variable = ts_.expect(TokenKind::Identifier, "state variable").text;
      ts_.expect(TokenKind::LParen, "'('");
      s.link = ts_.expect(TokenKind::Identifier, "link").text;
      ts_.expect(TokenKind::RParen, "')'");
      fam_.sensed.push_back(std::move(s));
    } while (ts_.accept(TokenKind::Comma));
  }

  void family_only(const Token& key) {
    if (!family_) ts_.fail(key, "'" + key.text + "' is only allowed in a family");
  }

  void item() {
    const Token& key = ts_.expect(TokenKind::Identifier, "declaration");
    if (key.text == "mode") {
      mode();
      return;
    }
    if (key.text == "edge") {
      edge();
      return;
    }
    if (key.text == "update") {
      family_only(key);
      update();
      return;
    }
    ts_.expect(TokenKind::Colon, "':'");
    if (key.text == "parameters") {
      parameters_ = identifiers();
    } else if (key.text == "functions") {
      functions_ = identifiers();
    } else if (key.text == "variables") {
      variables_ = identifiers();
    } else if (key.text == "axiom") {
      if (family_) ts_.fail(key, "'axiom' is only allowed in a single automaton");
      for (auto& f : formulas()) plha_.axioms.push_back(f);
    } else if (key.text == "assume") {
      assumption();
    } else if (key.text == "safety") {
      for (auto& f : formulas()) safety_.push_back(f);
    } else if (key.text == "index") {
      family_only(key);
      fam_.index = ts_.expect(TokenKind::Identifier, "index name").text;
      if (is_word(ts_.peek(), "from")) {
        ts_.next();
        SymbolContext ctx;
        ExpressionParser ep(ts_, ctx);
        fam_.lower = ep.expression();
        if (!is_word(ts_.peek(), "to")) ts_.fail("expected 'to' in index range");
        ts_.next();
        fam_.upper = ep.expression();
      }
    } else if (key.text == "inputs") {
      family_only(key);
      fam_.inputs = identifiers();
    } else if (key.text == "links") {
      family_only(key);
      fam_.links = identifiers();
    } else if (key.text == "sensed") {
      family_only(key);
      sensed();
    } else if (key.text == "sensing") {
      family_only(key);
      const Token& v = ts_.expect(TokenKind::Identifier, "'current' or 'measured'");
      if (v.text == "current") fam_.sensing = Sensing::Current;
      else if (v.text == "measured") fam_.sensing = Sensing::Measured;
      else ts_.fail(v, "expected 'current' or 'measured'");
    } else if (key.text == "invariants_at_end") {
      family_only(key);
      const Token& v = ts_.next();
      if (v.text != "true" && v.text != "false") ts_.fail(v, "expected true or false");
      fam_.invariants_at_end = v.text == "true";
    } else if (key.text == "flow") {
      family_only(key);
      for (auto& f : formulas()) fam_.flow.push_back(f);
    } else if (key.text == "link") {
      family_only(key);
      link_clause();
    } else {
      ts_.fail(key, "unknown declaration '" + key.text + "'");
    }
    end_item();
  }

  void check_modes(const std::vector<Mode>& modes) {
    std::set<std::string> names;
    for (const auto& m : modes) names.insert(m.name);
    for (const auto& [e, pos] : edges_) {
      if (!names.count(e.source)) throw ParseError(SourceSpan{}, "edge from unknown mode '" + e.source + "'");
      if (!names.count(e.target)) throw ParseError(SourceSpan{}, "edge to unknown mode '" + e.target + "'");
    }
  }

  void finish() {
    check_modes(modes_);
    if (!family_) {
      plha_.name = name_;
      plha_.parameters = parameters_;
      plha_.parameter_functions = functions_;
      plha_.variables = variables_;
      plha_.assumptions = assumptions_;
      plha_.modes = modes_;
      for (auto& [e, pos] : edges_) plha_.edges.push_back(e);
      plha_.safety = safety_;
      if (plha_.variables.empty()) throw ParseError(SourceSpan{}, "automaton '" + name_ + "' declares no variables");
      return;
    }
    fam_.name = name_;
    fam_.parameters = parameters_;
    fam_.parameter_functions = functions_;
    fam_.variables = variables_;
    auto inst = [&](std::vector<Formula>& fs) {
      for (auto& f : fs) f = instantiate_template(f);
    };
    fam_.assumptions = assumptions_;
    fam_.modes = modes_;
    for (auto& m : fam_.modes) {
      inst(m.inv);
      inst(m.flow);
      inst(m.init);
      inst(m.rates);
    }
    inst(fam_.flow);
    for (auto& [e, pos] : edges_) {
      inst(e.guard);
      inst(e.jump);
      fam_.edges.push_back(e);
    }
    for (auto& c : links_) {
      inst(c.guard);
      inst(c.head);
      fam_.link_clauses.push_back(c);
    }
    for (auto& u : fam_.updates)
      for (auto& c : u.cases) {
        inst(c.guard);
        for (auto& [name, target] : c.assignments) target = instantiate_template(target);
      }
    fam_.safety = safety_;
    inst(fam_.safety);
    if (fam_.variables.empty()) throw ParseError(SourceSpan{}, "family '" + name_ + "' declares no variables");
  }

  std::vector<Token> tokens_;
  TokenStream ts_;
  bool family_ = false;
  std::string name_;
  std::vector<std::string> parameters_, functions_, variables_;
  std::vector<Formula> assumptions_, safety_;
  std::vector<Mode> modes_;
  std::vector<std::pair<Edge, std::size_t>> edges_;
  std::vector<Clause> links_;
  Plha plha_;
  Family fam_;
};

}  // namespace

AutomatonFile parse_automaton(std::string_view text) { return AutomatonParser(text).parse(); }

}  // namespace symelim
