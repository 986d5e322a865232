#include "symelim/polynomial.hpp"

#include <algorithm>

namespace symelim {

Monomial::Monomial(const Term& atom) {
  if (!atom.is_atomic()) throw TermError("monomial factor must be atomic");
  factors_.emplace_back(atom, 1u);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::degree_in(const Term& atom) const {
  for (const auto& [t, e] : factors_)
    if (t == atom) return e;
  return 0;
}

Monomial Monomial::without(const Term& atom) const {
  Monomial r;
  for (const auto& f : factors_)
    if (!(f.first == atom)) r.factors_.push_back(f);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  for (std::size_t k = 0; k < std::min(fa.size(), fb.size()); ++k) {
    if (int c = compare(fa[k].first, fb[k].first)) return c;
    if (fa[k].second != fb[k].second) return fa[k].second > fb[k].second ? -1 : 1;
  }
  if (fa.size() != fb.size()) return fa.size() < fb.size() ? -1 : 1;
  return 0;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

DegreeError::DegreeError(const Term& symbol, unsigned degree)
    : std::runtime_error("symbol " + symbol.name() + " occurs with degree " + std::to_string(degree)),
      symbol_(symbol),
      degree_(degree) {}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::atom(const Term& t) {
  if (!t.is_atomic()) return t.polynomial();
  Polynomial p;
  p.add_term(Monomial(t), 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

unsigned Polynomial::degree_in(const Term& atom) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(atom));
  return d;
}

Rational Polynomial::leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

std::pair<Rational, Polynomial> Polynomial::primitive() const {
  if (terms_.empty()) return {Rational(1), *this};
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational g(num_gcd, den_lcm);
  g.canonicalize();
  Polynomial q;
  for (const auto& [m, c] : terms_) q.terms_.emplace_hint(q.terms_.end(), m, c / g);
  return {g, q};
}

std::optional<Term> Polynomial::as_atom() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (c != 1 || m.factors().size() != 1 || m.factors()[0].second != 1) return std::nullopt;
  return m.factors()[0].first;
}

std::pair<Polynomial, Polynomial> Polynomial::as_linear_in(const Term& x) const {
  Polynomial a, b;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.degree_in(x);
    if (e >= 2) throw DegreeError(x, e);
    if (e == 1)
      a.add_term(m.without(x), c);
    else
      b.add_term(m, c);
  }
  return {a, b};
}

std::set<Term> Polynomial::atoms() const {
  std::set<Term> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

Polynomial Polynomial::substitute(const Term& x, const Polynomial& value) const {
  Substitution sigma;
  sigma.emplace(x, Term::from_polynomial(value));
  return substitute(sigma);
}

Polynomial Polynomial::substitute(const Substitution& sigma) const {
  if (sigma.empty()) return *this;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial prod = constant(c);
    for (const auto& [t, e] : m.factors()) prod = prod * pow(symelim::substitute(t, sigma).to_polynomial(), e);
    out += prod;
  }
  return out;
}

Rational Polynomial::evaluate(const Valuation& v) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (const auto& [t, e] : m.factors()) {
      auto it = v.find(t);
      if (it == v.end()) throw TermError("no value for " + t.name());
      for (unsigned k = 0; k < e; ++k) prod *= it->second;
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::partial_evaluate(const Valuation& v) const {
  Substitution sigma;
  for (const auto& [t, q] : v) sigma.emplace(t, Term::number(q));
  return substitute(sigma);
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, k] : terms_) k *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

int compare(const Polynomial& a, const Polynomial& b) {
  auto i = a.terms().begin(), j = b.terms().begin();
  for (; i != a.terms().end() && j != b.terms().end(); ++i, ++j) {
    if (int c = compare(i->first, j->first)) return c;
    if (i->second != j->second) return i->second < j->second ? -1 : 1;
  }
  if (i != a.terms().end()) return 1;
  if (j != b.terms().end()) return -1;
  return 0;
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial r = Polynomial::constant(1);
  for (unsigned k = 0; k < e; ++k) r = r * p;
  return r;
}

}  // namespace symelim
