#include "coulomb/character.hpp"

#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) raise(ErrorKind::MalformedCharacter, "bad rational '" + text + "'");
  if (q.get_den() == 0) raise(ErrorKind::MalformedCharacter, "zero denominator");
  q.canonicalize();
  return q;
}

CharacterPolynomial CharacterPolynomial::monomial(GeneratorSetPtr gens, const Monomial& m,
                                                  const mpq_class& c) {
  CharacterPolynomial p(std::move(gens));
  p.add_term(m, c);
  return p;
}

CharacterPolynomial CharacterPolynomial::constant(GeneratorSetPtr gens, const mpq_class& c) {
  CharacterPolynomial p(gens);
  p.add_term(gens->one(), c);
  return p;
}

mpq_class CharacterPolynomial::coefficient(const Monomial& m) const {
  Monomial r = m;
  gens_->reduce(r);
  auto it = terms_.find(r);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class CharacterPolynomial::constant_term() const {
  if (!gens_) return 0;
  auto it = terms_.find(gens_->one());
  return it == terms_.end() ? mpq_class(0) : it->second;
}

bool CharacterPolynomial::is_integral() const {
  for (const auto& [m, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

mpq_class CharacterPolynomial::evaluate_at_one() const {
  mpq_class s = 0;
  for (const auto& [m, c] : terms_) s += c;
  return s;
}

void CharacterPolynomial::add_term(Monomial m, const mpq_class& c) {
  if (!gens_) raise(ErrorKind::GeneratorMismatch, "character without generators");
  if (c == 0) return;
  gens_->reduce(m);
  auto [it, fresh] = terms_.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CharacterPolynomial& CharacterPolynomial::operator+=(const CharacterPolynomial& o) {
  if (o.is_zero()) return *this;
  if (!gens_) gens_ = o.gens_;
  require_same(gens_, o.gens_);
  for (const auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

CharacterPolynomial& CharacterPolynomial::operator-=(const CharacterPolynomial& o) {
  if (o.is_zero()) return *this;
  if (!gens_) gens_ = o.gens_;
  require_same(gens_, o.gens_);
  for (const auto& [m, c] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(m, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

CharacterPolynomial operator*(const CharacterPolynomial& a, const CharacterPolynomial& b) {
  if (a.is_zero()) return CharacterPolynomial(a.gens_ ? a.gens_ : b.gens_);
  if (b.is_zero()) return CharacterPolynomial(a.gens_);
  require_same(a.gens_, b.gens_);
  CharacterPolynomial r(a.gens_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, fresh] = r.terms_.try_emplace(ma * mb, ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

CharacterPolynomial& CharacterPolynomial::operator*=(const CharacterPolynomial& o) {
  *this = *this * o;
  return *this;
}

CharacterPolynomial& CharacterPolynomial::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

CharacterPolynomial CharacterPolynomial::operator-() const {
  CharacterPolynomial r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const CharacterPolynomial& a, const CharacterPolynomial& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (!a.gens_ || !b.gens_ || !a.gens_->compatible(*b.gens_)) return false;
  return a.terms_ == b.terms_;
}

CharacterPolynomial CharacterPolynomial::times(const Monomial& x) const {
  CharacterPolynomial r(gens_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * x, c);
  // multiplication by a monomial is order preserving, but reduce in case x is not reduced
  if (!gens_->is_reduced(x)) {
    CharacterPolynomial s(gens_);
    for (const auto& [m, c] : r.terms_) s.add_term(m, c);
    return s;
  }
  return r;
}

CharacterPolynomial CharacterPolynomial::movable_part() const {
  CharacterPolynomial r = *this;
  if (gens_) r.terms_.erase(gens_->one());
  return r;
}

CharacterPolynomial CharacterPolynomial::dual() const {
  CharacterPolynomial r(gens_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m.inverse(), c);
  return r;
}

CharacterPolynomial CharacterPolynomial::substitute(std::size_t var, const Monomial& value) const {
  if (var >= gens_->size()) raise(ErrorKind::GeneratorMismatch, "substitution variable");
  if (gens_->is_eliminated(var))
    raise(ErrorKind::InconsistentRelations,
          "cannot substitute eliminated generator " + gens_->at(var).name);
  if (value[var] != 0) raise(ErrorKind::MalformedCharacter, "substituted value involves the variable");
  CharacterPolynomial r(gens_);
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    const auto e = n[var];
    n[var] = 0;
    if (e != 0) n *= value.pow(e).sqrt();
    r.add_term(std::move(n), c);
  }
  return r;
}

CharacterPolynomial CharacterPolynomial::select(std::size_t var, std::int32_t doubled_exponent) const {
  CharacterPolynomial r(gens_);
  for (const auto& [m, c] : terms_)
    if (m[var] == doubled_exponent) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

std::string CharacterPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (m.is_one()) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << gens_->format(m);
  }
  return os.str();
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::optional<CharacterPolynomial> divide_by_one_minus(const CharacterPolynomial& n,
                                                       const Monomial& x_in) {
  if (n.is_zero()) return n;
  const auto& gens = n.generators();
  Monomial x = x_in;
  gens->reduce(x);
  if (x.is_one()) raise(ErrorKind::InexactDivision, "division by 1 - 1");
  std::size_t pivot = 0;
  while (x[pivot] == 0) ++pivot;
  const std::int64_t xp = x[pivot];
  // each coset rep + Z*x is a chain; N_k -> Q_k = sum_{j<=k} N_j, exact iff the chain sums to 0
  std::map<Monomial, std::map<std::int64_t, mpq_class>> chains;
  for (const auto& [m, c] : n.terms()) {
    const std::int64_t k = floor_div(m[pivot], xp);
    Monomial rep = m / x.pow(k);
    chains[std::move(rep)][k] += c;
  }
  CharacterPolynomial q(gens);
  for (const auto& [rep, chain] : chains) {
    mpq_class run = 0;
    std::int64_t prev = chain.begin()->first;
    for (const auto& [k, c] : chain) {
      if (run != 0)
        for (std::int64_t j = prev; j < k; ++j) q.add_term(rep * x.pow(j), run);
      run += c;
      prev = k;
    }
    if (run != 0) return std::nullopt;
  }
  return q;
}

CharacterPolynomial localize(const std::vector<LocalizedTerm>& terms) {
  if (terms.empty()) raise(ErrorKind::MalformedCharacter, "empty localization sum");
  GeneratorSetPtr gens;
  for (const auto& t : terms)
    if (t.numerator.generators()) gens = t.numerator.generators();
  if (!gens) raise(ErrorKind::MalformedCharacter, "localization sum without generators");
  // canonical binomials 1 - y with y positive: 1/(1-x) = -x^{-1}/(1-x^{-1})
  struct Canon {
    CharacterPolynomial numerator;
    std::map<Monomial, int> denominator;
  };
  std::vector<Canon> canon;
  std::map<Monomial, int> lcm;
  for (const auto& t : terms) {
    Canon c{t.numerator.is_zero() ? CharacterPolynomial(gens) : t.numerator, {}};
    for (Monomial x : t.denominator) {
      gens->reduce(x);
      if (x.is_one()) raise(ErrorKind::InexactDivision, "localization denominator vanishes");
      if (!x.is_positive()) {
        c.numerator = -c.numerator.times(x.inverse());
        x = x.inverse();
      }
      ++c.denominator[x];
    }
    for (const auto& [y, k] : c.denominator) lcm[y] = std::max(lcm[y], k);
    canon.push_back(std::move(c));
  }
  CharacterPolynomial total(gens);
  for (auto& c : canon) {
    CharacterPolynomial num = c.numerator;
    for (const auto& [y, k] : lcm) {
      auto it = c.denominator.find(y);
      const int have = it == c.denominator.end() ? 0 : it->second;
      for (int i = have; i < k; ++i) num = num - num.times(y);
    }
    total += num;
  }
  for (const auto& [y, k] : lcm)
    for (int i = 0; i < k; ++i) {
      auto q = divide_by_one_minus(total, y);
      if (!q)
        raise(ErrorKind::InexactDivision,
              "localization sum leaves a remainder at 1 - " + gens->format(y));
      total = std::move(*q);
    }
  return total;
}

}  // namespace coulomb
