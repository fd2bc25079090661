#include "coulomb/bracket.hpp"

#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

void BracketProduct::multiply(Monomial x, std::int64_t m) {
  if (m == 0) return;
  if (!gens_) raise(ErrorKind::GeneratorMismatch, "bracket product without generators");
  gens_->reduce(x);
  if (x.is_one()) raise(ErrorKind::NonMovable, "bracket of the trivial character");
  if (!x.is_positive()) {
    x = x.inverse();
    if (m % 2 != 0) sign_ = -sign_;
  }
  auto [it, fresh] = factors_.try_emplace(std::move(x), m);
  if (!fresh) {
    it->second += m;
    if (it->second == 0) factors_.erase(it);
  }
}

BracketProduct& BracketProduct::operator*=(const BracketProduct& o) {
  if (!gens_) gens_ = o.gens_;
  if (o.gens_) require_same(gens_, o.gens_);
  sign_ *= o.sign_;
  for (const auto& [x, m] : o.factors_) {
    auto [it, fresh] = factors_.try_emplace(x, m);
    if (!fresh) {
      it->second += m;
      if (it->second == 0) factors_.erase(it);
    }
  }
  return *this;
}

BracketProduct BracketProduct::inverse() const {
  BracketProduct r = *this;
  for (auto& [x, m] : r.factors_) m = -m;
  return r;
}

std::int64_t BracketProduct::degree() const {
  std::int64_t d = 0;
  for (const auto& [x, m] : factors_) d += m;
  return d;
}

CharacterPolynomial BracketProduct::log_character() const {
  CharacterPolynomial p(gens_);
  for (const auto& [x, m] : factors_) p.add_term(x, mpq_class(m));
  return p;
}

std::string BracketProduct::to_string() const {
  std::ostringstream os;
  if (sign_ < 0) os << "-";
  if (factors_.empty()) return os.str() + "1";
  bool first = true;
  for (const auto& [x, m] : factors_) {
    if (!first) os << ' ';
    first = false;
    os << '<' << gens_->format(x) << '>';
    if (m != -1) os << "^" << -m;
  }
  return os.str();
}

BracketProduct plethystic(const CharacterPolynomial& p) {
  if (!p.generators()) return BracketProduct();
  BracketProduct r(p.generators());
  for (const auto& [x, c] : p.terms()) {
    if (x.is_one()) raise(ErrorKind::NonMovable, "constant term " + c.get_str());
    if (c.get_den() != 1) raise(ErrorKind::MalformedCharacter, "non-integral multiplicity " + c.get_str());
    r.multiply(x, c.get_num().get_si());
  }
  return r;
}

BracketTerm normalized(BracketTerm t) {
  if (t.factors.sign() < 0) {
    t.factors.negate();
    t.coefficient = -t.coefficient;
  }
  return t;
}

}  // namespace coulomb
