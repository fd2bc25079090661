#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

#include "coulomb/character.hpp"

namespace coulomb {

// sign * prod_x <x>^{-m_x} with <x> = x^{1/2} - x^{-1/2}.
// Factors are keyed by the positively oriented representative of {x, 1/x};
// <1/x> = -<x> is absorbed into the sign.
class BracketProduct {
 public:
  BracketProduct() = default;
  explicit BracketProduct(GeneratorSetPtr gens) : gens_(std::move(gens)) {}

  const GeneratorSetPtr& generators() const { return gens_; }
  const std::map<Monomial, std::int64_t>& factors() const { return factors_; }
  int sign() const { return sign_; }
  bool is_unit() const { return factors_.empty(); }

  // *= <x>^{-m}
  void multiply(Monomial x, std::int64_t m);
  void negate() { sign_ = -sign_; }

  BracketProduct& operator*=(const BracketProduct& o);
  friend BracketProduct operator*(BracketProduct a, const BracketProduct& b) { return a *= b; }
  BracketProduct inverse() const;
  friend bool operator==(const BracketProduct&, const BracketProduct&) = default;
  friend auto operator<=>(const BracketProduct& a, const BracketProduct& b) {
    if (auto c = a.sign_ <=> b.sign_; c != 0) return c;
    return a.factors_ <=> b.factors_;
  }

  // net multiplicity: positive = denominator degree
  std::int64_t degree() const;
  // sum m_x x, the inverse of plethystic up to sign
  CharacterPolynomial log_character() const;

  std::string to_string() const;

 private:
  GeneratorSetPtr gens_;
  std::map<Monomial, std::int64_t> factors_;
  int sign_ = 1;
};

// a-hat: sum m_i x_i -> prod <x_i>^{-m_i}; requires a movable integral character
BracketProduct plethystic(const CharacterPolynomial& p);

struct BracketTerm {
  mpq_class coefficient;
  BracketProduct factors;  // sign folded into coefficient when normalized
};

BracketTerm normalized(BracketTerm t);

}  // namespace coulomb
