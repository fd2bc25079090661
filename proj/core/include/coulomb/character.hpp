#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/monomial.hpp"

namespace coulomb {

std::string format_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

// Finite Laurent polynomial sum c_i x^{m_i} on the doubled-exponent lattice,
// kept in relation-reduced form with no zero coefficients.
class CharacterPolynomial {
 public:
  using TermMap = std::map<Monomial, mpq_class>;

  CharacterPolynomial() = default;
  explicit CharacterPolynomial(GeneratorSetPtr gens) : gens_(std::move(gens)) {}

  static CharacterPolynomial monomial(GeneratorSetPtr gens, const Monomial& m,
                                      const mpq_class& c = 1);
  static CharacterPolynomial constant(GeneratorSetPtr gens, const mpq_class& c);

  const GeneratorSetPtr& generators() const { return gens_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  mpq_class coefficient(const Monomial& m) const;
  mpq_class constant_term() const;
  bool is_movable() const { return constant_term() == 0; }
  bool is_integral() const;
  mpq_class evaluate_at_one() const;

  void add_term(Monomial m, const mpq_class& c);

  CharacterPolynomial& operator+=(const CharacterPolynomial& o);
  CharacterPolynomial& operator-=(const CharacterPolynomial& o);
  CharacterPolynomial& operator*=(const CharacterPolynomial& o);
  CharacterPolynomial& operator*=(const mpq_class& c);
  CharacterPolynomial operator-() const;

  friend CharacterPolynomial operator+(CharacterPolynomial a, const CharacterPolynomial& b) {
    return a += b;
  }
  friend CharacterPolynomial operator-(CharacterPolynomial a, const CharacterPolynomial& b) {
    return a -= b;
  }
  friend CharacterPolynomial operator*(const CharacterPolynomial& a, const CharacterPolynomial& b);
  friend CharacterPolynomial operator*(CharacterPolynomial a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const CharacterPolynomial& a, const CharacterPolynomial& b);

  CharacterPolynomial times(const Monomial& m) const;
  CharacterPolynomial dual() const;
  CharacterPolynomial movable_part() const;  // constant term dropped
  // value must not involve var; var must not be an eliminated generator
  CharacterPolynomial substitute(std::size_t var, const Monomial& value) const;
  // Coulomb-free part / part with given exponent of one generator
  CharacterPolynomial select(std::size_t var, std::int32_t doubled_exponent) const;

  std::string to_string() const;

 private:
  GeneratorSetPtr gens_;
  TermMap terms_;
};

// N / (1 - x) when the quotient is a Laurent polynomial.
std::optional<CharacterPolynomial> divide_by_one_minus(const CharacterPolynomial& n,
                                                       const Monomial& x);

struct LocalizedTerm {
  CharacterPolynomial numerator;
  std::vector<Monomial> denominator;  // prod (1 - x)
};

// Sum of N_v / prod (1 - x) over a common denominator; throws InexactDivision
// unless the sum is a Laurent polynomial.
CharacterPolynomial localize(const std::vector<LocalizedTerm>& terms);

}  // namespace coulomb
