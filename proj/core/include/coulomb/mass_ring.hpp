#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coulomb {

// Dense Laurent polynomial in one variable with rational coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(std::int32_t exponent, const mpq_class& c = 1);
  static LaurentPoly from_terms(const std::vector<std::pair<std::int32_t, mpq_class>>& terms);

  bool is_zero() const { return c_.empty(); }
  std::int32_t low() const { return low_; }
  std::int32_t high() const { return low_ + static_cast<std::int32_t>(c_.size()) - 1; }
  mpq_class coefficient(std::int32_t e) const;
  std::vector<std::pair<std::int32_t, mpq_class>> terms() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const mpq_class& k);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const mpq_class& k) { return a *= k; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }

  LaurentPoly shifted(std::int32_t by) const;
  LaurentPoly reflected() const;  // x -> 1/x
  LaurentPoly substituted_negative() const;  // x -> -x
  mpq_class evaluate(const mpq_class& x) const;
  // exact division by (x - 1/x)
  std::optional<LaurentPoly> divide_by_antisymmetric_unit() const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::int32_t low_ = 0;
  std::vector<mpq_class> c_;
};

// Element of Q[u, 1/u, 1/<M>] with u = M^{1/2}, <M> = u - 1/u, {M} = u + 1/u,
// stored canonically as A(<M>) + {M} B(<M>) using {M}^2 = <M>^2 + 4.
class MassRational {
 public:
  MassRational() = default;
  explicit MassRational(const mpq_class& c);
  MassRational(LaurentPoly even, LaurentPoly odd);

  static MassRational bracket_power(std::int32_t d);  // <M>^d
  static MassRational curly();                        // {M}
  static MassRational from_u(const LaurentPoly& u_poly);

  const LaurentPoly& even() const { return even_; }
  const LaurentPoly& odd() const { return odd_; }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }

  MassRational& operator+=(const MassRational& o);
  MassRational& operator-=(const MassRational& o);
  MassRational& operator*=(const MassRational& o);
  MassRational& operator*=(const mpq_class& k);
  MassRational operator-() const;
  friend MassRational operator+(MassRational a, const MassRational& b) { return a += b; }
  friend MassRational operator-(MassRational a, const MassRational& b) { return a -= b; }
  friend MassRational operator*(MassRational a, const MassRational& b) { return a *= b; }
  friend MassRational operator*(MassRational a, const mpq_class& k) { return a *= k; }
  friend bool operator==(const MassRational&, const MassRational&) = default;

  MassRational mirrored() const;  // M -> 1/M
  // Laurent polynomial in u when the value has no pole at <M> = 0
  std::optional<LaurentPoly> to_u() const;
  mpq_class evaluate(const mpq_class& u) const;

  std::string to_string() const;

 private:
  LaurentPoly even_, odd_;
};

// u-polynomial printed in M: 2*M^(3/2) - M + 4 - M^(-1/2)
std::string format_mass_polynomial(const LaurentPoly& u_poly);

}  // namespace coulomb
