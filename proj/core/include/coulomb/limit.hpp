#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coulomb/bracket.hpp"
#include "coulomb/mass_ring.hpp"

namespace coulomb {

// q_a = exp(t d_a) for torus generators; M and Coulomb generators carry no weight.
struct Direction {
  std::vector<std::int64_t> weights;
  std::uint64_t seed = 0;
};

Direction draw_direction(const GeneratorSet& gens, std::uint64_t seed);

// Truncated t-Laurent series; orders below min_order are exactly zero.
class LimitSeries {
 public:
  LimitSeries() = default;
  LimitSeries(std::int32_t min_order, std::int32_t max_order);

  std::int32_t min_order() const { return min_; }
  std::int32_t max_order() const { return max_; }
  bool empty() const { return max_ < min_; }
  MassRational coefficient(std::int32_t order) const;
  MassRational& at(std::int32_t order);

  LimitSeries& operator+=(const LimitSeries& o);
  friend LimitSeries operator+(LimitSeries a, const LimitSeries& b) { return a += b; }
  friend LimitSeries operator*(const LimitSeries& a, const LimitSeries& b);
  LimitSeries& operator*=(const mpq_class& k);
  friend bool operator==(const LimitSeries& a, const LimitSeries& b);

  std::optional<std::int32_t> first_negative_nonzero() const;
  bool is_regular() const { return !first_negative_nonzero(); }

 private:
  std::int32_t min_ = 0, max_ = -1;
  std::vector<MassRational> c_;
};

// polynomial in sigma = {M}/<M>, index = power
using SigmaPoly = std::vector<mpq_class>;

// log(sinh y / y) = sum lambda_j y^j
const mpq_class& sinhc_log_coefficient(std::int32_t j);
// log(cosh y + sigma sinh y) = sum rho_j(sigma) y^j
const SigmaPoly& mass_log_coefficient(std::int32_t j);

// coefficient * prod <x>^{-m} along a direction, kept as
// prefactor * t^valuation * <M>^mass_power * exp(sum_j t^j E_j) * (direct factors)
class LimitLog {
 public:
  LimitLog() = default;
  static LimitLog from(const mpq_class& coefficient, const BracketProduct& p, const Direction& d,
                       std::int32_t order_cap);

  LimitLog& operator*=(const LimitLog& o);
  friend LimitLog operator*(LimitLog a, const LimitLog& b) { return a *= b; }

  const mpq_class& prefactor() const { return prefactor_; }
  std::int32_t valuation() const { return valuation_; }
  std::int32_t mass_power() const { return mass_power_; }
  std::int32_t order_cap() const { return cap_; }
  bool has_direct_factors() const { return !direct_.empty(); }
  bool is_zero() const { return prefactor_ == 0; }

  // exp(sum E_j t^j) coefficients F_0..F_n as sigma polynomials
  std::vector<SigmaPoly> exponential(std::int32_t n) const;
  LimitSeries series(std::int32_t max_order) const;

 private:
  struct Direct {
    std::int32_t mass_doubled;
    mpq_class slope;
    std::int64_t power;
  };
  mpq_class prefactor_ = 1;
  std::int32_t valuation_ = 0;
  std::int32_t mass_power_ = 0;
  std::int32_t cap_ = 0;
  std::vector<mpq_class> free_sums_, mass_sums_;  // index j - 1
  std::vector<Direct> direct_;
};

LimitSeries evaluate_limit(const BracketTerm& term, const Direction& d, std::int32_t max_order);

// Exact sum of many LimitLog terms, orders min_order..max_order.
class SlotAccumulator {
 public:
  SlotAccumulator(std::int32_t min_order, std::int32_t max_order);
  void add(const LimitLog& term);
  void add(const LimitSeries& s);
  SlotAccumulator& operator+=(const SlotAccumulator& o);
  LimitSeries result() const;
  std::int32_t min_order() const { return min_; }
  std::int32_t max_order() const { return max_; }

 private:
  std::int32_t min_, max_;
  // order -> <M>-power -> sigma polynomial
  std::map<std::int32_t, std::map<std::int32_t, SigmaPoly>> sigma_;
  LimitSeries general_;
};

MassRational sigma_to_mass(const SigmaPoly& p, std::int32_t bracket_power);

}  // namespace coulomb
