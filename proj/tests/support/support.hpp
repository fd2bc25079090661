#pragma once

#include <complex>
#include <ostream>
#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

#include "coulomb/engine.hpp"

namespace coulomb {

inline void PrintTo(const Monomial& m, std::ostream* os) {
  *os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) *os << (i ? " " : "") << m[i];
  *os << "]/2";
}
inline void PrintTo(const CharacterPolynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const BracketProduct& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const MassRational& m, std::ostream* os) { *os << m.to_string(); }
inline void PrintTo(const LaurentPoly& p, std::ostream* os) { *os << p.to_string("u"); }
inline void PrintTo(const YoungDiagram& d, std::ostream* os) { *os << d.to_string(); }

}  // namespace coulomb

namespace coulomb::testing {

inline std::shared_ptr<const ToricSurface> surface(std::string_view name = kP2Preset) {
  return std::make_shared<const ToricSurface>(*preset_surface(name));
}

inline std::shared_ptr<const GaugeModel> model(std::size_t rank, std::string_view name = kP2Preset) {
  return std::make_shared<const GaugeModel>(surface(name), rank);
}

// numeric point: log of every generator; eliminated generators never occur in reduced monomials
using Logs = std::vector<std::complex<double>>;

inline Logs random_logs(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-0.9, 0.9), im(-0.6, 0.6);
  Logs l(n);
  for (auto& x : l) x = {re(rng), im(rng)};
  return l;
}

// x^{1/2}
inline std::complex<double> half_power(const Monomial& m, const Logs& logs) {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += static_cast<double>(m[i]) * logs[i] / 4.0;
  return std::exp(s);
}

inline std::complex<double> value(const Monomial& m, const Logs& logs) {
  const auto h = half_power(m, logs);
  return h * h;
}

inline std::complex<double> bracket(const Monomial& m, const Logs& logs) {
  const auto h = half_power(m, logs);
  return h - 1.0 / h;
}

inline std::complex<double> value(const BracketProduct& p, const Logs& logs) {
  std::complex<double> r = static_cast<double>(p.sign());
  for (const auto& [x, m] : p.factors()) r *= std::pow(bracket(x, logs), static_cast<double>(-m));
  return r;
}

inline std::complex<double> value(const BracketTerm& t, const Logs& logs) {
  return t.coefficient.get_d() * value(t.factors, logs);
}

inline std::complex<double> value(const CharacterPolynomial& p, const Logs& logs) {
  std::complex<double> r = 0;
  for (const auto& [m, c] : p.terms()) r += c.get_d() * value(m, logs);
  return r;
}

inline LaurentPoly u_poly(std::vector<std::pair<std::int32_t, long>> terms) {
  std::vector<std::pair<std::int32_t, mpq_class>> t;
  for (auto [e, c] : terms) t.emplace_back(e, mpq_class(c));
  return LaurentPoly::from_terms(t);
}

// <M^{-n}> = M^{-n/2} - M^{n/2}
inline LaurentPoly bracket_inverse_mass(std::int32_t n) { return u_poly({{-n, 1}, {n, -1}}); }

}  // namespace coulomb::testing
