#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coulomb/character.hpp"

namespace coulomb {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

// Charge matrix (Q | Lambda) of the GLSM: b2 rows, N surface columns, 2 fiber columns.
struct ChargeData {
  IntMatrix surface;
  IntMatrix fiber;
};

struct FanData {
  std::vector<std::array<std::size_t, 2>> cones;  // divisors vanishing at each fixed point
  IntMatrix intersection;                          // D_a . D_b
  std::vector<mpq_class> kahler;
  std::size_t twist = 0;  // fiber column carrying the adjoint twist
};

struct FixedPoint {
  std::array<std::size_t, 2> cone;
  std::vector<std::size_t> chart;     // non-vanishing coordinates
  IntMatrix chart_inverse;            // inverse of Q restricted to chart (b2 x b2)
  std::array<Monomial, 2> tangent;    // weights of the two vanishing coordinates
  std::array<Monomial, 2> fiber;      // weights of the fiber coordinates
};

struct Edge {
  std::size_t divisor;
  std::array<std::size_t, 2> vertices;
};

class ToricSurface {
 public:
  static ToricSurface build(ChargeData charges, FanData fan, std::string name = {});

  const std::string& name() const { return name_; }
  std::size_t divisors() const { return n_; }
  std::size_t picard_rank() const { return charges_.surface.size(); }
  const GeneratorSetPtr& torus() const { return torus_; }
  const ChargeData& charges() const { return charges_; }
  const FanData& fan() const { return fan_; }
  const std::vector<FixedPoint>& fixed_points() const { return points_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // P_v = prod (1 - q_{v,mu}), Q_v = prod q_{v,mu} over the two tangent weights
  CharacterPolynomial local_P(std::size_t v) const;
  Monomial local_Q(std::size_t v) const;
  std::array<Monomial, 4> local_weights(std::size_t v) const;
  const Monomial& twist(std::size_t v) const { return points_.at(v).fiber[fan_.twist]; }

  // q^n at v: prod over the cone of tangent weights ^ n_mu
  Monomial line_bundle_weight(std::size_t v, const IntVector& n) const;
  // exp(-beta X_v(xi)), X_v the Hamiltonian at v with t replaced by xi
  Monomial chart_weight(std::size_t v, const IntVector& xi) const;
  // coefficients of epsilon_b in H_v
  std::vector<mpq_class> hamiltonian(std::size_t v) const;

  CharacterPolynomial chi_line_bundle(const IntVector& n, bool twisted = false) const;
  CharacterPolynomial chi_prime(const IntVector& xi, bool twisted = false) const;

  IntVector flux_class(const IntVector& n) const;  // xi = Q n
  IntVector flux_lift(const IntVector& xi) const;  // some n with Q n = xi
  std::int64_t intersect(const IntVector& a, const IntVector& b) const;
  IntVector anticanonical_class() const;  // c1 in the Picard basis: sum_a Q_a
  // Riemann-Roch: 1 + (D^2 + D.c1)/2
  std::int64_t euler_characteristic(const IntVector& n) const;
  std::int64_t euler_characteristic_of_class(const IntVector& xi) const;

  std::string canonical_form() const;
  std::string hash() const;

 private:
  std::string name_;
  std::size_t n_ = 0;
  ChargeData charges_;
  FanData fan_;
  GeneratorSetPtr torus_;
  std::vector<FixedPoint> points_;
  std::vector<Edge> edges_;
};

inline constexpr std::string_view kP2Preset = "p2_O-2_O-1";

std::vector<std::string> preset_names();
std::optional<ToricSurface> preset_surface(std::string_view name);

// exponents over a smaller generator set padded with zeros
Monomial embed(const Monomial& m, std::size_t target_size);
CharacterPolynomial embed(const CharacterPolynomial& p, const GeneratorSetPtr& target);

}  // namespace coulomb
