#pragma once

#include <memory>
#include <span>
#include <vector>

#include "coulomb/bracket.hpp"
#include "coulomb/partitions.hpp"
#include "coulomb/toric_surface.hpp"

namespace coulomb {

// per gauge index, a class in the Picard lattice
using FluxTuple = std::vector<IntVector>;

// Generators q1..q_{N+2}, M, a1..ak over a surface; q_{N+2} eliminated by the CY relation.
class GaugeModel {
 public:
  GaugeModel(std::shared_ptr<const ToricSurface> surface, std::size_t rank);

  const ToricSurface& surface() const { return *surface_; }
  const std::shared_ptr<const ToricSurface>& surface_ptr() const { return surface_; }
  std::size_t rank() const { return rank_; }
  const GeneratorSetPtr& generators() const { return gens_; }
  std::size_t vertices() const { return surface_->fixed_points().size(); }

  std::size_t mass_index() const { return mass_; }
  std::size_t coulomb_index(std::size_t i) const { return mass_ + 1 + i; }
  Monomial mass() const { return gens_->generator(mass_); }
  Monomial coulomb(std::size_t i) const { return gens_->generator(coulomb_index(i)); }

  Monomial lift(const Monomial& torus_monomial) const;
  CharacterPolynomial lift(const CharacterPolynomial& torus_character) const;

  const CharacterPolynomial& P(std::size_t v) const { return P_.at(v); }
  const Monomial& Q(std::size_t v) const { return Q_.at(v); }
  const Monomial& twist(std::size_t v) const { return twist_.at(v); }
  const Monomial& tangent(std::size_t v, std::size_t mu) const { return tangent_.at(v).at(mu); }
  Monomial chart_weight(std::size_t v, const IntVector& xi) const;

  // b_i = a_i exp(-beta X_v(xi_i))
  Monomial coulomb_weight(std::size_t v, std::size_t i, const IntVector& xi_i) const;

 private:
  std::shared_ptr<const ToricSurface> surface_;
  std::size_t rank_;
  GeneratorSetPtr gens_;
  std::size_t mass_;
  std::vector<CharacterPolynomial> P_;
  std::vector<Monomial> Q_, twist_;
  std::vector<std::array<Monomial, 2>> tangent_;
};

struct VertexCharacters {
  CharacterPolynomial W, V;
};

VertexCharacters vertex_characters(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                                   std::span<const YoungDiagram> diagrams);

// W V* + Q W* V - P V V*
CharacterPolynomial t_adjoint(const GaugeModel& model, std::size_t v, const VertexCharacters& wv);
// V (M^{-1} - 1) Q
CharacterPolynomial t_fundamental(const GaugeModel& model, std::size_t v, const VertexCharacters& wv);
// (1 - q3) T_adj + T_f
CharacterPolynomial t_vertex(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                             std::span<const YoungDiagram> diagrams);

// throws UnsupportedGeometry when the twisted chi(O) has a constant term
void require_no_twisted_zero_modes(const ToricSurface& s);

// sum_v T_pert,v in the Coulomb frame a_i, closed form through chi'
CharacterPolynomial perturbative_character(const GaugeModel& model, const FluxTuple& xi);
// the same sum computed vertex by vertex over a common denominator
CharacterPolynomial perturbative_by_localization(const GaugeModel& model, const FluxTuple& xi);
// in the frame b~_i (stored in the a_i slots) from equivariant fluxes n_i
CharacterPolynomial perturbative_from_fluxes(const GaugeModel& model, const std::vector<IntVector>& n);
// b~_i -> a_i exp(-beta X_i)
CharacterPolynomial to_coulomb_frame(const GaugeModel& model, const CharacterPolynomial& p,
                                     const std::vector<IntVector>& n);

// sum_v (T_pert,v + T_v), each pert part over its own P_v*, exact division asserted
CharacterPolynomial assemble_Tp(const GaugeModel& model, const FluxTuple& xi, const VertexTuple& lambda);

// sum of coefficients of M-free monomials
std::int64_t virtual_dimension(const GaugeModel& model, const CharacterPolynomial& tp);

}  // namespace coulomb
