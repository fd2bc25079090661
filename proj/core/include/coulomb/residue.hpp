#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coulomb/flux.hpp"

namespace coulomb {

struct ResidueStep {
  std::size_t variable;  // generator index of a Coulomb parameter
  Monomial value;
  friend bool operator==(const ResidueStep&, const ResidueStep&) = default;
  friend auto operator<=>(const ResidueStep& a, const ResidueStep& b) {
    if (auto c = a.variable <=> b.variable; c != 0) return c;
    return a.value <=> b.value;
  }
};

struct ResidueChain {
  std::vector<ResidueStep> steps;
  int orientation = 1;
  friend bool operator==(const ResidueChain&, const ResidueChain&) = default;
  friend auto operator<=>(const ResidueChain& a, const ResidueChain& b) {
    if (auto c = a.steps <=> b.steps; c != 0) return c;
    return a.orientation <=> b.orientation;
  }
  // value assigned to a Coulomb generator, after all steps
  Monomial point(const GeneratorSet& gens, std::size_t variable) const;
  std::string to_string(const GeneratorSet& gens) const;
};

enum class PoleStrategy { Builtin, Covector };

std::string_view to_string(PoleStrategy s);
PoleStrategy parse_pole_strategy(std::string_view name);

struct PoleOptions {
  PoleStrategy strategy = PoleStrategy::Builtin;
  std::vector<mpq_class> covector;  // used by the covector strategy; empty = (k, ..., 1)
};

std::vector<ResidueChain> pole_chains(const GaugeModel& model, const FluxTuple& xi, const PoleOptions& options);

// Data of one factor group (perturbative part, one vertex block) along a chain.
// Orders add across groups; a step contributes a simple pole iff the total is 1.
struct PartialResidue {
  std::vector<std::int64_t> orders;
  std::vector<std::int64_t> poles;  // distinct vanishing denominators per step
  mpq_class coefficient = 1;
  BracketProduct cofactor;
};

PartialResidue partial_residue(const BracketTerm& term, const ResidueChain& chain);

// nullopt when some step has no pole (the term vanishes)
std::optional<BracketTerm> combine_residues(std::span<const PartialResidue* const> parts,
                                            const ResidueChain& chain);

std::optional<BracketTerm> iterated_residue(const BracketTerm& integrand, const ResidueChain& chain);

}  // namespace coulomb
