#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "coulomb/gauge_characters.hpp"

namespace coulomb {

// (m, n) grading: m doubled, one entry per Kähler class
struct Weight {
  IntVector m2;
  std::int64_t n = 0;
  friend bool operator==(const Weight&, const Weight&) = default;
};

// sum_i chi(O(xi_i)): the instanton number of the empty tuple
std::int64_t top_instanton_number(const ToricSurface& s, const FluxTuple& xi);
IntVector doubled_m(const ToricSurface& s, const FluxTuple& xi);
Weight classical_weight(const ToricSurface& s, const FluxTuple& xi, std::uint32_t boxes);

// sigma_i = t . xi_i nonincreasing; ties broken lexicographically so each
// unordered tuple is admitted once
struct StabilityFilter {
  std::vector<mpq_class> kahler;
  bool admits(const FluxTuple& xi) const;
};

// classes reachable as Q n with n >= 0
bool is_effective(const ToricSurface& s, const IntVector& xi);

std::vector<FluxTuple> enumerate_fluxes(const ToricSurface& s, std::size_t rank, const IntVector& m2,
                                        const StabilityFilter& filter);

std::string format_flux(const FluxTuple& xi);

}  // namespace coulomb
