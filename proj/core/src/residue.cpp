#include "coulomb/residue.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

Monomial ResidueChain::point(const GeneratorSet& gens, std::size_t variable) const {
  Monomial x = gens.generator(variable);
  for (const auto& s : steps) {
    const auto e = x[s.variable];
    if (e == 0) continue;
    x[s.variable] = 0;
    x *= s.value.pow(e).sqrt();
  }
  gens.reduce(x);
  return x;
}

std::string ResidueChain::to_string(const GeneratorSet& gens) const {
  std::ostringstream os;
  if (orientation < 0) os << "-";
  os << '[';
  for (std::size_t i = 0; i < steps.size(); ++i)
    os << (i ? ", " : "") << gens.at(steps[i].variable).name << '=' << gens.format(steps[i].value);
  os << ']';
  return os.str();
}

std::string_view to_string(PoleStrategy s) {
  return s == PoleStrategy::Builtin ? "builtin" : "covector";
}

PoleStrategy parse_pole_strategy(std::string_view name) {
  if (name == "builtin") return PoleStrategy::Builtin;
  if (name == "covector" || name == "jk") return PoleStrategy::Covector;
  raise(ErrorKind::UnknownStrategy, std::string(name));
}

namespace {

std::size_t coulomb_content(const GaugeModel& model, const Monomial& m, std::size_t& which) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < model.rank(); ++i)
    if (m[model.coulomb_index(i)] != 0) {
      ++count;
      which = i;
    }
  return count;
}

// a_i^s z = 1 with s = +-1 (doubled +-2) -> a_i = z^{-s}
Monomial solve_for(const Monomial& y, std::size_t var) {
  const auto e = y[var];
  if (e != 2 && e != -2) raise(ErrorKind::NonGenericCollision, "pole hyperplane with non-unit charge");
  Monomial z = y;
  z[var] = 0;
  return e == 2 ? z.inverse() : z;
}

Monomial substitute_monomial(const Monomial& m, std::size_t var, const Monomial& value) {
  Monomial x = m;
  const auto e = x[var];
  if (e == 0) return x;
  x[var] = 0;
  x *= value.pow(e).sqrt();
  return x;
}

std::vector<ResidueChain> builtin_chains(const GaugeModel& model, const FluxTuple& xi) {
  const auto pert = perturbative_character(model, xi);
  const auto& gens = *model.generators();
  // adjoint-origin part: terms carrying two Coulomb parameters
  CharacterPolynomial adjoint(model.generators());
  for (const auto& [m, c] : pert.terms()) {
    std::size_t w = 0;
    if (coulomb_content(model, m, w) >= 2) adjoint.add_term(m, c);
  }
  std::vector<ResidueChain> out;
  ResidueChain chain;
  std::function<void(std::size_t, const CharacterPolynomial&, const CharacterPolynomial&)> level =
      [&](std::size_t left, const CharacterPolynomial& full, const CharacterPolynomial& adj) {
        if (left == 0) {
          out.push_back(chain);
          return;
        }
        const std::size_t i = left - 1;
        const std::size_t var = model.coulomb_index(i);
        const bool first = left == model.rank();
        for (const auto& [y, c] : full.terms()) {
          if (c <= 0) continue;
          std::size_t w = 0;
          if (coulomb_content(model, y, w) != 1 || w != i) continue;
          if (!first && adj.coefficient(y) <= 0) continue;
          if (y[model.mass_index()] != 0) continue;
          Monomial value = solve_for(y, var);
          gens.reduce(value);
          chain.steps.push_back({var, value});
          level(left - 1, full.substitute(var, value), adj.substitute(var, value));
          chain.steps.pop_back();
        }
      };
  level(model.rank(), pert, adjoint);
  return out;
}

struct Hyperplane {
  std::vector<std::int64_t> charge;
  Monomial monomial;
};

std::vector<ResidueChain> covector_chains(const GaugeModel& model, const FluxTuple& xi,
                                          const PoleOptions& options) {
  const std::size_t k = model.rank();
  std::vector<mpq_class> eta = options.covector;
  if (eta.empty())
    for (std::size_t i = 0; i < k; ++i) eta.emplace_back(static_cast<long>(k - i));
  if (eta.size() != k) raise(ErrorKind::Config, "covector length differs from the rank");
  const auto pert = perturbative_character(model, xi);
  const auto& gens = *model.generators();
  std::vector<Hyperplane> planes;
  for (const auto& [y, c] : pert.terms()) {
    if (c <= 0) continue;
    std::vector<std::int64_t> q(k);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      const auto e = y[model.coulomb_index(i)];
      if (e % 2 != 0) raise(ErrorKind::NonGenericCollision, "half-integral Coulomb charge");
      q[i] = e / 2;
      any = any || q[i] != 0;
    }
    if (any) planes.push_back({q, y});
  }
  std::vector<ResidueChain> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (pick.size() == k) {
      // eta = sum c_j Q_j with c_j > 0
      std::vector<std::vector<mpq_class>> m(k, std::vector<mpq_class>(k + 1));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t j = 0; j < k; ++j) m[r][j] = mpq_class(planes[pick[j]].charge[r]);
        m[r][k] = eta[r];
      }
      for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m[p][c] == 0) ++p;
        if (p == k) return;  // dependent charges
        std::swap(m[p], m[c]);
        const mpq_class piv = m[c][c];
        for (auto& x : m[c]) x /= piv;
        for (std::size_t r = 0; r < k; ++r) {
          if (r == c || m[r][c] == 0) continue;
          const mpq_class f = m[r][c];
          for (std::size_t j = 0; j <= k; ++j) m[r][j] -= f * m[c][j];
        }
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (m[j][k] == 0) raise(ErrorKind::NonGenericCollision, "covector lies on a cone wall");
        if (m[j][k] < 0) return;
      }
      // triangular flag: solve one hyperplane for one free variable at a time, last variable first
      std::vector<Monomial> hyper;
      for (auto p : pick) hyper.push_back(planes[p].monomial);
      std::vector<bool> used(k, false), solved(k, false);
      ResidueChain chain;
      mpq_class slopes = 1;
      for (std::size_t step = 0; step < k; ++step) {
        bool found = false;
        for (std::size_t i = k; i-- > 0 && !found;) {
          if (solved[i]) continue;
          const std::size_t var = model.coulomb_index(i);
          for (std::size_t h = 0; h < k && !found; ++h) {
            if (used[h] || hyper[h][var] == 0) continue;
            const auto e = hyper[h][var];
            if (e != 2 && e != -2) continue;
            Monomial value = solve_for(hyper[h], var);
            gens.reduce(value);
            chain.steps.push_back({var, value});
            slopes *= e / 2;
            used[h] = solved[i] = found = true;
            for (std::size_t g = 0; g < k; ++g)
              if (!used[g]) hyper[g] = substitute_monomial(hyper[g], var, value);
          }
        }
        if (!found) raise(ErrorKind::NonGenericCollision, "no unit-charge triangulation for a pole");
      }
      chain.orientation = slopes > 0 ? 1 : -1;
      out.push_back(std::move(chain));
      return;
    }
    for (std::size_t p = from; p < planes.size(); ++p) {
      pick.push_back(p);
      choose(p + 1);
      pick.pop_back();
    }
  };
  choose(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ResidueChain> pole_chains(const GaugeModel& model, const FluxTuple& xi, const PoleOptions& options) {
  switch (options.strategy) {
    case PoleStrategy::Builtin: return builtin_chains(model, xi);
    case PoleStrategy::Covector: return covector_chains(model, xi, options);
  }
  raise(ErrorKind::UnknownStrategy, "unknown pole strategy");
}

PartialResidue partial_residue(const BracketTerm& term, const ResidueChain& chain) {
  PartialResidue r;
  r.coefficient = term.coefficient * term.factors.sign();
  const auto& gens = term.factors.generators();
  BracketProduct cur(gens);
  for (const auto& [x, m] : term.factors.factors()) cur.multiply(x, m);
  for (const auto& step : chain.steps) {
    std::int64_t order = 0, poles = 0;
    BracketProduct next(gens);
    for (const auto& [x, m] : cur.factors()) {
      const auto e = x[step.variable];
      if (e == 0) {
        next.multiply(x, m);
        continue;
      }
      Monomial y = substitute_monomial(x, step.variable, step.value);
      gens->reduce(y);
      if (!y.is_one()) {
        next.multiply(std::move(y), m);
        continue;
      }
      // <x> ~ (e/2) u near the pole
      order += m;
      if (m > 0) ++poles;
      mpq_class s(e, 2);
      s.canonicalize();
      mpq_class pw = 1;
      for (std::int64_t i = 0; i < std::abs(m); ++i) pw *= s;
      r.coefficient = m > 0 ? mpq_class(r.coefficient / pw) : mpq_class(r.coefficient * pw);
    }
    if (next.sign() < 0) {
      next.negate();
      r.coefficient = -r.coefficient;
    }
    r.orders.push_back(order);
    r.poles.push_back(poles);
    cur = std::move(next);
  }
  r.cofactor = std::move(cur);
  return r;
}

std::optional<BracketTerm> combine_residues(std::span<const PartialResidue* const> parts,
                                            const ResidueChain& chain) {
  const std::size_t steps = chain.steps.size();
  for (std::size_t j = 0; j < steps; ++j) {
    std::int64_t order = 0, poles = 0;
    for (const auto* p : parts) {
      order += p->orders[j];
      poles += p->poles[j];
    }
    if (order <= 0) return std::nullopt;
    if (order >= 2) {
      if (poles > 1)
        raise(ErrorKind::NonGenericCollision, "pole of order " + std::to_string(order) + " from " +
                                                  std::to_string(poles) + " colliding factors at step " + std::to_string(j));
      raise(ErrorKind::HigherOrderPole, "pole of order " + std::to_string(order) + " at step " + std::to_string(j));
    }
  }
  BracketTerm t{mpq_class(chain.orientation), BracketProduct()};
  for (const auto* p : parts) {
    t.coefficient *= p->coefficient;
    t.factors *= p->cofactor;
  }
  return normalized(std::move(t));
}

std::optional<BracketTerm> iterated_residue(const BracketTerm& integrand, const ResidueChain& chain) {
  const auto p = partial_residue(integrand, chain);
  const PartialResidue* parts[] = {&p};
  return combine_residues(parts, chain);
}

}  // namespace coulomb
