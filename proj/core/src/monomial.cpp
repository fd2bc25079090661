#include "coulomb/monomial.hpp"

#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

bool Monomial::is_one() const {
  for (auto x : e_)
    if (x != 0) return false;
  return true;
}

bool Monomial::is_positive() const {
  for (auto x : e_)
    if (x != 0) return x > 0;
  return false;
}

Monomial& Monomial::operator*=(const Monomial& o) {
  if (o.e_.size() != e_.size()) raise(ErrorKind::GeneratorMismatch, "monomial length");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Monomial& Monomial::operator/=(const Monomial& o) {
  if (o.e_.size() != e_.size()) raise(ErrorKind::GeneratorMismatch, "monomial length");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Monomial Monomial::pow(std::int64_t k) const {
  Monomial r = *this;
  for (auto& x : r.e_) x = static_cast<std::int32_t>(x * k);
  return r;
}

Monomial Monomial::sqrt() const {
  Monomial r = *this;
  for (auto& x : r.e_) {
    if (x % 2 != 0) raise(ErrorKind::MalformedCharacter, "square root leaves the half-integer lattice");
    x /= 2;
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : e_) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
    h *= 1099511628211ull;
  }
  return h;
}

GeneratorSet::GeneratorSet(std::vector<Generator> generators, std::vector<Relation> relations)
    : gens_(std::move(generators)), rels_(std::move(relations)) {
  const std::size_t n = gens_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gens_[i].name == gens_[j].name)
        raise(ErrorKind::GeneratorMismatch, "duplicate generator " + gens_[i].name);
  for (const auto& r : rels_) {
    if (r.exponents.size() != n) raise(ErrorKind::InconsistentRelations, "relation length");
    if (r.eliminated >= n) raise(ErrorKind::InconsistentRelations, "eliminated index out of range");
  }
  // Gauss-Jordan on the relation lattice; every eliminated generator must keep a unit pivot
  for (std::size_t a = 0; a < rels_.size(); ++a) {
    auto& ra = rels_[a];
    const auto p = ra.exponents[ra.eliminated];
    if (p != 1 && p != -1)
      raise(ErrorKind::InconsistentRelations,
            "relation cannot be solved for " + gens_[ra.eliminated].name);
    for (std::size_t b = 0; b < rels_.size(); ++b) {
      if (b == a) continue;
      auto& rb = rels_[b];
      const auto c = rb.exponents[ra.eliminated];
      if (c == 0) continue;
      for (std::size_t i = 0; i < n; ++i) rb.exponents[i] -= c * p * ra.exponents[i];
    }
  }
  for (std::size_t a = 0; a < rels_.size(); ++a) {
    const auto p = rels_[a].exponents[rels_[a].eliminated];
    if (p != 1 && p != -1)
      raise(ErrorKind::InconsistentRelations, "relations are dependent");
  }
}

std::optional<std::size_t> GeneratorSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t GeneratorSet::index(std::string_view name) const {
  auto i = find(name);
  if (!i) raise(ErrorKind::GeneratorMismatch, "unknown generator " + std::string(name));
  return *i;
}

bool GeneratorSet::is_eliminated(std::size_t i) const {
  for (const auto& r : rels_)
    if (r.eliminated == i) return true;
  return false;
}

void GeneratorSet::reduce(Monomial& m) const {
  if (m.size() != gens_.size()) raise(ErrorKind::GeneratorMismatch, "monomial length");
  for (const auto& r : rels_) {
    const auto v = m[r.eliminated];
    if (v == 0) continue;
    const auto p = r.exponents[r.eliminated];
    for (std::size_t i = 0; i < gens_.size(); ++i) m[i] -= v * p * r.exponents[i];
  }
}

bool GeneratorSet::is_reduced(const Monomial& m) const {
  for (const auto& r : rels_)
    if (m[r.eliminated] != 0) return false;
  return true;
}

Monomial GeneratorSet::generator(std::size_t i, std::int32_t power) const {
  Monomial m(size());
  m[i] = 2 * power;
  reduce(m);
  return m;
}

Monomial GeneratorSet::monomial(
    std::initializer_list<std::pair<std::string_view, std::int32_t>> powers) const {
  Monomial m(size());
  for (const auto& [name, p] : powers) m[index(name)] += 2 * p;
  reduce(m);
  return m;
}

Monomial GeneratorSet::from_doubled(std::vector<std::int32_t> doubled) const {
  Monomial m(std::move(doubled));
  reduce(m);
  return m;
}

std::string GeneratorSet::format(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << gens_[i].name;
    if (m[i] == 2) continue;
    os << '^';
    if (m[i] % 2 == 0)
      os << m[i] / 2;
    else
      os << '(' << m[i] << "/2)";
  }
  if (first) os << '1';
  return os.str();
}

bool GeneratorSet::compatible(const GeneratorSet& other) const {
  if (this == &other) return true;
  if (gens_.size() != other.gens_.size() || rels_.size() != other.rels_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != other.gens_[i].name || gens_[i].role != other.gens_[i].role) return false;
  for (std::size_t a = 0; a < rels_.size(); ++a)
    if (rels_[a].exponents != other.rels_[a].exponents ||
        rels_[a].eliminated != other.rels_[a].eliminated)
      return false;
  return true;
}

void require_same(const GeneratorSetPtr& a, const GeneratorSetPtr& b) {
  if (!a || !b || !a->compatible(*b)) raise(ErrorKind::GeneratorMismatch, "different generator sets");
}

}  // namespace coulomb
