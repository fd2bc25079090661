#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coulomb {

// Exponents are stored doubled so that square roots x^{1/2} stay integral.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : e_(n, 0) {}
  explicit Monomial(std::vector<std::int32_t> doubled) : e_(std::move(doubled)) {}

  std::size_t size() const { return e_.size(); }
  std::int32_t operator[](std::size_t i) const { return e_[i]; }
  std::int32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::int32_t>& doubled() const { return e_; }

  bool is_one() const;
  // first nonzero exponent is positive
  bool is_positive() const;

  Monomial& operator*=(const Monomial& o);
  Monomial& operator/=(const Monomial& o);
  Monomial inverse() const;
  Monomial pow(std::int64_t k) const;
  Monomial sqrt() const;  // halves doubled exponents; throws if odd

  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  friend Monomial operator/(Monomial a, const Monomial& b) { return a /= b; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.e_ <=> b.e_; }

  std::size_t hash() const;

 private:
  std::vector<std::int32_t> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class GeneratorRole { Torus, Mass, Coulomb };

struct Generator {
  std::string name;
  GeneratorRole role = GeneratorRole::Torus;
};

// prod_i g_i^{exponents[i]} = 1, solved for g_{eliminated}
struct Relation {
  std::vector<std::int32_t> exponents;
  std::size_t eliminated = 0;
};

class GeneratorSet {
 public:
  GeneratorSet(std::vector<Generator> generators, std::vector<Relation> relations = {});

  std::size_t size() const { return gens_.size(); }
  const Generator& at(std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<Relation>& relations() const { return rels_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;
  bool is_eliminated(std::size_t i) const;

  void reduce(Monomial& m) const;
  bool is_reduced(const Monomial& m) const;
  Monomial one() const { return Monomial(size()); }
  Monomial generator(std::size_t i, std::int32_t power = 1) const;
  // integer exponents by name, result reduced
  Monomial monomial(std::initializer_list<std::pair<std::string_view, std::int32_t>> powers) const;
  Monomial from_doubled(std::vector<std::int32_t> doubled) const;

  std::string format(const Monomial& m) const;
  bool compatible(const GeneratorSet& other) const;

 private:
  std::vector<Generator> gens_;
  std::vector<Relation> rels_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

void require_same(const GeneratorSetPtr& a, const GeneratorSetPtr& b);

}  // namespace coulomb

template <>
struct std::hash<coulomb::Monomial> {
  std::size_t operator()(const coulomb::Monomial& m) const { return m.hash(); }
};
