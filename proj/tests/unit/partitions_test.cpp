#include <gtest/gtest.h>

#include <set>

#include "coulomb/error.hpp"
#include "coulomb/partitions.hpp"
#include "support.hpp"

namespace coulomb {
namespace {

GeneratorSetPtr xy() { return std::make_shared<const GeneratorSet>(std::vector<Generator>{{"x"}, {"y"}}); }

// coefficients of prod_{j>=1} (1 - x^j)^{-c} up to x^n
std::vector<std::uint64_t> multipartition_counts(std::size_t c, std::size_t n) {
  std::vector<std::uint64_t> f(n + 1, 0);
  f[0] = 1;
  for (std::size_t copy = 0; copy < c; ++copy)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = j; i <= n; ++i) f[i] += f[i - j];
  return f;
}

TEST(YoungDiagram, CharacterReadsOffBoxes) {
  auto g = xy();
  const auto x = g->generator(0), y = g->generator(1);
  EXPECT_TRUE(diagram_character(YoungDiagram(), g, x, y).is_zero());
  CharacterPolynomial e = CharacterPolynomial::constant(g, 1);
  e.add_term(x, 1);
  e.add_term(y, 1);
  EXPECT_EQ(diagram_character(YoungDiagram({2, 1}), g, x, y), e);
  CharacterPolynomial f(g);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {0, 2}})
    f.add_term(x.pow(a) * y.pow(b), 1);
  EXPECT_EQ(diagram_character(YoungDiagram({4, 2, 1}), g, x, y), f);
}

TEST(YoungDiagram, CharacterAtOneIsSize) {
  auto g = xy();
  for (std::uint32_t n = 0; n <= 12; ++n)
    for (const auto& d : partitions_of(n)) {
      const auto ch = diagram_character(d, g, g->generator(0), g->generator(1));
      EXPECT_EQ(ch.evaluate_at_one(), n);
      EXPECT_EQ(ch.size(), n);
      EXPECT_EQ(d.conjugate().conjugate(), d);
      EXPECT_EQ(d.conjugate().size(), n);
    }
}

TEST(YoungDiagram, PartitionCounts) {
  const auto p = multipartition_counts(1, 15);
  for (std::uint32_t n = 0; n <= 15; ++n) {
    EXPECT_EQ(partitions_of(n).size(), p[n]);
    std::set<YoungDiagram> unique(partitions_of(n).begin(), partitions_of(n).end());
    EXPECT_EQ(unique.size(), p[n]);
  }
  EXPECT_EQ(partitions_of(3).front(), YoungDiagram({3}));
  EXPECT_EQ(partitions_of(3).back(), YoungDiagram({1, 1, 1}));
  EXPECT_THROW(YoungDiagram({1, 2}), Error);
}

TEST(Regularization, FigureExample) {
  // two rows along x, one column along y, remainder (4,2,1) at the corner x y^2
  AsymptoticPartition p{1, 2, {}};
  for (const auto& [a, b] : YoungDiagram({4, 2, 1}).boxes()) p.extra.emplace_back(a + 1, b + 2);
  const auto r = regularize(p);
  EXPECT_EQ(r.columns, 1u);
  EXPECT_EQ(r.rows, 2u);
  EXPECT_EQ(r.diagram, YoungDiagram({4, 2, 1}));
  EXPECT_EQ(regularize(AsymptoticPartition{3, 2, {}}).diagram, YoungDiagram());
}

std::set<std::pair<std::uint32_t, std::uint32_t>> boxes_in_window(const AsymptoticPartition& p, std::uint32_t L) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> s;
  for (std::uint32_t a = 0; a < L; ++a)
    for (std::uint32_t b = 0; b < L; ++b)
      if (a < p.columns || b < p.rows) s.emplace(a, b);
  for (const auto& e : p.extra) s.insert(e);
  return s;
}

// (1 - x^c y^r)/P + x^c y^r K truncated to the window
std::set<std::pair<std::uint32_t, std::uint32_t>> boxes_from_formula(const RegularizedPartition& r, std::uint32_t L) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> s;
  for (std::uint32_t a = 0; a < L; ++a)
    for (std::uint32_t b = 0; b < L; ++b)
      if (!(a >= r.columns && b >= r.rows)) s.emplace(a, b);
  for (const auto& [a, b] : r.diagram.boxes()) s.emplace(a + r.columns, b + r.rows);
  return s;
}

TEST(Regularization, ExhaustiveRoundTrip) {
  const std::uint32_t L = 16;
  std::size_t checked = 0;
  for (std::uint32_t c = 0; c <= 3; ++c)
    for (std::uint32_t r = 0; r <= 3; ++r)
      for (std::uint32_t n = 0; n <= 6; ++n)
        for (const auto& d : partitions_of(n)) {
          const RegularizedPartition reg{c, r, d};
          const auto asym = asymptotic(reg);
          EXPECT_EQ(regularize(asym), reg);
          EXPECT_EQ(boxes_in_window(asym, L), boxes_from_formula(reg, L));
          const auto back = asymptotic(regularize(asym));
          EXPECT_EQ(boxes_in_window(back, L), boxes_in_window(asym, L));
          ++checked;
        }
  EXPECT_EQ(checked, 16u * (1 + 1 + 2 + 3 + 5 + 7 + 11));
}

TEST(Regularization, RejectsInvalidStaircases) {
  EXPECT_THROW(regularize(AsymptoticPartition{1, 1, {{0, 3}}}), Error);   // inside a strip
  EXPECT_THROW(regularize(AsymptoticPartition{1, 1, {{2, 1}}}), Error);   // not down-closed
  EXPECT_THROW(regularize(AsymptoticPartition{0, 0, {{0, 0}, {0, 0}}}), Error);
}

TEST(Tuples, CountsMatchGeneratingFunction) {
  const auto f = multipartition_counts(6, 12);
  for (std::uint32_t s = 0; s <= 12; ++s) EXPECT_EQ(diagram_tuples(6, s).size(), f[s]) << s;
  const auto g = multipartition_counts(1, 2);
  std::size_t n = 0;
  TupleStream one(1, 1, 2);
  while (one.next()) ++n;
  EXPECT_EQ(n, g[0] + g[1] + g[2]);
  TupleStream two(2, 3, 1);
  n = 0;
  while (two.next()) ++n;
  EXPECT_EQ(n, 7u);
}

TEST(Tuples, StreamIsOrderedAndUnique) {
  TupleStream stream(2, 3, 4);
  std::set<VertexTuple> seen;
  std::uint32_t last = 0;
  while (auto t = stream.next()) {
    EXPECT_GE(t->size(), last);
    last = t->size();
    EXPECT_TRUE(seen.insert(*t).second);
  }
  const auto f = multipartition_counts(6, 4);
  EXPECT_EQ(seen.size(), f[0] + f[1] + f[2] + f[3] + f[4]);
  // deterministic
  TupleStream again(2, 3, 4);
  auto first = again.next();
  auto second = again.next();
  ASSERT_TRUE(first && second);
  EXPECT_EQ(first->size(), 0u);
  EXPECT_EQ(second->size(), 1u);
}

}  // namespace
}  // namespace coulomb
