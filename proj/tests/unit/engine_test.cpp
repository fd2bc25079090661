#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "coulomb/error.hpp"
#include "support.hpp"

namespace coulomb {
namespace {

using testing::Logs;

std::vector<std::pair<Monomial, Monomial>> chain_points(const GaugeModel& m, const FluxTuple& xi) {
  const auto& g = *m.generators();
  std::vector<std::pair<Monomial, Monomial>> r;
  for (const auto& c : pole_chains(m, xi, {})) r.emplace_back(c.point(g, m.coulomb_index(1)), c.point(g, m.coulomb_index(0)));
  std::sort(r.begin(), r.end());
  return r;
}

TEST(PoleChains, ProjectivePlaneRankTwo) {
  const auto m = testing::model(2);
  const auto& g = *m->generators();
  const auto one = g.one();
  const auto q5inv = g.monomial({{"q5", -1}});
  auto q = [&](const char* name) { return g.monomial({{name, 1}}); };
  auto sorted = [](std::vector<std::pair<Monomial, Monomial>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(chain_points(*m, {{1}, {0}}), sorted({{one, q5inv}}));
  EXPECT_EQ(chain_points(*m, {{2}, {0}}),
            sorted({{one, q("q1") * q5inv}, {one, q("q2") * q5inv}, {one, q("q3") * q5inv}, {one, q("q4").inverse()}}));
  std::vector<std::pair<Monomial, Monomial>> three;
  const char* names[] = {"q1", "q2", "q3"};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) three.emplace_back(one, q(names[i]) * q(names[j]) * q5inv);
    three.emplace_back(one, q(names[i]) / q("q4"));
  }
  EXPECT_EQ(chain_points(*m, {{3}, {0}}), sorted(three));
  EXPECT_EQ(chain_points(*m, {{2}, {1}}),
            sorted({{q("q1"), q("q1") * q5inv}, {q("q2"), q("q2") * q5inv}, {q("q3"), q("q3") * q5inv}}));
  EXPECT_TRUE(chain_points(*m, {{1}, {1}}).empty());
}

TEST(PoleChains, RankOneUsesFundamentalPoles) {
  const auto m = testing::model(1);
  const auto& g = *m->generators();
  const auto chains = pole_chains(*m, {{1}}, {});
  ASSERT_EQ(chains.size(), 3u);
  std::vector<Monomial> pts;
  for (const auto& c : chains) pts.push_back(c.point(g, m->coulomb_index(0)));
  std::sort(pts.begin(), pts.end());
  std::vector<Monomial> expected = {g.monomial({{"q1", 1}}), g.monomial({{"q2", 1}}), g.monomial({{"q3", 1}})};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(pts, expected);
}

TEST(PoleChains, StrategyNames) {
  EXPECT_EQ(parse_pole_strategy("builtin"), PoleStrategy::Builtin);
  EXPECT_EQ(parse_pole_strategy("covector"), PoleStrategy::Covector);
  EXPECT_THROW(parse_pole_strategy("nearest"), Error);
}

// numeric residue in u = log a of the integrand, by the trapezoid rule on a small circle
std::complex<double> contour_residue(const BracketTerm& t, std::size_t var, const Logs& logs, std::complex<double> u0,
                                     double radius, int points) {
  std::complex<double> sum = 0;
  for (int k = 0; k < points; ++k) {
    const auto z = radius * std::exp(std::complex<double>(0, 2 * std::numbers::pi * k / points));
    Logs l = logs;
    l[var] = u0 + z;
    sum += testing::value(t, l) * z;
  }
  return sum / static_cast<double>(points);
}

TEST(Residue, AgreesWithNumericContour) {
  const auto m = testing::model(1);
  const auto& g = m->generators();
  const std::size_t a = m->coulomb_index(0);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> e(-2, 2), s(1, 2), mult(-1, 1), count(2, 4), sign(0, 1);
  int done = 0;
  while (done < 25) {
    Monomial y(g->size());
    for (std::size_t i = 0; i < g->size(); ++i)
      if (g->at(i).role != GeneratorRole::Coulomb && !g->is_eliminated(i)) y[i] = 2 * e(rng);
    const int power = (sign(rng) ? 1 : -1) * s(rng);
    Monomial x0 = y;
    x0[a] = 2 * power;
    Monomial point(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) point[i] = -y[i] / power;
    BracketProduct p(g);
    p.multiply(x0, 1);
    const int extra = count(rng);
    bool vanishing = false;
    for (int f = 0; f < extra; ++f) {
      Monomial x(g->size());
      for (std::size_t i = 0; i < g->size(); ++i)
        if (g->at(i).role != GeneratorRole::Coulomb && !g->is_eliminated(i)) x[i] = 2 * e(rng);
      x[a] = 2 * std::uniform_int_distribution<int>(-1, 1)(rng);
      if (x.is_one()) continue;
      // the extra factor must not vanish at the pole
      Monomial at = x;
      at[a] = 0;
      for (std::size_t i = 0; i < g->size(); ++i) at[i] += x[a] * point[i] / 2;
      if (at.is_one()) {
        vanishing = true;
        break;
      }
      int k = mult(rng);
      if (k == 0) k = -2;
      p.multiply(x, k);
    }
    if (vanishing) continue;
    const BracketTerm term{mpq_class(std::uniform_int_distribution<int>(1, 5)(rng)), p};
    ResidueChain chain{{{a, point}}, 1};
    const auto exact = iterated_residue(term, chain);
    ASSERT_TRUE(exact);
    Logs logs = testing::random_logs(g->size(), rng);
    std::complex<double> u0 = 0;
    for (std::size_t i = 0; i < g->size(); ++i) u0 += static_cast<double>(point[i]) * logs[i] / 2.0;
    const auto numeric = contour_residue(term, a, logs, u0, 1e-3, 128);
    const auto value = testing::value(*exact, logs);
    EXPECT_LT(std::abs(value - numeric), 1e-9 * std::abs(numeric)) << term.factors.to_string();
    ++done;
  }
}

TEST(Residue, HigherOrderPolesAreReported) {
  const auto m = testing::model(1);
  const auto& g = m->generators();
  const std::size_t a = m->coulomb_index(0);
  BracketProduct p(g);
  p.multiply(g->generator(a), 2);
  EXPECT_THROW(iterated_residue({mpq_class(1), p}, ResidueChain{{{a, g->one()}}, 1}), Error);
  BracketProduct q(g);
  q.multiply(g->generator(a), -1);
  EXPECT_FALSE(iterated_residue({mpq_class(1), q}, ResidueChain{{{a, g->one()}}, 1}));
}

TEST(Engine, BlocksFactorizeTheFixedPointResidue) {
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto m = testing::model(k);
    const std::vector<FluxTuple> fluxes =
        k == 1 ? std::vector<FluxTuple>{{{0}}, {{1}}, {{2}}} : std::vector<FluxTuple>{{{1}, {0}}, {{2}, {0}}, {{2}, {1}}};
    for (const auto& xi : fluxes)
      for (const auto& chain : pole_chains(*m, xi, {})) {
        const auto pert = partial_residue({mpq_class(1), plethystic(perturbative_character(*m, xi).movable_part())}, chain);
        std::vector<InstantonBlock> blocks;
        for (std::size_t v = 0; v < m->vertices(); ++v) blocks.push_back(instanton_block(*m, v, xi, chain, 4));
        TupleStream stream(k, m->vertices(), k == 1 ? 4 : 3);
        while (auto lambda = stream.next()) {
          std::vector<const PartialResidue*> parts{&pert};
          for (std::size_t v = 0; v < m->vertices(); ++v) {
            std::vector<YoungDiagram> d(lambda->diagrams().begin() + v * k, lambda->diagrams().begin() + (v + 1) * k);
            const auto& entries = blocks[v].by_size[lambda->vertex_size(v)];
            auto it = std::find_if(entries.begin(), entries.end(), [&](const BlockEntry& e) { return e.diagrams == d; });
            ASSERT_NE(it, entries.end());
            parts.push_back(&it->residue);
          }
          const FixedPointTerm term{xi, *lambda, chain, classical_weight(m->surface(), xi, lambda->size())};
          std::optional<BracketTerm> direct, factored;
          bool direct_failed = false, factored_failed = false;
          try {
            direct = fixed_point_residue(*m, term);
          } catch (const Error&) {
            direct_failed = true;
          }
          try {
            factored = combine_residues(parts, chain);
          } catch (const Error&) {
            factored_failed = true;
          }
          ASSERT_EQ(direct_failed, factored_failed);
          ASSERT_EQ(direct.has_value(), factored.has_value());
          if (direct) {
            const auto a = normalized(*direct), b = normalized(*factored);
            EXPECT_EQ(a.coefficient, b.coefficient);
            EXPECT_EQ(a.factors, b.factors);
          }
        }
      }
  }
}

EngineConfig limit_config(std::int64_t max_m2, std::uint32_t boxes, std::uint64_t seed = 1, std::size_t threads = 1) {
  EngineConfig c;
  c.mode = Mode::Limit;
  c.max_m2 = max_m2;
  c.max_boxes = boxes;
  c.seed = seed;
  c.threads = threads;
  return c;
}

TEST(Engine, RankOneLowOrders) {
  const auto m = testing::model(1);
  const auto t = assemble_Z(*m, limit_config(5, 2));
  auto at = [&](std::int64_t m2, std::int64_t n) { return *t.slots.at(SlotKey{{m2}, n}).limit.to_u(); };
  EXPECT_EQ(at(3, 1), testing::bracket_inverse_mass(1));
  EXPECT_EQ(at(5, 3), testing::bracket_inverse_mass(3));
  EXPECT_EQ(at(5, 2), testing::bracket_inverse_mass(2));
  EXPECT_EQ(at(5, 1), testing::bracket_inverse_mass(1) * LaurentPoly::monomial(0, 2));
  EXPECT_TRUE(t.slots.at(SlotKey{{3}, 0}).limit.is_zero());
  for (const auto& [key, slot] : t.slots) EXPECT_TRUE(slot.series.is_regular());
}

TEST(Engine, SlotOrdering) {
  EXPECT_TRUE((SlotKey{{3}, 1} < SlotKey{{3}, 0}));
  EXPECT_TRUE((SlotKey{{3}, -5} < SlotKey{{5}, 3}));
}

TEST(Engine, DirectionAndThreadIndependence) {
  const auto m = testing::model(2);
  const auto a = normalize_rank(assemble_Z(*m, limit_config(10, 2, 1, 1)), 2);
  const auto b = normalize_rank(assemble_Z(*m, limit_config(10, 2, 9, 4)), 2);
  ASSERT_EQ(a.slots.size(), b.slots.size());
  for (const auto& [key, slot] : a.slots) EXPECT_EQ(slot.limit, b.slots.at(key).limit);
  EXPECT_NE(a.direction->weights, b.direction->weights);
}

TEST(Engine, EquivariantLimitAgrees) {
  const auto m = testing::model(1);
  auto ce = limit_config(5, 1);
  ce.mode = Mode::Equivariant;
  const auto eq = assemble_Z(*m, ce);
  const auto lim = assemble_Z(*m, limit_config(5, 1, 3));
  for (const auto& [key, slot] : eq.slots) {
    LimitSeries total(-8, 0);
    for (const auto& [p, c] : slot.equivariant.terms()) total += evaluate_limit({c, p}, *lim.direction, 0);
    EXPECT_TRUE(total.is_regular());
    EXPECT_EQ(total.coefficient(0), lim.slots.at(key).limit);
  }
}

TEST(Engine, EquivariantRankTwoLeadingSlot) {
  const auto m = testing::model(2);
  auto c = limit_config(8, 0);
  c.mode = Mode::Equivariant;
  const auto t = assemble_Z(*m, c);
  const auto& g = m->generators();
  const auto M = m->mass();
  const auto q5 = g->generator(4);
  CharacterPolynomial ch(g);
  for (const char* q : {"q3", "q2", "q1"}) ch.add_term(g->monomial({{q, 1}}) * q5 * M, -1);
  ch.add_term(M, -1);
  EquivariantSum expected;
  expected.add({mpq_class(-1), plethystic(ch)});
  EXPECT_EQ(t.slots.at(SlotKey{{8}, 4}).equivariant.terms(), expected.terms());
}

TEST(Engine, NormalizationOfRankTwo) {
  CoefficientTable t;
  t.rank = 2;
  t.mode = Mode::Limit;
  SlotValue v;
  v.limit = MassRational::bracket_power(4);
  v.series = LimitSeries(0, 0);
  v.series.at(0) = v.limit;
  t.slots[SlotKey{{8}, 4}] = v;
  const auto n = normalize_rank(t, 2);
  EXPECT_EQ(n.slots.at(SlotKey{{8}, 4}).limit, MassRational(mpq_class(-1)));
  EXPECT_TRUE(n.normalized);
  const auto three = normalize_rank(t, 3);
  EXPECT_FALSE(three.warnings.empty());
}

TEST(Engine, OtherSurfacesAreRegular) {
  for (const char* name : {"p1xp1_O-1-1_O-1-1", "f1_O-2-1_O-1-1"}) {
    const auto m = testing::model(1, name);
    EngineConfig c = limit_config(5, 2);
    CoefficientTable t;
    ASSERT_NO_THROW(t = assemble_Z(*m, c)) << name;
    EXPECT_FALSE(t.slots.empty());
    for (const auto& [key, slot] : t.slots) {
      EXPECT_TRUE(slot.series.is_regular());
      EXPECT_EQ(key.m2.size(), 2u);
    }
  }
}

}  // namespace
}  // namespace coulomb
