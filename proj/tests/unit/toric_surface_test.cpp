#include <gtest/gtest.h>

#include <random>
#include <set>

#include "coulomb/error.hpp"
#include "support.hpp"

namespace coulomb {
namespace {

struct Ray {
  std::int64_t x, y;
};

// rays in the divisor order of each preset; sum_a Q_a u_a = 0
std::vector<Ray> rays_of(std::string_view name) {
  if (name == kP2Preset) return {{1, 0}, {0, 1}, {-1, -1}};
  if (name == "p1xp1_O-1-1_O-1-1") return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  return {{1, 0}, {-1, -1}, {0, 1}, {0, -1}};
}

// Euler characteristic of O(sum n_a D_a) from the lattice-point description of
// toric cohomology: for each character m the negative rays form arcs on the
// circle of the fan, and that weight space contributes 1 - #arcs (1 if all rays).
std::int64_t lattice_euler_characteristic(const ToricSurface& s, const std::vector<Ray>& rays, const IntVector& n) {
  const std::size_t N = rays.size();
  std::vector<std::set<std::size_t>> adjacent(N);
  for (const auto& c : s.fan().cones) {
    adjacent[c[0]].insert(c[1]);
    adjacent[c[1]].insert(c[0]);
  }
  std::int64_t chi = 0;
  const std::int64_t R = 40;
  for (std::int64_t x = -R; x <= R; ++x)
    for (std::int64_t y = -R; y <= R; ++y) {
      std::vector<bool> neg(N);
      std::size_t count = 0;
      for (std::size_t a = 0; a < N; ++a) {
        neg[a] = x * rays[a].x + y * rays[a].y < -n[a];
        count += neg[a];
      }
      if (count == N) {
        chi += 1;
        continue;
      }
      std::size_t edges = 0;
      for (std::size_t a = 0; a < N; ++a)
        for (auto b : adjacent[a])
          if (a < b && neg[a] && neg[b]) ++edges;
      chi += 1 - static_cast<std::int64_t>(count - edges);  // arcs = vertices - edges on a proper subgraph
    }
  return chi;
}

std::int64_t binomial2(std::int64_t d) { return (d + 2) * (d + 1) / 2; }

TEST(ToricSurface, ProjectivePlaneFixedPoints) {
  const auto s = testing::surface();
  ASSERT_EQ(s->fixed_points().size(), 3u);
  const auto& g = *s->torus();
  // vertex 3 (divisors 0,1 vanish): tangent weights q1/q3, q2/q3
  const auto& v3 = s->fixed_points()[2];
  EXPECT_EQ(v3.tangent[0], g.monomial({{"q1", 1}, {"q3", -1}}));
  EXPECT_EQ(v3.tangent[1], g.monomial({{"q2", 1}, {"q3", -1}}));
  EXPECT_EQ(s->local_Q(2), g.monomial({{"q1", 1}, {"q2", 1}, {"q3", -2}}));
  CharacterPolynomial p = CharacterPolynomial::constant(s->torus(), 1);
  p -= CharacterPolynomial::monomial(s->torus(), v3.tangent[0]);
  p -= CharacterPolynomial::monomial(s->torus(), v3.tangent[1]);
  p += CharacterPolynomial::monomial(s->torus(), v3.tangent[0] * v3.tangent[1]);
  EXPECT_EQ(s->local_P(2), p);
  // vertex 1: fiber weights q4 q1^2 and q5 q1
  const auto& v1 = s->fixed_points()[0];
  EXPECT_EQ(v1.fiber[0], g.monomial({{"q4", 1}, {"q1", 2}}));
  EXPECT_EQ(v1.fiber[1], g.monomial({{"q5", 1}, {"q1", 1}}));
  // local CY condition: product of the four local weights is 1
  for (std::size_t v = 0; v < 3; ++v) {
    Monomial prod = g.one();
    for (const auto& w : s->local_weights(v)) prod *= w;
    g.reduce(prod);
    EXPECT_TRUE(prod.is_one());
  }
  EXPECT_EQ(s->hamiltonian(0), (std::vector<mpq_class>{1, 0, 0, 0, 0}));
}

TEST(ToricSurface, DualOfPEqualsPUpToQ) {
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    for (std::size_t v = 0; v < s->fixed_points().size(); ++v)
      EXPECT_EQ(s->local_P(v).dual().times(s->local_Q(v)), s->local_P(v)) << name << " v" << v;
  }
}

TEST(ToricSurface, EdgeWeightsAreOpposite) {
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    EXPECT_EQ(s->edges().size(), s->divisors());
    for (const auto& e : s->edges()) {
      auto weight_along = [&](std::size_t v) {
        const auto& fp = s->fixed_points()[v];
        // the edge is the curve where D_e vanishes; its tangent is the other coordinate
        return fp.cone[0] == e.divisor ? fp.tangent[1] : fp.tangent[0];
      };
      EXPECT_EQ(weight_along(e.vertices[0]), weight_along(e.vertices[1]).inverse()) << name;
    }
  }
}

TEST(ToricSurface, ChiOnProjectivePlane) {
  const auto s = testing::surface();
  const auto& g = *s->torus();
  EXPECT_EQ(s->chi_prime({0}), CharacterPolynomial::constant(s->torus(), 1));
  EXPECT_TRUE(s->chi_prime({0}, true).is_zero());
  CharacterPolynomial one(s->torus());
  for (const char* q : {"q1", "q2", "q3"}) one.add_term(g.monomial({{q, -1}}), 1);
  EXPECT_EQ(s->chi_prime({1}), one);
  EXPECT_EQ(s->chi_prime({-1}, true), CharacterPolynomial::monomial(s->torus(), g.monomial({{"q5", -1}})));
  for (std::int64_t d = -3; d <= 3; ++d) {
    const std::int64_t expected = d >= 0 ? binomial2(d) : (d >= -2 ? 0 : binomial2(-d - 3));
    EXPECT_EQ(s->chi_prime({d}).evaluate_at_one(), expected) << "O(" << d << ")";
    EXPECT_EQ(s->euler_characteristic_of_class({d}), expected);
  }
}

TEST(ToricSurface, ChiMatchesLatticePointOracle) {
  std::mt19937_64 rng(17);
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    const auto rays = rays_of(name);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
      IntVector n(s->divisors());
      std::int64_t total = 0;
      for (auto& x : n) {
        x = e(rng);
        total += std::abs(x);
      }
      if (total > 5) continue;
      const auto chi = s->chi_line_bundle(n);
      const auto oracle = lattice_euler_characteristic(*s, rays, n);
      EXPECT_EQ(chi.evaluate_at_one(), oracle) << name;
      EXPECT_EQ(s->euler_characteristic(n), oracle) << name;
      EXPECT_TRUE(chi.is_integral());
    }
  }
}

TEST(ToricSurface, RaysMatchCharges) {
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    const auto rays = rays_of(name);
    for (const auto& row : s->charges().surface) {
      std::int64_t x = 0, y = 0;
      for (std::size_t a = 0; a < rays.size(); ++a) {
        x += row[a] * rays[a].x;
        y += row[a] * rays[a].y;
      }
      EXPECT_EQ(x, 0);
      EXPECT_EQ(y, 0);
    }
  }
}

TEST(ToricSurface, LineBundleWeightSplitsAsSum) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> e(-6, 6);
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    const auto& g = *s->torus();
    for (std::size_t v = 0; v < s->fixed_points().size(); ++v)
      for (int trial = 0; trial < 100; ++trial) {
        IntVector n(s->divisors());
        for (auto& x : n) x = e(rng);
        Monomial global = g.one();
        for (std::size_t a = 0; a < n.size(); ++a) global *= g.generator(a, static_cast<std::int32_t>(n[a]));
        g.reduce(global);
        auto rhs = global * s->chart_weight(v, s->flux_class(n));
        g.reduce(rhs);
        EXPECT_EQ(s->line_bundle_weight(v, n), rhs) << name << " v" << v;
      }
  }
}

TEST(ToricSurface, FluxLiftAndRiemannRoch) {
  for (const auto& name : preset_names()) {
    const auto s = testing::surface(name);
    for (std::int64_t a = -2; a <= 2; ++a)
      for (std::int64_t b = -2; b <= 2; ++b) {
        IntVector xi = s->picard_rank() == 1 ? IntVector{a} : IntVector{a, b};
        if (s->picard_rank() == 1 && b != 0) continue;
        const auto n = s->flux_lift(xi);
        EXPECT_EQ(s->flux_class(n), xi);
        EXPECT_EQ(s->chi_prime(xi).evaluate_at_one(), s->euler_characteristic_of_class(xi)) << name;
      }
    const IntVector ones(s->divisors(), 1);
    EXPECT_EQ(s->intersect(ones, ones), 12 - static_cast<std::int64_t>(s->divisors()));
  }
}

TEST(ToricSurface, RejectsSingularChart) {
  ChargeData c{{{1, 1, 0}}, {{-1, -1}}};
  FanData f{{{1, 2}, {0, 2}, {0, 1}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {mpq_class(1)}, 0};
  try {
    ToricSurface::build(c, f);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fixed points not isolated"), std::string::npos) << e.what();
  }
}

TEST(ToricSurface, RejectsInconsistentData) {
  const auto p2 = testing::surface();
  {
    FanData f = p2->fan();
    f.intersection[0][1] = 2;
    f.intersection[1][0] = 2;
    EXPECT_THROW(ToricSurface::build(p2->charges(), f), Error);
  }
  {
    ChargeData c = p2->charges();
    c.fiber = {{-2, -2}};  // not Calabi-Yau
    EXPECT_THROW(ToricSurface::build(c, p2->fan()), Error);
  }
  {
    FanData f = p2->fan();
    f.cones.pop_back();
    EXPECT_THROW(ToricSurface::build(p2->charges(), f), Error);
  }
  {
    FanData f = p2->fan();
    f.twist = 2;
    EXPECT_THROW(ToricSurface::build(p2->charges(), f), Error);
  }
}

TEST(ToricSurface, HashTracksTwist) {
  const auto p2 = testing::surface();
  FanData f = p2->fan();
  f.twist = 1;
  const auto other = ToricSurface::build(p2->charges(), f, "p2");
  EXPECT_NE(other.hash(), p2->hash());
  EXPECT_EQ(testing::surface()->hash(), p2->hash());
}

}  // namespace
}  // namespace coulomb
