#include "coulomb/toric_surface.hpp"

#include <algorithm>
#include <sstream>

#include "coulomb/error.hpp"
#include "coulomb/hash.hpp"

namespace coulomb {

namespace {

using RatMatrix = std::vector<std::vector<mpq_class>>;

// returns nullopt when singular
std::optional<RatMatrix> inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpq_class(a[i][j]);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    const mpq_class piv = m[c][c];
    for (auto& x : m[c]) x /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  RatMatrix inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

mpq_class determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mpq_class(a[i][j]);
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// basis of the rational kernel of a (rows x cols)
RatMatrix kernel(const IntMatrix& a, std::size_t cols) {
  RatMatrix m;
  for (const auto& row : a) {
    std::vector<mpq_class> r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = mpq_class(row[j]);
    m.push_back(std::move(r));
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const mpq_class piv = m[row][c];
    for (auto& x : m[row]) x /= piv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<mpq_class> z(cols);
    z[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) z[pivots[i]] = -m[i][f];
    basis.push_back(std::move(z));
  }
  return basis;
}

std::string matrix_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
  }
  os << ']';
  return os.str();
}

}  // namespace

ToricSurface ToricSurface::build(ChargeData charges, FanData fan, std::string name) {
  ToricSurface s;
  s.name_ = std::move(name);
  const std::size_t b2 = charges.surface.size();
  if (b2 == 0) raise(ErrorKind::InvalidGeometry, "empty charge matrix");
  const std::size_t n = charges.surface[0].size();
  s.n_ = n;
  if (n < 3) raise(ErrorKind::InvalidGeometry, "fewer than three toric divisors");
  if (charges.fiber.size() != b2) raise(ErrorKind::InvalidGeometry, "fiber charges need one row per Kähler class");
  for (std::size_t a = 0; a < b2; ++a) {
    if (charges.surface[a].size() != n) raise(ErrorKind::InvalidGeometry, "ragged charge matrix");
    if (charges.fiber[a].size() != 2) raise(ErrorKind::InvalidGeometry, "fiber block must have two columns");
    std::int64_t sum = charges.fiber[a][0] + charges.fiber[a][1];
    for (auto q : charges.surface[a]) sum += q;
    if (sum != 0) raise(ErrorKind::InvalidGeometry, "charge row " + std::to_string(a) + " is not Calabi-Yau");
  }
  if (n != b2 + 2) raise(ErrorKind::InvalidGeometry, "a toric surface with N divisors has Picard rank N - 2");
  if (fan.cones.size() != n) raise(ErrorKind::InvalidGeometry, "a smooth complete toric surface has N fixed points");
  if (fan.kahler.size() != b2) raise(ErrorKind::InvalidGeometry, "Kähler vector length");
  if (fan.twist > 1) raise(ErrorKind::InvalidGeometry, "twist selects fiber column 0 or 1");
  for (auto& cone : fan.cones) {
    if (cone[0] >= n || cone[1] >= n || cone[0] == cone[1])
      raise(ErrorKind::InvalidGeometry, "cone must name two distinct divisors");
    if (cone[0] > cone[1]) std::swap(cone[0], cone[1]);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v + 1; w < n; ++w)
      if (fan.cones[v] == fan.cones[w]) raise(ErrorKind::InvalidGeometry, "repeated cone");

  // torus generators q1..q_{N+2}, CY relation prod q = 1 solved for the last one
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n + 2; ++i) gens.push_back({"q" + std::to_string(i + 1), GeneratorRole::Torus});
  Relation cy{std::vector<std::int32_t>(n + 2, 1), n + 1};
  s.torus_ = std::make_shared<const GeneratorSet>(std::move(gens), std::vector<Relation>{cy});

  auto column = [&](std::size_t c) {
    IntVector col(b2);
    for (std::size_t a = 0; a < b2; ++a) col[a] = c < n ? charges.surface[a][c] : charges.fiber[a][c - n];
    return col;
  };

  for (std::size_t v = 0; v < n; ++v) {
    FixedPoint fp;
    fp.cone = fan.cones[v];
    for (std::size_t c = 0; c < n; ++c)
      if (c != fp.cone[0] && c != fp.cone[1]) fp.chart.push_back(c);
    IntMatrix a(b2, IntVector(b2));
    for (std::size_t al = 0; al < b2; ++al)
      for (std::size_t j = 0; j < b2; ++j) a[al][j] = charges.surface[al][fp.chart[j]];
    const mpq_class det = determinant(a);
    if (det == 0) raise(ErrorKind::SingularChart, "chart at fixed point " + std::to_string(v) + " is singular");
    if (abs(det) != 1)
      raise(ErrorKind::UnsupportedGeometry, "orbifold chart at fixed point " + std::to_string(v));
    const auto inv = *inverse(a);
    fp.chart_inverse.assign(b2, IntVector(b2));
    for (std::size_t i = 0; i < b2; ++i)
      for (std::size_t j = 0; j < b2; ++j) {
        if (inv[i][j].get_den() != 1) raise(ErrorKind::UnsupportedGeometry, "non-integral chart inverse");
        fp.chart_inverse[i][j] = inv[i][j].get_num().get_si();
      }
    auto weight = [&](std::size_t c) {
      const IntVector col = column(c);
      std::vector<std::int32_t> e(n + 2, 0);
      e[c] += 2;
      for (std::size_t j = 0; j < b2; ++j) {
        std::int64_t k = 0;
        for (std::size_t al = 0; al < b2; ++al) k += fp.chart_inverse[j][al] * col[al];
        e[fp.chart[j]] -= static_cast<std::int32_t>(2 * k);
      }
      return s.torus_->from_doubled(std::move(e));
    };
    fp.tangent = {weight(fp.cone[0]), weight(fp.cone[1])};
    fp.fiber = {weight(n), weight(n + 1)};
    for (const auto& t : fp.tangent)
      if (t.is_one()) raise(ErrorKind::SingularChart, "fixed point " + std::to_string(v) + " is not isolated");
    s.points_.push_back(std::move(fp));
  }

  for (std::size_t d = 0; d < n; ++d) {
    Edge e{d, {0, 0}};
    std::size_t found = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (s.points_[v].cone[0] == d || s.points_[v].cone[1] == d) {
        if (found < 2) e.vertices[found] = v;
        ++found;
      }
    if (found != 2) raise(ErrorKind::InvalidGeometry, "divisor " + std::to_string(d) + " is not a P^1 with two fixed points");
    auto along = [&](std::size_t v) {
      const auto& fp = s.points_[v];
      return fp.cone[0] == d ? fp.tangent[1] : fp.tangent[0];
    };
    if (!(along(e.vertices[0]) * along(e.vertices[1])).is_one())
      raise(ErrorKind::EdgeWeightMismatch, "tangent weights along divisor " + std::to_string(d) + " are not opposite");
    s.edges_.push_back(e);
  }

  const auto& D = fan.intersection;
  if (D.size() != n) raise(ErrorKind::InvalidGeometry, "intersection matrix size");
  for (std::size_t a = 0; a < n; ++a) {
    if (D[a].size() != n) raise(ErrorKind::InvalidGeometry, "intersection matrix size");
    for (std::size_t b = 0; b < n; ++b) {
      if (D[a][b] != D[b][a]) raise(ErrorKind::InvalidGeometry, "intersection matrix not symmetric");
      if (a == b) continue;
      bool adjacent = false;
      for (const auto& c : fan.cones)
        if ((c[0] == a && c[1] == b) || (c[0] == b && c[1] == a)) adjacent = true;
      if (D[a][b] != (adjacent ? 1 : 0))
        raise(ErrorKind::InvalidGeometry, "D_" + std::to_string(a) + ".D_" + std::to_string(b) + " disagrees with the fan");
    }
  }
  for (const auto& z : kernel(charges.surface, n))
    for (std::size_t a = 0; a < n; ++a) {
      mpq_class s_ab = 0;
      for (std::size_t b = 0; b < n; ++b) s_ab += z[b] * D[a][b];
      if (s_ab != 0) raise(ErrorKind::InvalidGeometry, "intersection numbers violate linear equivalence");
    }
  std::int64_t k2 = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) k2 += D[a][b];
  if (k2 != 12 - static_cast<std::int64_t>(n))
    raise(ErrorKind::EulerCountMismatch, "c1^2 = " + std::to_string(k2) + " but 12 - N = " + std::to_string(12 - static_cast<std::int64_t>(n)));

  s.charges_ = std::move(charges);
  s.fan_ = std::move(fan);
  return s;
}

CharacterPolynomial ToricSurface::local_P(std::size_t v) const {
  CharacterPolynomial p = CharacterPolynomial::constant(torus_, 1);
  for (const auto& w : points_.at(v).tangent) p = p - p.times(w);
  return p;
}

Monomial ToricSurface::local_Q(std::size_t v) const {
  Monomial q = torus_->one();
  for (const auto& w : points_.at(v).tangent) q *= w;
  torus_->reduce(q);
  return q;
}

std::array<Monomial, 4> ToricSurface::local_weights(std::size_t v) const {
  const auto& fp = points_.at(v);
  return {fp.tangent[0], fp.tangent[1], fp.fiber[fan_.twist], fp.fiber[1 - fan_.twist]};
}

Monomial ToricSurface::line_bundle_weight(std::size_t v, const IntVector& n) const {
  if (n.size() != n_) raise(ErrorKind::InvalidGeometry, "flux vector length");
  const auto& fp = points_.at(v);
  return fp.tangent[0].pow(n[fp.cone[0]]) * fp.tangent[1].pow(n[fp.cone[1]]);
}

std::vector<mpq_class> ToricSurface::hamiltonian(std::size_t v) const {
  const auto& fp = points_.at(v);
  std::vector<mpq_class> h(n_ + 2, 0);
  for (std::size_t j = 0; j < fp.chart.size(); ++j)
    for (std::size_t a = 0; a < fan_.kahler.size(); ++a) h[fp.chart[j]] += fan_.kahler[a] * fp.chart_inverse[j][a];
  return h;
}

Monomial ToricSurface::chart_weight(std::size_t v, const IntVector& xi) const {
  if (xi.size() != picard_rank()) raise(ErrorKind::InvalidGeometry, "flux class length");
  const auto& fp = points_.at(v);
  std::vector<std::int32_t> e(n_ + 2, 0);
  for (std::size_t j = 0; j < fp.chart.size(); ++j) {
    std::int64_t k = 0;
    for (std::size_t a = 0; a < xi.size(); ++a) k += fp.chart_inverse[j][a] * xi[a];
    e[fp.chart[j]] -= static_cast<std::int32_t>(2 * k);
  }
  return torus_->from_doubled(std::move(e));
}

CharacterPolynomial ToricSurface::chi_line_bundle(const IntVector& n, bool twisted) const {
  std::vector<LocalizedTerm> terms;
  for (std::size_t v = 0; v < points_.size(); ++v) {
    Monomial num = line_bundle_weight(v, n);
    if (twisted) num *= twist(v);
    terms.push_back({CharacterPolynomial::monomial(torus_, num),
                     {points_[v].tangent[0].inverse(), points_[v].tangent[1].inverse()}});
  }
  return localize(terms);
}

CharacterPolynomial ToricSurface::chi_prime(const IntVector& xi, bool twisted) const {
  std::vector<LocalizedTerm> terms;
  for (std::size_t v = 0; v < points_.size(); ++v) {
    Monomial num = chart_weight(v, xi);
    if (twisted) num *= twist(v);
    terms.push_back({CharacterPolynomial::monomial(torus_, num),
                     {points_[v].tangent[0].inverse(), points_[v].tangent[1].inverse()}});
  }
  return localize(terms);
}

IntVector ToricSurface::flux_class(const IntVector& n) const {
  if (n.size() != n_) raise(ErrorKind::InvalidGeometry, "flux vector length");
  IntVector xi(picard_rank(), 0);
  for (std::size_t a = 0; a < xi.size(); ++a)
    for (std::size_t c = 0; c < n_; ++c) xi[a] += charges_.surface[a][c] * n[c];
  return xi;
}

IntVector ToricSurface::flux_lift(const IntVector& xi) const {
  if (xi.size() != picard_rank()) raise(ErrorKind::InvalidGeometry, "flux class length");
  const auto& fp = points_.front();
  IntVector n(n_, 0);
  for (std::size_t j = 0; j < fp.chart.size(); ++j)
    for (std::size_t a = 0; a < xi.size(); ++a) n[fp.chart[j]] += fp.chart_inverse[j][a] * xi[a];
  return n;
}

std::int64_t ToricSurface::intersect(const IntVector& a, const IntVector& b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s += a[i] * fan_.intersection[i][j] * b[j];
  return s;
}

IntVector ToricSurface::anticanonical_class() const {
  IntVector c(picard_rank(), 0);
  for (std::size_t a = 0; a < c.size(); ++a)
    for (auto q : charges_.surface[a]) c[a] += q;
  return c;
}

std::int64_t ToricSurface::euler_characteristic(const IntVector& n) const {
  const IntVector ones(n_, 1);
  const std::int64_t twice = intersect(n, n) + intersect(n, ones);
  return 1 + twice / 2;
}

std::int64_t ToricSurface::euler_characteristic_of_class(const IntVector& xi) const {
  return euler_characteristic(flux_lift(xi));
}

std::string ToricSurface::canonical_form() const {
  std::ostringstream os;
  os << "Q=" << matrix_string(charges_.surface) << ";L=" << matrix_string(charges_.fiber) << ";cones=[";
  for (std::size_t v = 0; v < fan_.cones.size(); ++v)
    os << (v ? ";" : "") << fan_.cones[v][0] << ',' << fan_.cones[v][1];
  os << "];D=" << matrix_string(fan_.intersection) << ";t=[";
  for (std::size_t a = 0; a < fan_.kahler.size(); ++a) os << (a ? "," : "") << fan_.kahler[a].get_str();
  os << "];twist=" << fan_.twist;
  return os.str();
}

std::string ToricSurface::hash() const { return content_hash(canonical_form()); }

std::vector<std::string> preset_names() {
  return {std::string(kP2Preset), "p1xp1_O-1-1_O-1-1", "f1_O-2-1_O-1-1"};
}

std::optional<ToricSurface> preset_surface(std::string_view name) {
  if (name == kP2Preset) {
    ChargeData c{{{1, 1, 1}}, {{-2, -1}}};
    FanData f{{{1, 2}, {0, 2}, {0, 1}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {mpq_class(1)}, 0};
    return ToricSurface::build(std::move(c), std::move(f), std::string(name));
  }
  if (name == "p1xp1_O-1-1_O-1-1") {
    ChargeData c{{{1, 1, 0, 0}, {0, 0, 1, 1}}, {{-1, -1}, {-1, -1}}};
    FanData f{{{0, 2}, {0, 3}, {1, 2}, {1, 3}},
              {{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}},
              {mpq_class(1), mpq_class(1)},
              0};
    return ToricSurface::build(std::move(c), std::move(f), std::string(name));
  }
  if (name == "f1_O-2-1_O-1-1") {
    ChargeData c{{{1, 1, 1, 0}, {0, 0, 1, 1}}, {{-2, -1}, {-1, -1}}};
    FanData f{{{0, 2}, {0, 3}, {1, 2}, {1, 3}},
              {{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, -1}},
              {mpq_class(1), mpq_class(2)},
              0};
    return ToricSurface::build(std::move(c), std::move(f), std::string(name));
  }
  return std::nullopt;
}

Monomial embed(const Monomial& m, std::size_t target_size) {
  if (target_size < m.size()) raise(ErrorKind::GeneratorMismatch, "embedding into a smaller generator set");
  auto e = m.doubled();
  e.resize(target_size, 0);
  return Monomial(std::move(e));
}

CharacterPolynomial embed(const CharacterPolynomial& p, const GeneratorSetPtr& target) {
  CharacterPolynomial r(target);
  for (const auto& [m, c] : p.terms()) r.add_term(embed(m, target->size()), c);
  return r;
}

}  // namespace coulomb
