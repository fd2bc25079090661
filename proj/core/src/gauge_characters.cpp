#include "coulomb/gauge_characters.hpp"

#include "coulomb/error.hpp"

namespace coulomb {

GaugeModel::GaugeModel(std::shared_ptr<const ToricSurface> surface, std::size_t rank)
    : surface_(std::move(surface)), rank_(rank) {
  if (!surface_) raise(ErrorKind::InvalidGeometry, "no surface");
  if (rank_ == 0) raise(ErrorKind::Config, "rank must be positive");
  const auto& torus = *surface_->torus();
  std::vector<Generator> gens = torus.generators();
  mass_ = gens.size();
  gens.push_back({"M", GeneratorRole::Mass});
  for (std::size_t i = 0; i < rank_; ++i) gens.push_back({"a" + std::to_string(i + 1), GeneratorRole::Coulomb});
  std::vector<Relation> rels;
  for (auto r : torus.relations()) {
    r.exponents.resize(gens.size(), 0);
    rels.push_back(std::move(r));
  }
  gens_ = std::make_shared<const GeneratorSet>(std::move(gens), std::move(rels));
  for (std::size_t v = 0; v < surface_->fixed_points().size(); ++v) {
    P_.push_back(lift(surface_->local_P(v)));
    Q_.push_back(lift(surface_->local_Q(v)));
    twist_.push_back(lift(surface_->twist(v)));
    const auto& fp = surface_->fixed_points()[v];
    tangent_.push_back({lift(fp.tangent[0]), lift(fp.tangent[1])});
  }
}

Monomial GaugeModel::lift(const Monomial& m) const { return embed(m, gens_->size()); }

CharacterPolynomial GaugeModel::lift(const CharacterPolynomial& p) const { return embed(p, gens_); }

Monomial GaugeModel::chart_weight(std::size_t v, const IntVector& xi) const {
  return lift(surface_->chart_weight(v, xi));
}

Monomial GaugeModel::coulomb_weight(std::size_t v, std::size_t i, const IntVector& xi_i) const {
  return coulomb(i) * chart_weight(v, xi_i);
}

VertexCharacters vertex_characters(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                                   std::span<const YoungDiagram> diagrams) {
  if (xi.size() != model.rank() || diagrams.size() != model.rank())
    raise(ErrorKind::Config, "flux/diagram count differs from the rank");
  const auto& gens = model.generators();
  VertexCharacters r{CharacterPolynomial(gens), CharacterPolynomial(gens)};
  for (std::size_t i = 0; i < model.rank(); ++i) {
    const Monomial b = model.coulomb_weight(v, i, xi[i]);
    r.W.add_term(b, 1);
    if (!diagrams[i].empty())
      r.V += diagram_character(diagrams[i], gens, model.tangent(v, 0), model.tangent(v, 1)).times(b);
  }
  return r;
}

CharacterPolynomial t_adjoint(const GaugeModel& model, std::size_t v, const VertexCharacters& wv) {
  if (wv.V.is_zero()) return CharacterPolynomial(model.generators());
  const auto vd = wv.V.dual();
  return wv.W * vd + (wv.W.dual() * wv.V).times(model.Q(v)) - model.P(v) * (wv.V * vd);
}

CharacterPolynomial t_fundamental(const GaugeModel& model, std::size_t v, const VertexCharacters& wv) {
  return wv.V.times(model.Q(v) * model.mass().inverse()) - wv.V.times(model.Q(v));
}

CharacterPolynomial t_vertex(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                             std::span<const YoungDiagram> diagrams) {
  const auto wv = vertex_characters(model, v, xi, diagrams);
  if (wv.V.is_zero()) return CharacterPolynomial(model.generators());
  const auto adj = t_adjoint(model, v, wv);
  return adj - adj.times(model.twist(v)) + t_fundamental(model, v, wv);
}

namespace {

IntVector difference(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

CharacterPolynomial one_minus_dual_mass(const GaugeModel& model) {
  auto r = CharacterPolynomial::constant(model.generators(), 1);
  r.add_term(model.mass().inverse(), -1);
  return r;
}

}  // namespace

void require_no_twisted_zero_modes(const ToricSurface& s) {
  if (s.chi_prime(IntVector(s.picard_rank(), 0), true).constant_term() != 0)
    raise(ErrorKind::UnsupportedGeometry, "twisted chi(0) has a constant term: adjoint zero modes");
}

CharacterPolynomial perturbative_character(const GaugeModel& model, const FluxTuple& xi) {
  const auto& s = model.surface();
  const auto& gens = model.generators();
  require_no_twisted_zero_modes(s);
  CharacterPolynomial r(gens);
  const auto fund = one_minus_dual_mass(model);
  for (std::size_t i = 0; i < model.rank(); ++i)
    r += (model.lift(s.chi_prime(xi[i])) * fund).times(model.coulomb(i));
  for (std::size_t i = 0; i < model.rank(); ++i)
    for (std::size_t j = 0; j < model.rank(); ++j) {
      const auto d = difference(xi[i], xi[j]);
      const auto adj = model.lift(s.chi_prime(d) - s.chi_prime(d, true));
      r -= adj.times(model.coulomb(i) * model.coulomb(j).inverse());
    }
  return r;
}

CharacterPolynomial perturbative_by_localization(const GaugeModel& model, const FluxTuple& xi) {
  std::vector<LocalizedTerm> terms;
  const auto fund = one_minus_dual_mass(model);
  const std::vector<YoungDiagram> empty(model.rank());
  for (std::size_t v = 0; v < model.vertices(); ++v) {
    const auto w = vertex_characters(model, v, xi, empty).W;
    const auto ww = w * w.dual();
    terms.push_back({w * fund - ww + ww.times(model.twist(v)),
                     {model.tangent(v, 0).inverse(), model.tangent(v, 1).inverse()}});
  }
  return localize(terms);
}

CharacterPolynomial perturbative_from_fluxes(const GaugeModel& model, const std::vector<IntVector>& n) {
  const auto& s = model.surface();
  CharacterPolynomial r(model.generators());
  const auto fund = one_minus_dual_mass(model);
  for (std::size_t i = 0; i < model.rank(); ++i)
    r += (model.lift(s.chi_line_bundle(n[i])) * fund).times(model.coulomb(i));
  for (std::size_t i = 0; i < model.rank(); ++i)
    for (std::size_t j = 0; j < model.rank(); ++j) {
      const auto d = difference(n[i], n[j]);
      const auto adj = model.lift(s.chi_line_bundle(d) - s.chi_line_bundle(d, true));
      r -= adj.times(model.coulomb(i) * model.coulomb(j).inverse());
    }
  return r;
}

CharacterPolynomial to_coulomb_frame(const GaugeModel& model, const CharacterPolynomial& p,
                                     const std::vector<IntVector>& n) {
  const auto& torus = *model.surface().torus();
  std::vector<Monomial> shift;
  for (std::size_t i = 0; i < model.rank(); ++i) {
    Monomial s = model.generators()->one();
    for (std::size_t e = 0; e < n[i].size(); ++e)
      s *= model.lift(torus.generator(e, static_cast<std::int32_t>(-n[i][e])));
    shift.push_back(std::move(s));
  }
  CharacterPolynomial r(model.generators());
  for (const auto& [m, c] : p.terms()) {
    Monomial x = m;
    for (std::size_t i = 0; i < model.rank(); ++i)
      if (const auto e = m[model.coulomb_index(i)]; e != 0) x *= shift[i].pow(e).sqrt();
    r.add_term(std::move(x), c);
  }
  return r;
}

CharacterPolynomial assemble_Tp(const GaugeModel& model, const FluxTuple& xi, const VertexTuple& lambda) {
  std::vector<LocalizedTerm> terms;
  const auto fund = one_minus_dual_mass(model);
  for (std::size_t v = 0; v < model.vertices(); ++v) {
    std::span<const YoungDiagram> d(lambda.diagrams().data() + v * model.rank(), model.rank());
    const auto wv = vertex_characters(model, v, xi, d);
    const auto ww = wv.W * wv.W.dual();
    CharacterPolynomial num = wv.W * fund - ww + ww.times(model.twist(v));
    // T_v times P_v* joins the same fraction
    CharacterPolynomial pstar = CharacterPolynomial::constant(model.generators(), 1);
    for (std::size_t mu = 0; mu < 2; ++mu) pstar = pstar - pstar.times(model.tangent(v, mu).inverse());
    num += t_vertex(model, v, xi, d) * pstar;
    terms.push_back({num, {model.tangent(v, 0).inverse(), model.tangent(v, 1).inverse()}});
  }
  return localize(terms);
}

std::int64_t virtual_dimension(const GaugeModel& model, const CharacterPolynomial& tp) {
  mpq_class s = 0;
  for (const auto& [m, c] : tp.terms())
    if (m[model.mass_index()] == 0) s += c;
  if (s.get_den() != 1) raise(ErrorKind::AssemblyCheck, "fractional virtual dimension");
  return s.get_num().get_si();
}

}  // namespace coulomb
