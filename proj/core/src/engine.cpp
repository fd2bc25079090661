#include "coulomb/engine.hpp"

#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "coulomb/error.hpp"
#include "coulomb/term_cache.hpp"

namespace coulomb {

std::string_view to_string(Mode m) { return m == Mode::Limit ? "limit" : "equivariant"; }

Mode parse_mode(std::string_view name) {
  if (name == "limit") return Mode::Limit;
  if (name == "equivariant") return Mode::Equivariant;
  raise(ErrorKind::Config, "unknown mode '" + std::string(name) + "'");
}

bool operator<(const SlotKey& a, const SlotKey& b) {
  if (a.m2 != b.m2) return a.m2 < b.m2;
  return a.n > b.n;
}

void EquivariantSum::add(const BracketTerm& t) {
  if (t.coefficient == 0) return;
  BracketTerm n = normalized(t);
  auto [it, fresh] = terms_.try_emplace(n.factors, n.coefficient);
  if (!fresh) {
    it->second += n.coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

EquivariantSum& EquivariantSum::operator+=(const EquivariantSum& o) {
  for (const auto& [p, c] : o.terms_) add({c, p});
  return *this;
}

void EquivariantSum::multiply(const mpq_class& c, const BracketProduct& p) {
  std::map<BracketProduct, mpq_class> old;
  old.swap(terms_);
  for (const auto& [q, d] : old) add({c * d, q * p});
}

std::string EquivariantSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    os << (first ? "" : " + ") << '(' << c.get_str() << ")*" << p.to_string();
    first = false;
  }
  return os.str();
}

InstantonBlock instanton_block(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                               const ResidueChain& chain, std::uint32_t max_boxes) {
  InstantonBlock b;
  b.vertex = v;
  b.by_size.resize(max_boxes + 1);
  for (std::uint32_t s = 0; s <= max_boxes; ++s)
    for (auto& diagrams : diagram_tuples(model.rank(), s)) {
      const auto tv = t_vertex(model, v, xi, diagrams);
      BlockEntry e;
      e.size = s;
      e.residue = partial_residue({mpq_class(1), plethystic(tv.is_zero() ? CharacterPolynomial(model.generators()) : tv)}, chain);
      if (!e.residue.cofactor.generators()) e.residue.cofactor = BracketProduct(model.generators());
      e.diagrams = std::move(diagrams);
      b.by_size[s].push_back(std::move(e));
    }
  return b;
}

std::optional<BracketTerm> fixed_point_residue(const GaugeModel& model, const FixedPointTerm& term) {
  CharacterPolynomial ch = perturbative_character(model, term.xi);
  for (std::size_t v = 0; v < model.vertices(); ++v) {
    std::span<const YoungDiagram> d(term.lambda.diagrams().data() + v * model.rank(), model.rank());
    ch += t_vertex(model, v, term.xi, d);
  }
  return iterated_residue({mpq_class(1), plethystic(ch.movable_part())}, term.chain);
}

namespace {

struct FluxPlan {
  FluxTuple xi;
  IntVector m2;
  std::int64_t n_top = 0;
  std::vector<std::int64_t> ns;
};

struct WorkItem {
  std::size_t plan;
  ResidueChain chain;
};

struct ItemResult {
  std::map<std::int64_t, SlotAccumulator> limit;
  std::map<std::int64_t, EquivariantSum> equivariant;
  std::map<std::int64_t, std::size_t> residues;
};

std::int64_t free_valuation(const BracketProduct& p, std::size_t mass) {
  std::int64_t v = 0;
  for (const auto& [x, m] : p.factors())
    if (x[mass] == 0) v -= m;
  return v;
}

class ItemRunner {
 public:
  ItemRunner(const GaugeModel& model, const EngineConfig& cfg, const std::optional<Direction>& dir,
             TermCache* cache)
      : model_(model), cfg_(cfg), dir_(dir), cache_(cache) {}

  ItemResult run(const FluxPlan& plan, const ResidueChain& chain) {
    ItemResult out;
    std::int64_t lowest = plan.n_top;
    for (auto n : plan.ns) lowest = std::min(lowest, n);
    const auto bmax = static_cast<std::uint32_t>(plan.n_top - lowest);
    const std::size_t steps = chain.steps.size();
    const std::size_t nv = model_.vertices();

    PartialResidue pert =
        partial_residue({mpq_class(1), plethystic(perturbative_character(model_, plan.xi).movable_part())}, chain);
    pert.coefficient *= chain.orientation;

    std::vector<InstantonBlock> blocks;
    for (std::size_t v = 0; v < nv; ++v) {
      std::optional<InstantonBlock> b;
      std::string key;
      if (cache_) {
        key = TermCache::block_key(model_, plan.xi, chain, v, bmax);
        b = cache_->load(key, model_, v);
      }
      if (!b) {
        b = instanton_block(model_, v, plan.xi, chain, bmax);
        if (cache_) cache_->store(key, model_, *b);
      }
      blocks.push_back(std::move(*b));
    }

    const bool limit = cfg_.mode == Mode::Limit;
    std::int32_t cap = 0;
    LimitLog pert_log;
    std::vector<std::vector<std::vector<LimitLog>>> logs;
    if (limit) {
      const std::size_t mass = model_.mass_index();
      std::int64_t c = std::max<std::int64_t>(0, -free_valuation(pert.cofactor, mass));
      for (const auto& b : blocks) {
        std::int64_t worst = 0;
        for (const auto& by : b.by_size)
          for (const auto& e : by) worst = std::max(worst, -free_valuation(e.residue.cofactor, mass));
        c += worst;
      }
      cap = static_cast<std::int32_t>(c);
      pert_log = LimitLog::from(pert.coefficient, pert.cofactor, *dir_, cap);
      logs.resize(nv);
      for (std::size_t v = 0; v < nv; ++v) {
        logs[v].resize(blocks[v].by_size.size());
        for (std::size_t s = 0; s < blocks[v].by_size.size(); ++s)
          for (const auto& e : blocks[v].by_size[s])
            logs[v][s].push_back(LimitLog::from(e.residue.coefficient, e.residue.cofactor, *dir_, cap));
      }
    }

    for (auto n : plan.ns) {
      const auto budget = static_cast<std::uint32_t>(plan.n_top - n);
      SlotAccumulator acc(-cap, 0);
      EquivariantSum eq;
      std::size_t count = 0;
      std::vector<const PartialResidue*> parts{&pert};
      std::vector<std::vector<std::int64_t>> orders{pert.orders};
      std::vector<LimitLog> running;
      if (limit) running.push_back(pert_log);
      std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t v, std::uint32_t left) {
        if (v == nv) {
          if (left != 0) return;
          const auto& o = orders.back();
          for (std::size_t j = 0; j < steps; ++j) {
            if (o[j] <= 0) return;
            if (o[j] >= 2) {
              combine_residues(parts, chain);  // raises with the collision diagnosis
            }
          }
          ++count;
          if (limit)
            acc.add(running.back());
          else if (auto t = combine_residues(parts, chain))
            eq.add(*t);
          return;
        }
        const std::uint32_t lo = v + 1 == nv ? left : 0;
        for (std::uint32_t s = lo; s <= left && s < blocks[v].by_size.size(); ++s) {
          const auto& entries = blocks[v].by_size[s];
          for (std::size_t idx = 0; idx < entries.size(); ++idx) {
            const auto& e = entries[idx];
            parts.push_back(&e.residue);
            auto o = orders.back();
            for (std::size_t j = 0; j < steps; ++j) o[j] += e.residue.orders[j];
            orders.push_back(std::move(o));
            if (limit) running.push_back(running.back() * logs[v][s][idx]);
            walk(v + 1, left - s);
            if (limit) running.pop_back();
            orders.pop_back();
            parts.pop_back();
          }
        }
      };
      walk(0, budget);
      out.residues[n] = count;
      if (limit)
        out.limit.emplace(n, std::move(acc));
      else
        out.equivariant.emplace(n, std::move(eq));
    }
    return out;
  }

 private:
  const GaugeModel& model_;
  const EngineConfig& cfg_;
  const std::optional<Direction>& dir_;
  TermCache* cache_;
};

std::string describe(const FluxPlan& plan, const ResidueChain& chain, const GaugeModel& model) {
  std::ostringstream os;
  os << "m2=[";
  for (std::size_t a = 0; a < plan.m2.size(); ++a) os << (a ? "," : "") << plan.m2[a];
  os << "] xi=" << format_flux(plan.xi) << " chain=" << chain.to_string(*model.generators());
  return os.str();
}

}  // namespace

CoefficientTable assemble_Z(const GaugeModel& model, const EngineConfig& cfg) {
  const auto& s = model.surface();
  const std::size_t k = model.rank();
  if (cfg.max_m2 < 0) raise(ErrorKind::Config, "max_m2 must be nonnegative");
  require_no_twisted_zero_modes(s);
  CoefficientTable table;
  table.mode = cfg.mode;
  table.rank = k;
  table.geometry = s.name();
  table.geometry_hash = s.hash();

  const StabilityFilter filter{s.fan().kahler};
  const IntVector c1 = s.anticanonical_class();
  std::vector<FluxPlan> plans;
  IntVector m2(c1.size());
  std::function<void(std::size_t)> grid = [&](std::size_t a) {
    if (a == m2.size()) {
      const auto fluxes = enumerate_fluxes(s, k, m2, filter);
      if (fluxes.empty()) return;
      std::int64_t top = std::numeric_limits<std::int64_t>::min();
      std::vector<std::int64_t> tops;
      for (const auto& xi : fluxes) {
        tops.push_back(top_instanton_number(s, xi));
        top = std::max(top, tops.back());
      }
      const std::int64_t lo = std::max(cfg.n_min, top - static_cast<std::int64_t>(cfg.max_boxes));
      for (std::int64_t n = top; n >= lo; --n) table.slots[SlotKey{m2, n}];
      for (std::size_t f = 0; f < fluxes.size(); ++f) {
        FluxPlan p{fluxes[f], m2, tops[f], {}};
        for (std::int64_t n = tops[f]; n >= lo; --n) p.ns.push_back(n);
        if (!p.ns.empty()) plans.push_back(std::move(p));
      }
      return;
    }
    for (std::int64_t x = static_cast<std::int64_t>(k) * c1[a]; x <= cfg.max_m2; x += 2) {
      m2[a] = x;
      grid(a + 1);
    }
  };
  grid(0);

  std::vector<WorkItem> items;
  for (std::size_t p = 0; p < plans.size(); ++p) {
    std::vector<ResidueChain> chains;
    try {
      chains = pole_chains(model, plans[p].xi, cfg.poles);
    } catch (const Error& e) {
      std::ostringstream os;
      os << e.message() << " [m2=[";
      for (std::size_t a = 0; a < plans[p].m2.size(); ++a) os << (a ? "," : "") << plans[p].m2[a];
      os << "] xi=" << format_flux(plans[p].xi) << "]";
      raise(e.kind(), os.str());
    }
    for (auto& chain : chains) items.push_back({p, std::move(chain)});
  }
  table.work_items = items.size();

  std::unique_ptr<TermCache> cache;
  if (cfg.cache_dir) cache = std::make_unique<TermCache>(*cfg.cache_dir);

  std::optional<Direction> dir;
  std::vector<ItemResult> results;
  for (std::uint32_t attempt = 0;; ++attempt) {
    if (cfg.mode == Mode::Limit)
      dir = draw_direction(*model.generators(), cfg.seed + 0x9E3779B97F4A7C15ull * attempt);
    table.direction_attempts = attempt + 1;
    results.assign(items.size(), ItemResult{});
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};
    ItemRunner runner(model, cfg, dir, cache.get());
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
        const auto& it = items[i];
        try {
          results[i] = runner.run(plans[it.plan], it.chain);
          if (cfg.log) cfg.log("done " + describe(plans[it.plan], it.chain, model));
        } catch (const Error& e) {
          errors[i] = std::make_exception_ptr(
              Error(e.kind(), e.message() + " [" + describe(plans[it.plan], it.chain, model) + "]"));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(cfg.threads, items.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    bool redraw = false;
    for (auto& e : errors) {
      if (!e) continue;
      try {
        std::rethrow_exception(e);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::NonGenericDirection && attempt < 16) {
          redraw = true;
          break;
        }
        throw;
      }
    }
    if (!redraw) break;
    if (cfg.log) cfg.log("direction not generic, redrawing");
  }
  table.direction = dir;
  if (cache) {
    table.cache_hits = cache->hits();
    table.cache_misses = cache->misses();
    table.cache_rejected = cache->rejected();
  }

  // deterministic merge in work-item order
  std::map<SlotKey, SlotAccumulator> limit_acc;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& plan = plans[items[i].plan];
    for (auto& [n, acc] : results[i].limit) {
      SlotKey key{plan.m2, n};
      auto it = limit_acc.find(key);
      if (it == limit_acc.end())
        limit_acc.emplace(key, acc);
      else
        it->second += acc;
    }
    for (auto& [n, eq] : results[i].equivariant) table.slots[SlotKey{plan.m2, n}].equivariant += eq;
    for (auto& [n, c] : results[i].residues) table.slots[SlotKey{plan.m2, n}].residues += c;
  }
  if (cfg.mode == Mode::Limit) {
    for (auto& [key, slot] : table.slots) {
      auto it = limit_acc.find(key);
      if (it == limit_acc.end()) {
        slot.series = LimitSeries(0, 0);
        continue;
      }
      slot.series = it->second.result();
      if (auto bad = slot.series.first_negative_nonzero()) {
        std::ostringstream os;
        os << "t^" << *bad << " survives at m2=[";
        for (std::size_t a = 0; a < key.m2.size(); ++a) os << (a ? "," : "") << key.m2[a];
        os << "] n=" << key.n << ": " << slot.series.coefficient(*bad).to_string();
        raise(ErrorKind::IrregularLimit, os.str());
      }
      slot.limit = slot.series.coefficient(0);
      if (!slot.limit.to_u()) table.warnings.push_back("slot value is not a Laurent polynomial in M^(1/2)");
    }
  }
  return table;
}

CoefficientTable normalize_rank(CoefficientTable table, std::size_t k) {
  if (table.normalized) return table;
  if (k == 1) {
    table.normalized = true;
    return table;
  }
  if (k != 2) {
    table.warnings.push_back("no normalization shipped for rank " + std::to_string(k) + "; table left as is");
    return table;
  }
  const MassRational factor = -MassRational::bracket_power(-4);
  for (auto& [key, slot] : table.slots) {
    slot.limit *= factor;
    for (std::int32_t o = slot.series.min_order(); o <= slot.series.max_order(); ++o) slot.series.at(o) *= factor;
    if (!slot.equivariant.is_zero()) {
      const auto& gens = slot.equivariant.terms().begin()->first.generators();
      BracketProduct p(gens);
      p.multiply(gens->generator(gens->index("M")), 4);
      slot.equivariant.multiply(mpq_class(-1), p);
    }
  }
  table.normalized = true;
  return table;
}

}  // namespace coulomb
