#include "coulomb/cli/run.hpp"

#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb::cli {

using nlohmann::json;

RunResult run(const RunConfig& config, const std::function<void(const std::string&)>& log) {
  RunResult r;
  r.config_hash = config.hash();
  GaugeModel model(config.surface, config.rank);
  EngineConfig e = config.engine();
  e.log = log;
  try {
    r.table = assemble_Z(model, e);
    if (config.normalize) r.table = normalize_rank(std::move(r.table), config.rank);
  } catch (const Error& err) {
    r.regular = false;
    r.error = err.what();
  }
  return r;
}

namespace {

json rational_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(format_rational(q));
}

json m2_json(const IntVector& m2) {
  json a = json::array();
  for (auto x : m2) a.push_back(x);
  return a;
}

json equivariant_json(const EquivariantSum& sum) {
  json terms = json::array();
  for (const auto& [p, c] : sum.terms()) {
    json brackets = json::array();
    for (const auto& [x, m] : p.factors())
      brackets.push_back({{"monomial", p.generators()->format(x)}, {"power", -m}});
    terms.push_back({{"coefficient", rational_json(c * p.sign())}, {"brackets", brackets}});
  }
  return terms;
}

std::string slot_string(const CoefficientTable& t, const SlotValue& v) {
  return t.mode == Mode::Limit ? v.limit.to_string() : v.equivariant.to_string();
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

json to_json(const RunConfig& config, const RunResult& result) {
  const auto& t = result.table;
  json j;
  j["schema"] = "coulomb-coefficients";
  j["schema_version"] = kSchemaVersion;
  j["geometry"] = {{"name", config.geometry}, {"hash", config.surface->hash()}};
  j["rank"] = config.rank;
  j["mode"] = std::string(to_string(config.mode));
  j["normalized"] = t.normalized;

  json prov;
  prov["config_hash"] = result.config_hash;
  prov["cutoffs"] = {{"max_m2", config.max_m2},
                     {"max_boxes", config.max_boxes},
                     {"n_min", config.n_min ? json(*config.n_min) : json(nullptr)}};
  prov["strategy"] = std::string(to_string(config.poles.strategy));
  if (t.direction) {
    const GaugeModel model(config.surface, config.rank);
    const auto& gens = *model.generators();
    json w = json::object();
    for (std::size_t i = 0; i < t.direction->weights.size(); ++i)
      if (t.direction->weights[i] != 0) w[gens.at(i).name] = t.direction->weights[i];
    prov["direction"] = {{"seed", config.seed}, {"draw_seed", t.direction->seed},
                         {"attempts", t.direction_attempts}, {"weights", w}};
  } else {
    prov["direction"] = nullptr;
  }
  j["provenance"] = prov;
  j["warnings"] = t.warnings;

  json records = json::array();
  for (const auto& [key, v] : t.slots) {
    json rec;
    rec["m2"] = m2_json(key.m2);
    rec["n"] = key.n;
    if (t.mode == Mode::Limit) {
      if (auto u = v.limit.to_u()) {
        json coef = json::array();
        for (const auto& [e, c] : u->terms()) coef.push_back({e, rational_json(c)});
        rec["coefficient"] = coef;
      } else {
        rec["coefficient"] = nullptr;
      }
    } else {
      rec["terms"] = equivariant_json(v.equivariant);
    }
    rec["value"] = slot_string(t, v);
    records.push_back(std::move(rec));
  }
  j["records"] = records;
  return j;
}

std::string to_csv(const RunConfig& config, const RunResult& result) {
  (void)config;
  std::ostringstream os;
  os << "m2,n,value\n";
  for (const auto& [key, v] : result.table.slots) {
    std::string m;
    for (std::size_t i = 0; i < key.m2.size(); ++i) m += (i ? ";" : "") + std::to_string(key.m2[i]);
    os << m << ',' << key.n << ',' << csv_field(slot_string(result.table, v)) << '\n';
  }
  return os.str();
}

std::string render(const RunConfig& config, const RunResult& result) {
  if (config.format == Format::Csv) return to_csv(config, result);
  return to_json(config, result).dump(2) + "\n";
}

std::string summary(const RunConfig& config, const RunResult& result) {
  const auto& t = result.table;
  std::ostringstream os;
  os << "geometry " << config.geometry << ", rank " << config.rank << ", mode " << to_string(config.mode) << '\n';
  if (!result.error.empty()) {
    os << "failed: " << result.error << '\n';
    return os.str();
  }
  std::size_t nonzero = 0;
  for (const auto& [key, v] : t.slots)
    if (!(t.mode == Mode::Limit ? v.limit.is_zero() : v.equivariant.is_zero())) ++nonzero;
  os << t.slots.size() << " slots (" << nonzero << " nonzero) from " << t.work_items << " work items\n";
  if (config.cache_dir)
    os << "cache " << config.cache_dir->string() << ": " << t.cache_hits << " hits, " << t.cache_misses
       << " misses, " << t.cache_rejected << " rejected\n";
  if (t.direction && t.direction_attempts > 1) os << "direction redrawn " << t.direction_attempts - 1 << " times\n";
  for (const auto& w : t.warnings) os << "warning: " << w << '\n';
  return os.str();
}

}  // namespace coulomb::cli
