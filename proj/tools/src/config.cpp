#include "coulomb/cli/config.hpp"

#include <algorithm>
#include <limits>

#include "coulomb/error.hpp"
#include "coulomb/hash.hpp"

namespace coulomb::cli {

using nlohmann::json;

std::string_view to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

namespace {

class Reader {
 public:
  Reader(const json& j, std::vector<std::string>& errors) : j_(j), errors_(errors) {}

  const json* find(const char* key) const {
    auto it = j_.find(key);
    return it == j_.end() || it->is_null() ? nullptr : &*it;
  }

  template <class T>
  std::optional<T> integer(const char* key, std::int64_t lo, std::uint64_t hi) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      errors_.push_back(std::string(key) + ": expected an integer");
      return std::nullopt;
    }
    const bool in_range = v->is_number_unsigned()
                              ? v->get<std::uint64_t>() <= hi &&
                                    (lo <= 0 || v->get<std::uint64_t>() >= static_cast<std::uint64_t>(lo))
                              : v->get<std::int64_t>() >= lo &&
                                    (v->get<std::int64_t>() < 0 || static_cast<std::uint64_t>(v->get<std::int64_t>()) <= hi);
    if (!in_range) {
      errors_.push_back(std::string(key) + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return v->is_number_unsigned() ? static_cast<T>(v->get<std::uint64_t>()) : static_cast<T>(v->get<std::int64_t>());
  }

  std::optional<std::string> string(const char* key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      errors_.push_back(std::string(key) + ": expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const char* key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      errors_.push_back(std::string(key) + ": expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

 private:
  const json& j_;
  std::vector<std::string>& errors_;
};

std::optional<IntMatrix> int_matrix(const json& j, const std::string& what, std::vector<std::string>& errors) {
  if (!j.is_array()) {
    errors.push_back(what + ": expected a list of integer rows");
    return std::nullopt;
  }
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) {
      errors.push_back(what + ": expected a list of integer rows");
      return std::nullopt;
    }
    IntVector r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) {
        errors.push_back(what + ": entries must be integers");
        return std::nullopt;
      }
      r.push_back(x.get<std::int64_t>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

std::optional<mpq_class> rational(const json& x) {
  if (x.is_number_integer()) return mpq_class(std::to_string(x.get<std::int64_t>()));
  if (x.is_string()) {
    try {
      return parse_rational(x.get<std::string>());
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// inline geometry: {"name", "charges", "fiber", "cones", "intersection", "kahler", "twist"}
std::optional<ToricSurface> inline_geometry(const json& g, std::optional<std::size_t> twist,
                                            std::vector<std::string>& errors) {
  const std::size_t before = errors.size();
  std::string name = "inline";
  if (auto it = g.find("name"); it != g.end()) {
    if (it->is_string())
      name = it->get<std::string>();
    else
      errors.push_back("geometry.name: expected a string");
  }
  auto field = [&](const char* key) -> const json* {
    auto it = g.find(key);
    if (it == g.end()) {
      errors.push_back(std::string("geometry.") + key + ": missing");
      return nullptr;
    }
    return &*it;
  };
  ChargeData charges;
  FanData fan;
  if (const json* c = field("charges"))
    if (auto m = int_matrix(*c, "geometry.charges", errors)) charges.surface = *m;
  if (const json* c = field("fiber"))
    if (auto m = int_matrix(*c, "geometry.fiber", errors)) charges.fiber = *m;
  if (const json* c = field("intersection"))
    if (auto m = int_matrix(*c, "geometry.intersection", errors)) fan.intersection = *m;
  if (const json* c = field("cones")) {
    if (auto m = int_matrix(*c, "geometry.cones", errors)) {
      for (const auto& row : *m) {
        if (row.size() != 2 || row[0] < 0 || row[1] < 0) {
          errors.push_back("geometry.cones: each cone lists two divisor indices");
          break;
        }
        fan.cones.push_back({static_cast<std::size_t>(row[0]), static_cast<std::size_t>(row[1])});
      }
    }
  }
  if (const json* c = field("kahler")) {
    if (!c->is_array()) {
      errors.push_back("geometry.kahler: expected a list");
    } else {
      for (const auto& x : *c) {
        auto q = rational(x);
        if (!q) {
          errors.push_back("geometry.kahler: entries must be integers or rational strings");
          break;
        }
        fan.kahler.push_back(*q);
      }
    }
  }
  if (auto it = g.find("twist"); it != g.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0 || it->get<std::int64_t>() > 1)
      errors.push_back("geometry.twist: expected 0 or 1");
    else
      fan.twist = it->get<std::size_t>();
  }
  if (twist) fan.twist = *twist;
  if (errors.size() != before) return std::nullopt;
  try {
    return ToricSurface::build(std::move(charges), std::move(fan), name);
  } catch (const Error& e) {
    errors.push_back(std::string("geometry: ") + e.what());
  }
  return std::nullopt;
}

std::optional<ToricSurface> preset_geometry(const std::string& name, std::optional<std::size_t> twist,
                                            std::vector<std::string>& errors) {
  auto s = preset_surface(name);
  if (!s) {
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    errors.push_back("geometry: unknown preset '" + name + "' (known: " + known + ")");
    return std::nullopt;
  }
  if (!twist || *twist == s->fan().twist) return s;
  FanData fan = s->fan();
  fan.twist = *twist;
  try {
    return ToricSurface::build(s->charges(), std::move(fan), name);
  } catch (const Error& e) {
    errors.push_back(std::string("geometry: ") + e.what());
  }
  return std::nullopt;
}

const std::vector<std::string> kKnownKeys = {"geometry", "twist",   "rank",    "mode",  "max_m2",
                                             "max_boxes", "n_min",  "strategy", "covector", "seed",
                                             "normalize", "threads", "cache_dir", "out",   "format"};

}  // namespace

ParseResult parse_config(const json& j) {
  ParseResult r;
  auto& errors = r.errors;
  if (!j.is_object()) {
    errors.push_back("configuration must be an object");
    return r;
  }
  for (const auto& [key, value] : j.items())
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      errors.push_back(key + ": unknown field");

  Reader in(j, errors);
  RunConfig c;
  constexpr auto kMaxInt = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

  if (auto t = in.integer<std::size_t>("twist", 0, 1)) c.twist = *t;

  const json* g = in.find("geometry");
  std::optional<ToricSurface> surface;
  if (!g) {
    errors.push_back("geometry: missing");
  } else if (g->is_string()) {
    c.geometry = g->get<std::string>();
    surface = preset_geometry(c.geometry, c.twist, errors);
  } else if (g->is_object()) {
    surface = inline_geometry(*g, c.twist, errors);
    if (surface) c.geometry = surface->name();
  } else {
    errors.push_back("geometry: expected a preset name or an inline block");
  }
  if (surface) c.surface = std::make_shared<const ToricSurface>(std::move(*surface));

  if (const json* k = in.find("rank"); !k)
    errors.push_back("rank: missing");
  else if (!k->is_number_integer() || k->get<std::int64_t>() < 1)
    errors.push_back("rank: must be a positive integer");
  else if (k->get<std::int64_t>() > 8)
    errors.push_back("rank: at most 8 is supported");
  else
    c.rank = k->get<std::size_t>();

  if (auto m = in.string("mode")) {
    try {
      c.mode = parse_mode(*m);
    } catch (const Error& e) {
      errors.push_back(std::string("mode: ") + e.what());
    }
  }
  if (!in.find("max_m2"))
    errors.push_back("max_m2: missing");
  else if (auto m = in.integer<std::int64_t>("max_m2", 0, kMaxInt))
    c.max_m2 = *m;
  if (auto b = in.integer<std::uint32_t>("max_boxes", 0, 64)) c.max_boxes = *b;
  if (const json* n = in.find("n_min")) {
    if (!n->is_number_integer())
      errors.push_back("n_min: expected an integer");
    else
      c.n_min = n->get<std::int64_t>();
  }
  if (auto s = in.string("strategy")) {
    try {
      c.poles.strategy = parse_pole_strategy(*s);
    } catch (const Error& e) {
      errors.push_back(std::string("strategy: ") + e.what());
    }
  }
  if (const json* cv = in.find("covector")) {
    if (!cv->is_array()) {
      errors.push_back("covector: expected a list");
    } else {
      for (const auto& x : *cv) {
        auto q = rational(x);
        if (!q) {
          errors.push_back("covector: entries must be integers or rational strings");
          c.poles.covector.clear();
          break;
        }
        c.poles.covector.push_back(*q);
      }
      if (!c.poles.covector.empty() && c.poles.covector.size() != c.rank)
        errors.push_back("covector: length must equal the rank");
    }
  }
  if (auto s = in.integer<std::uint64_t>("seed", 0, std::numeric_limits<std::uint64_t>::max())) c.seed = *s;
  if (auto b = in.boolean("normalize")) c.normalize = *b;
  if (auto t = in.integer<std::size_t>("threads", 1, 1024)) c.threads = *t;
  if (auto d = in.string("cache_dir")) {
    if (d->empty())
      errors.push_back("cache_dir: empty path");
    else
      c.cache_dir = *d;
  }
  if (auto o = in.string("out")) c.out = *o;
  if (auto f = in.string("format")) {
    if (*f == "json")
      c.format = Format::Json;
    else if (*f == "csv")
      c.format = Format::Csv;
    else
      errors.push_back("format: expected json or csv");
  }

  if (errors.empty()) r.config = std::move(c);
  return r;
}

ParseResult parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return {std::nullopt, {std::string("malformed configuration: ") + e.what()}};
  }
  return parse_config(j);
}

json RunConfig::computation() const {
  json j;
  j["geometry"] = {{"name", geometry}, {"hash", surface ? surface->hash() : std::string()}};
  j["rank"] = rank;
  j["mode"] = std::string(to_string(mode));
  j["max_m2"] = max_m2;
  j["max_boxes"] = max_boxes;
  j["n_min"] = n_min ? json(*n_min) : json(nullptr);
  j["strategy"] = std::string(to_string(poles.strategy));
  json cv = json::array();
  for (const auto& x : poles.covector) cv.push_back(format_rational(x));
  j["covector"] = cv;
  j["seed"] = seed;
  j["normalize"] = normalize;
  return j;
}

std::string RunConfig::hash() const { return content_hash(computation().dump()); }

EngineConfig RunConfig::engine() const {
  EngineConfig e;
  e.mode = mode;
  e.max_m2 = max_m2;
  if (n_min) e.n_min = *n_min;
  e.max_boxes = max_boxes;
  e.poles = poles;
  e.seed = seed;
  e.threads = threads;
  e.cache_dir = cache_dir;
  return e;
}

}  // namespace coulomb::cli
