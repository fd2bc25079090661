#include "coulomb/term_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "coulomb/error.hpp"
#include "coulomb/hash.hpp"

namespace coulomb {

namespace {

constexpr std::string_view kMagic = "coulomb-term-cache";

std::string join(const std::vector<std::int64_t>& v) {
  if (v.empty()) return "~";
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::vector<std::int64_t> split_ints(const std::string& s) {
  std::vector<std::int64_t> r;
  if (s == "~") return r;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) r.push_back(std::stoll(tok));
  return r;
}

std::string format_monomial(const Monomial& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  return os.str();
}

std::string format_diagrams(const std::vector<YoungDiagram>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << '/';
    if (ds[i].empty()) {
      os << '-';
      continue;
    }
    for (std::size_t r = 0; r < ds[i].rows().size(); ++r) os << (r ? "." : "") << ds[i].rows()[r];
  }
  return os.str();
}

std::vector<YoungDiagram> parse_diagrams(const std::string& s) {
  std::vector<YoungDiagram> out;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, '/')) {
    if (part == "-") {
      out.emplace_back();
      continue;
    }
    std::vector<std::uint32_t> rows;
    std::istringstream rs(part);
    std::string r;
    while (std::getline(rs, r, '.')) rows.push_back(static_cast<std::uint32_t>(std::stoul(r)));
    out.emplace_back(std::move(rows));
  }
  return out;
}

std::string generator_line(const GaugeModel& model) {
  std::ostringstream os;
  const auto& g = *model.generators();
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g.at(i).name;
  return os.str();
}

}  // namespace

TermCache::TermCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) raise(ErrorKind::Cache, "cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::string TermCache::block_key(const GaugeModel& model, const FluxTuple& xi, const ResidueChain& chain,
                                 std::size_t vertex, std::uint32_t max_boxes) {
  std::ostringstream os;
  os << "v" << kVersion << ";geometry=" << model.surface().hash() << ";k=" << model.rank()
     << ";xi=" << format_flux(xi) << ";chain=" << chain.orientation;
  for (const auto& s : chain.steps) os << '|' << s.variable << ':' << format_monomial(s.value);
  os << ";vertex=" << vertex << ";max_boxes=" << max_boxes;
  return os.str();
}

std::filesystem::path TermCache::path_for(const std::string& key) const {
  const std::string h = sha1_hex(key);
  return dir_ / h.substr(0, 2) / (h + ".blk");
}

std::string TermCache::serialize(const std::string& key, const GaugeModel& model, const InstantonBlock& block) {
  std::ostringstream os;
  os << kMagic << ' ' << kVersion << '\n';
  os << "key " << key << '\n';
  os << "vertex " << block.vertex << '\n';
  os << "generators " << generator_line(model) << '\n';
  std::size_t count = 0;
  for (const auto& by : block.by_size) count += by.size();
  os << "sizes " << block.by_size.size() << '\n';
  os << "entries " << count << '\n';
  for (const auto& by : block.by_size)
    for (const auto& e : by) {
      os << "E " << e.size << ' ' << format_diagrams(e.diagrams) << ' ' << join(e.residue.orders) << ' '
         << join(e.residue.poles) << ' ' << e.residue.coefficient.get_str() << ' '
         << e.residue.cofactor.factors().size();
      for (const auto& [x, m] : e.residue.cofactor.factors()) os << ' ' << format_monomial(x) << ':' << m;
      os << '\n';
    }
  const std::string body = os.str();
  return body + "checksum " + sha1_hex(body) + "\nend\n";
}

std::optional<InstantonBlock> TermCache::parse(const std::string& text, const std::string& key,
                                               const GaugeModel& model, std::size_t vertex) {
  const auto cpos = text.rfind("checksum ");
  if (cpos == std::string::npos) return std::nullopt;
  const std::string body = text.substr(0, cpos);
  std::istringstream tail(text.substr(cpos));
  std::string word, sum, end;
  tail >> word >> sum >> end;
  if (end != "end" || sum != sha1_hex(body)) return std::nullopt;
  try {
    std::istringstream is(body);
    std::string line;
    std::getline(is, line);
    if (line != std::string(kMagic) + " " + std::to_string(kVersion)) return std::nullopt;
    std::getline(is, line);
    if (line != "key " + key) return std::nullopt;
    std::getline(is, line);
    if (line != "vertex " + std::to_string(vertex)) return std::nullopt;
    std::getline(is, line);
    if (line != "generators " + generator_line(model)) return std::nullopt;
    std::size_t sizes = 0, count = 0;
    std::getline(is, line);
    if (std::sscanf(line.c_str(), "sizes %zu", &sizes) != 1) return std::nullopt;
    std::getline(is, line);
    if (std::sscanf(line.c_str(), "entries %zu", &count) != 1) return std::nullopt;
    InstantonBlock b;
    b.vertex = vertex;
    b.by_size.resize(sizes);
    const auto& gens = model.generators();
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::getline(is, line)) return std::nullopt;
      std::istringstream ls(line);
      std::string tag, diag, orders, poles, coef;
      std::size_t nf = 0;
      BlockEntry e;
      ls >> tag >> e.size >> diag >> orders >> poles >> coef >> nf;
      if (tag != "E" || !ls || e.size >= sizes) return std::nullopt;
      e.diagrams = parse_diagrams(diag);
      e.residue.orders = split_ints(orders);
      e.residue.poles = split_ints(poles);
      e.residue.coefficient = parse_rational(coef);
      e.residue.cofactor = BracketProduct(gens);
      for (std::size_t f = 0; f < nf; ++f) {
        std::string tok;
        ls >> tok;
        const auto colon = tok.find(':');
        if (colon == std::string::npos) return std::nullopt;
        const auto ex = split_ints(tok.substr(0, colon));
        if (ex.size() != gens->size()) return std::nullopt;
        std::vector<std::int32_t> d(ex.begin(), ex.end());
        e.residue.cofactor.multiply(Monomial(std::move(d)), std::stoll(tok.substr(colon + 1)));
      }
      if (e.diagrams.size() != model.rank()) return std::nullopt;
      b.by_size[e.size].push_back(std::move(e));
    }
    return b;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<InstantonBlock> TermCache::load(const std::string& key, const GaugeModel& model, std::size_t vertex) {
  const auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto b = parse(ss.str(), key, model, vertex);
  if (!b) {
    ++rejected_;
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return b;
}

void TermCache::store(const std::string& key, const GaugeModel& model, const InstantonBlock& block) {
  const auto path = path_for(key);
  const std::string text = serialize(key, model, block);
  std::lock_guard<std::mutex> lock(write_mu_);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ostringstream tmpname;
  tmpname << path.filename().string() << ".tmp." << std::this_thread::get_id();
  const auto tmp = path.parent_path() / tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::Cache, "cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) raise(ErrorKind::Cache, "cannot publish " + path.string() + ": " + ec.message());
}

}  // namespace coulomb
