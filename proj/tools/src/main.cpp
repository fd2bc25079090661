#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coulomb/cli/run.hpp"

using nlohmann::json;
using namespace coulomb;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool write_file(const std::filesystem::path& path, const std::string& data) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << data;
    if (!out) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coulomb branch partition functions of ADHM theory on toric surfaces"};
  app.set_version_flag("--version", "coulomb 0.1.0");

  std::string config_path, geometry, mode, strategy, cache_dir, out, format;
  std::size_t rank = 0, threads = 0, twist = 0;
  std::int64_t max_m2 = 0, n_min = 0;
  std::uint32_t max_boxes = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> covector;
  bool no_normalize = false, list_presets = false, quiet = false;

  app.add_option("-c,--config", config_path, "JSON configuration file; flags override its fields");
  auto* o_geometry = app.add_option("--geometry", geometry, "geometry preset name");
  auto* o_rank = app.add_option("--rank", rank, "gauge rank k");
  auto* o_mode = app.add_option("--mode", mode, "equivariant | limit");
  auto* o_max_m2 = app.add_option("--max-m2", max_m2, "bound on every doubled-m entry");
  auto* o_boxes = app.add_option("--max-boxes", max_boxes, "instanton boxes per flux sector");
  auto* o_n_min = app.add_option("--n-min", n_min, "lowest instanton number kept");
  auto* o_strategy = app.add_option("--strategy", strategy, "pole selection: builtin | covector");
  auto* o_covector = app.add_option("--covector", covector, "covector for the covector strategy");
  auto* o_twist = app.add_option("--twist", twist, "fiber column carrying the adjoint twist (0 or 1)");
  auto* o_seed = app.add_option("--seed", seed, "direction seed for the limit mode");
  auto* o_threads = app.add_option("--threads", threads, "worker threads");
  auto* o_cache = app.add_option("--cache-dir", cache_dir,
                                 "term cache directory (default: $" + std::string(cli::kCacheDirVariable) + ")");
  auto* o_out = app.add_option("-o,--out", out, "output file (default: stdout)");
  auto* o_format = app.add_option("--format", format, "json | csv");
  app.add_flag("--no-normalize", no_normalize, "keep the raw rank-k coefficients");
  app.add_flag("--list-presets", list_presets, "print the shipped geometry presets and exit");
  app.add_flag("-q,--quiet", quiet, "no progress or summary on stderr");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto& p : preset_names()) std::cout << p << '\n';
    return 0;
  }

  json j = json::object();
  if (!config_path.empty()) {
    auto text = read_file(config_path);
    if (!text) {
      std::cerr << "cannot read " << config_path << '\n';
      return 3;
    }
    try {
      j = json::parse(*text);
    } catch (const json::parse_error& e) {
      std::cerr << config_path << ": " << e.what() << '\n';
      return 2;
    }
  }
  if (*o_geometry) j["geometry"] = geometry;
  if (*o_rank) j["rank"] = rank;
  if (*o_mode) j["mode"] = mode;
  if (*o_max_m2) j["max_m2"] = max_m2;
  if (*o_boxes) j["max_boxes"] = max_boxes;
  if (*o_n_min) j["n_min"] = n_min;
  if (*o_strategy) j["strategy"] = strategy;
  if (*o_covector) j["covector"] = covector;
  if (*o_twist) j["twist"] = twist;
  if (*o_seed) j["seed"] = seed;
  if (*o_threads) j["threads"] = threads;
  if (*o_cache) j["cache_dir"] = cache_dir;
  if (*o_out) j["out"] = out;
  if (*o_format) j["format"] = format;
  if (no_normalize) j["normalize"] = false;
  if (j.is_object() && !j.contains("cache_dir"))
    if (const char* env = std::getenv(std::string(cli::kCacheDirVariable).c_str()); env && *env) j["cache_dir"] = env;

  auto parsed = cli::parse_config(j);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << "config error: " << e << '\n';
    return 2;
  }
  const auto& config = *parsed.config;

  std::function<void(const std::string&)> log;
  if (!quiet) log = [](const std::string& line) { std::cerr << line << '\n'; };
  const auto result = cli::run(config, log);
  if (!quiet) std::cerr << cli::summary(config, result);
  if (!result.error.empty()) {
    if (quiet) std::cerr << result.error << '\n';
    return 1;
  }

  const std::string text = cli::render(config, result);
  if (config.out) {
    if (!write_file(*config.out, text)) {
      std::cerr << "cannot write " << config.out->string() << '\n';
      return 3;
    }
  } else {
    std::cout << text;
  }
  return 0;
}
