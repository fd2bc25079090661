#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coulomb/engine.hpp"

namespace coulomb::cli {

enum class Format { Json, Csv };

std::string_view to_string(Format f);

inline constexpr std::string_view kCacheDirVariable = "COULOMB_CACHE_DIR";

struct RunConfig {
  std::string geometry;  // preset name, or the inline block's name
  std::shared_ptr<const ToricSurface> surface;
  std::size_t rank = 1;
  Mode mode = Mode::Limit;
  std::int64_t max_m2 = 0;
  std::uint32_t max_boxes = 0;
  std::optional<std::int64_t> n_min;
  std::optional<std::size_t> twist;
  PoleOptions poles;
  std::uint64_t seed = 1;
  bool normalize = true;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> out;
  Format format = Format::Json;

  // fields that determine the coefficients, in canonical key order
  nlohmann::json computation() const;
  // git blob hash of computation().dump()
  std::string hash() const;
  EngineConfig engine() const;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return config.has_value(); }
};

// Every problem is reported, not only the first one.
ParseResult parse_config(const nlohmann::json& j);
ParseResult parse_config(std::string_view text);

}  // namespace coulomb::cli
