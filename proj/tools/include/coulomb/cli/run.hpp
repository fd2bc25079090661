#pragma once

#include "json.hpp"

#include <functional>
#include <string>

#include "coulomb/cli/config.hpp"

namespace coulomb::cli {

inline constexpr int kSchemaVersion = 1;

struct RunResult {
  CoefficientTable table;
  std::string config_hash;
  bool regular = true;
  std::string error;  // engine failure, with the offending coordinates
};

RunResult run(const RunConfig& config, const std::function<void(const std::string&)>& log = {});

nlohmann::json to_json(const RunConfig& config, const RunResult& result);
std::string to_csv(const RunConfig& config, const RunResult& result);
std::string render(const RunConfig& config, const RunResult& result);

// short human-readable report for stderr
std::string summary(const RunConfig& config, const RunResult& result);

}  // namespace coulomb::cli
