#pragma once

#include <atomic>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "coulomb/engine.hpp"

namespace coulomb {

// Content-addressed store of instanton blocks; one text file per key:
//   coulomb-term-cache <version>, key, generators, entry lines, checksum, end
// A record with a bad header, checksum or missing end marker is rejected.
class TermCache {
 public:
  static constexpr int kVersion = 2;

  explicit TermCache(std::filesystem::path dir);

  static std::string block_key(const GaugeModel& model, const FluxTuple& xi, const ResidueChain& chain,
                               std::size_t vertex, std::uint32_t max_boxes);
  std::filesystem::path path_for(const std::string& key) const;

  std::optional<InstantonBlock> load(const std::string& key, const GaugeModel& model, std::size_t vertex);
  void store(const std::string& key, const GaugeModel& model, const InstantonBlock& block);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t rejected() const { return rejected_; }

  static std::string serialize(const std::string& key, const GaugeModel& model, const InstantonBlock& block);
  static std::optional<InstantonBlock> parse(const std::string& text, const std::string& key,
                                             const GaugeModel& model, std::size_t vertex);

 private:
  std::filesystem::path dir_;
  std::atomic<std::size_t> hits_{0}, misses_{0}, rejected_{0};
  std::mutex write_mu_;
};

}  // namespace coulomb
