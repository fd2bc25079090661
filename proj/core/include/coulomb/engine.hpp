#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coulomb/limit.hpp"
#include "coulomb/residue.hpp"

namespace coulomb {

enum class Mode { Equivariant, Limit };
std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

struct SlotKey {
  IntVector m2;
  std::int64_t n = 0;
  friend bool operator==(const SlotKey&, const SlotKey&) = default;
};
// by m ascending, then n descending
bool operator<(const SlotKey& a, const SlotKey& b);

// Formal sum of canonical bracket products with rational coefficients.
class EquivariantSum {
 public:
  void add(const BracketTerm& t);
  EquivariantSum& operator+=(const EquivariantSum& o);
  void multiply(const mpq_class& c, const BracketProduct& p);
  const std::map<BracketProduct, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;

 private:
  std::map<BracketProduct, mpq_class> terms_;
};

struct SlotValue {
  EquivariantSum equivariant;
  LimitSeries series;
  MassRational limit;  // t^0 coefficient
  std::size_t residues = 0;
};

struct CoefficientTable {
  Mode mode = Mode::Limit;
  std::size_t rank = 1;
  std::string geometry;
  std::string geometry_hash;
  std::optional<Direction> direction;
  std::uint32_t direction_attempts = 0;
  bool normalized = false;
  std::map<SlotKey, SlotValue> slots;
  std::vector<std::string> warnings;
  std::size_t work_items = 0;
  std::size_t cache_hits = 0, cache_misses = 0, cache_rejected = 0;
};

struct FixedPointTerm {
  FluxTuple xi;
  VertexTuple lambda;
  ResidueChain chain;
  Weight weight;
};

struct BlockEntry {
  std::vector<YoungDiagram> diagrams;  // one per gauge index
  std::uint32_t size = 0;
  PartialResidue residue;
};

// entries grouped by vertex size 0..max_boxes
struct InstantonBlock {
  std::size_t vertex = 0;
  std::vector<std::vector<BlockEntry>> by_size;
};

InstantonBlock instanton_block(const GaugeModel& model, std::size_t v, const FluxTuple& xi,
                               const ResidueChain& chain, std::uint32_t max_boxes);

// residue of a single fixed point computed from the undivided integrand
std::optional<BracketTerm> fixed_point_residue(const GaugeModel& model, const FixedPointTerm& term);

class TermCache;

struct EngineConfig {
  Mode mode = Mode::Limit;
  std::int64_t max_m2 = 0;  // bound on every doubled-m entry
  std::int64_t n_min = std::numeric_limits<std::int64_t>::min();
  std::uint32_t max_boxes = 0;
  PoleOptions poles;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::function<void(const std::string&)> log;
};

CoefficientTable assemble_Z(const GaugeModel& model, const EngineConfig& config);

// k = 1 identity, k = 2 multiplies by -<M>^{-4}; other ranks pass through with a warning
CoefficientTable normalize_rank(CoefficientTable table, std::size_t k);

}  // namespace coulomb
