#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/character.hpp"

namespace coulomb {

// Rows are nonincreasing; row b (0-based) holds boxes (a, b), a < rows[b].
class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<std::uint32_t> rows);

  const std::vector<std::uint32_t>& rows() const { return rows_; }
  std::uint32_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(std::uint32_t a, std::uint32_t b) const { return b < rows_.size() && a < rows_[b]; }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> boxes() const;
  YoungDiagram conjugate() const;

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ <=> b.rows_; }
  std::string to_string() const;

 private:
  std::vector<std::uint32_t> rows_;
  std::uint32_t size_ = 0;
};

// all partitions of n, reverse lexicographic: (n), (n-1,1), ...
const std::vector<YoungDiagram>& partitions_of(std::uint32_t n);

// sum over boxes of x^a y^b
CharacterPolynomial diagram_character(const YoungDiagram& d, const GeneratorSetPtr& gens,
                                      const Monomial& x, const Monomial& y);

// Quadrant staircase: `columns` semi-infinite columns along y, `rows` semi-infinite
// rows along x, plus finitely many extra boxes.
struct AsymptoticPartition {
  std::uint32_t columns = 0;
  std::uint32_t rows = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> extra;
};

struct RegularizedPartition {
  std::uint32_t columns = 0;
  std::uint32_t rows = 0;
  YoungDiagram diagram;
  friend bool operator==(const RegularizedPartition&, const RegularizedPartition&) = default;
};

// K~ = (1 - x^columns y^rows)/((1-x)(1-y)) + x^columns y^rows K
RegularizedPartition regularize(const AsymptoticPartition& p);
AsymptoticPartition asymptotic(const RegularizedPartition& r);

// k Young diagrams at each of the fixed points, stored vertex-major
class VertexTuple {
 public:
  VertexTuple() = default;
  VertexTuple(std::size_t rank, std::size_t vertices);
  VertexTuple(std::size_t rank, std::vector<YoungDiagram> diagrams);

  std::size_t rank() const { return rank_; }
  std::size_t vertices() const { return rank_ == 0 ? 0 : diagrams_.size() / rank_; }
  const YoungDiagram& at(std::size_t v, std::size_t i) const { return diagrams_.at(v * rank_ + i); }
  YoungDiagram& at(std::size_t v, std::size_t i) { return diagrams_.at(v * rank_ + i); }
  const std::vector<YoungDiagram>& diagrams() const { return diagrams_; }
  std::uint32_t size() const;
  std::uint32_t vertex_size(std::size_t v) const;

  friend bool operator==(const VertexTuple&, const VertexTuple&) = default;
  friend auto operator<=>(const VertexTuple& a, const VertexTuple& b) { return a.diagrams_ <=> b.diagrams_; }

 private:
  std::size_t rank_ = 0;
  std::vector<YoungDiagram> diagrams_;
};

// All tuples of `slots` diagrams with total size s, ordered by the size
// composition (lexicographic) and then by the canonical order slot by slot.
std::vector<std::vector<YoungDiagram>> diagram_tuples(std::size_t slots, std::uint32_t total);

// Lazy stream of VertexTuples by increasing total size up to max_boxes.
class TupleStream {
 public:
  TupleStream(std::size_t rank, std::size_t vertices, std::uint32_t max_boxes);
  std::optional<VertexTuple> next();

 private:
  std::size_t rank_, vertices_;
  std::uint32_t max_boxes_;
  std::uint32_t size_ = 0;
  std::vector<std::vector<YoungDiagram>> batch_;
  std::size_t pos_ = 0;
};

}  // namespace coulomb
