#include "coulomb/partitions.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

YoungDiagram::YoungDiagram(std::vector<std::uint32_t> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] == 0) raise(ErrorKind::InvalidStaircase, "empty row in Young diagram");
    if (i > 0 && rows_[i] > rows_[i - 1]) raise(ErrorKind::InvalidStaircase, "rows must be nonincreasing");
    size_ += rows_[i];
  }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> YoungDiagram::boxes() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> r;
  r.reserve(size_);
  for (std::uint32_t b = 0; b < rows_.size(); ++b)
    for (std::uint32_t a = 0; a < rows_[b]; ++a) r.emplace_back(a, b);
  return r;
}

YoungDiagram YoungDiagram::conjugate() const {
  std::vector<std::uint32_t> cols;
  if (!rows_.empty()) {
    cols.assign(rows_[0], 0);
    for (auto r : rows_)
      for (std::uint32_t a = 0; a < r; ++a) ++cols[a];
  }
  return YoungDiagram(std::move(cols));
}

std::string YoungDiagram::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
  os << ')';
  return os.str();
}

namespace {

void partitions_rec(std::uint32_t left, std::uint32_t cap, std::vector<std::uint32_t>& cur,
                    std::vector<YoungDiagram>& out) {
  if (left == 0) {
    out.emplace_back(cur);
    return;
  }
  for (std::uint32_t r = std::min(left, cap); r >= 1; --r) {
    cur.push_back(r);
    partitions_rec(left - r, r, cur, out);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<YoungDiagram>& partitions_of(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<YoungDiagram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<YoungDiagram> out;
  std::vector<std::uint32_t> cur;
  partitions_rec(n, n, cur, out);
  return cache.emplace(n, std::move(out)).first->second;
}

CharacterPolynomial diagram_character(const YoungDiagram& d, const GeneratorSetPtr& gens,
                                      const Monomial& x, const Monomial& y) {
  CharacterPolynomial k(gens);
  Monomial row = gens->one();
  for (auto len : d.rows()) {
    Monomial m = row;
    for (std::uint32_t a = 0; a < len; ++a) {
      k.add_term(m, 1);
      m *= x;
    }
    row *= y;
  }
  return k;
}

RegularizedPartition regularize(const AsymptoticPartition& p) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> shifted;
  for (const auto& [a, b] : p.extra) {
    if (a < p.columns || b < p.rows) raise(ErrorKind::InvalidStaircase, "extra box inside a boundary strip");
    if (!shifted.emplace(a - p.columns, b - p.rows).second) raise(ErrorKind::InvalidStaircase, "repeated box");
  }
  std::vector<std::uint32_t> rows;
  for (const auto& [a, b] : shifted) {
    if (b >= rows.size()) rows.resize(b + 1, 0);
    ++rows[b];
  }
  for (const auto& [a, b] : shifted)
    if ((a > 0 && !shifted.count({a - 1, b})) || (b > 0 && !shifted.count({a, b - 1})))
      raise(ErrorKind::InvalidStaircase, "staircase is not down-closed");
  return {p.columns, p.rows, YoungDiagram(std::move(rows))};
}

AsymptoticPartition asymptotic(const RegularizedPartition& r) {
  AsymptoticPartition p{r.columns, r.rows, {}};
  for (const auto& [a, b] : r.diagram.boxes()) p.extra.emplace_back(a + r.columns, b + r.rows);
  return p;
}

VertexTuple::VertexTuple(std::size_t rank, std::size_t vertices)
    : rank_(rank), diagrams_(rank * vertices) {}

VertexTuple::VertexTuple(std::size_t rank, std::vector<YoungDiagram> diagrams)
    : rank_(rank), diagrams_(std::move(diagrams)) {
  if (rank_ == 0 || diagrams_.size() % rank_ != 0) raise(ErrorKind::InvalidStaircase, "tuple shape");
}

std::uint32_t VertexTuple::size() const {
  std::uint32_t s = 0;
  for (const auto& d : diagrams_) s += d.size();
  return s;
}

std::uint32_t VertexTuple::vertex_size(std::size_t v) const {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < rank_; ++i) s += at(v, i).size();
  return s;
}

namespace {

void compositions(std::size_t slots, std::uint32_t total, std::vector<std::uint32_t>& cur,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() + 1 == slots) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint32_t s = 0; s <= total; ++s) {
    cur.push_back(s);
    compositions(slots, total - s, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<YoungDiagram>> diagram_tuples(std::size_t slots, std::uint32_t total) {
  std::vector<std::vector<YoungDiagram>> out;
  if (slots == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<std::uint32_t> cur;
  compositions(slots, total, cur, comps);
  for (const auto& c : comps) {
    std::vector<const std::vector<YoungDiagram>*> lists;
    for (auto s : c) lists.push_back(&partitions_of(s));
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
      std::vector<YoungDiagram> t;
      t.reserve(slots);
      for (std::size_t i = 0; i < slots; ++i) t.push_back((*lists[i])[idx[i]]);
      out.push_back(std::move(t));
      std::size_t i = slots;
      while (i > 0) {
        --i;
        if (++idx[i] < lists[i]->size()) break;
        idx[i] = 0;
        if (i == 0) {
          i = slots + 1;
          break;
        }
      }
      if (i == slots + 1) break;
    }
  }
  return out;
}

TupleStream::TupleStream(std::size_t rank, std::size_t vertices, std::uint32_t max_boxes)
    : rank_(rank), vertices_(vertices), max_boxes_(max_boxes) {
  batch_ = diagram_tuples(rank_ * vertices_, 0);
}

std::optional<VertexTuple> TupleStream::next() {
  while (pos_ >= batch_.size()) {
    if (size_ >= max_boxes_) return std::nullopt;
    ++size_;
    batch_ = diagram_tuples(rank_ * vertices_, size_);
    pos_ = 0;
  }
  return VertexTuple(rank_, batch_[pos_++]);
}

}  // namespace coulomb
