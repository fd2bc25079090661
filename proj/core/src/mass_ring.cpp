#include "coulomb/mass_ring.hpp"

#include <algorithm>
#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

LaurentPoly LaurentPoly::monomial(std::int32_t exponent, const mpq_class& c) {
  LaurentPoly p;
  if (c == 0) return p;
  p.low_ = exponent;
  p.c_.push_back(c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::pair<std::int32_t, mpq_class>>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p += monomial(e, c);
  return p;
}

void LaurentPoly::trim() {
  std::size_t a = 0;
  while (a < c_.size() && c_[a] == 0) ++a;
  if (a == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  std::size_t b = c_.size();
  while (c_[b - 1] == 0) --b;
  if (a > 0 || b < c_.size()) c_ = std::vector<mpq_class>(c_.begin() + a, c_.begin() + b);
  low_ += static_cast<std::int32_t>(a);
}

mpq_class LaurentPoly::coefficient(std::int32_t e) const {
  if (c_.empty() || e < low_ || e > high()) return 0;
  return c_[e - low_];
}

std::vector<std::pair<std::int32_t, mpq_class>> LaurentPoly::terms() const {
  std::vector<std::pair<std::int32_t, mpq_class>> r;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) r.emplace_back(low_ + static_cast<std::int32_t>(i), c_[i]);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const std::int32_t lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
  if (lo < low_) c_.insert(c_.begin(), low_ - lo, mpq_class(0));
  low_ = lo;
  c_.resize(hi - lo + 1, mpq_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[o.low_ - lo + i] += o.c_[i];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const mpq_class& k) {
  if (k == 0) {
    c_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& c : c_) c *= k;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::shifted(std::int32_t by) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += by;
  return r;
}

LaurentPoly LaurentPoly::reflected() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.low_ = -high();
  r.c_.assign(c_.rbegin(), c_.rend());
  return r;
}

LaurentPoly LaurentPoly::substituted_negative() const {
  LaurentPoly r = *this;
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    if (((r.low_ + static_cast<std::int64_t>(i)) % 2 + 2) % 2 == 1) r.c_[i] = -r.c_[i];
  return r;
}

mpq_class LaurentPoly::evaluate(const mpq_class& x) const {
  if (is_zero()) return 0;
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  mpq_class p = 1, base = low_ >= 0 ? x : mpq_class(1 / x);
  for (std::int32_t i = 0; i < std::abs(low_); ++i) p *= base;
  return acc * p;
}

std::optional<LaurentPoly> LaurentPoly::divide_by_antisymmetric_unit() const {
  // x^low p(x) / (x - 1/x) = x^{low+1} p(x) / (x^2 - 1)
  if (is_zero()) return *this;
  const std::size_t d = c_.size() - 1;
  if (d < 2) return std::nullopt;
  std::vector<mpq_class> r(d - 1, mpq_class(0));
  for (std::size_t i = d; i >= 2; --i) r[i - 2] = c_[i] + (i + 2 <= d ? r[i] : mpq_class(0));
  const mpq_class r0 = r[0], r1 = r.size() > 1 ? r[1] : mpq_class(0);
  if (c_[0] + r0 != 0 || c_[1] + r1 != 0) return std::nullopt;
  LaurentPoly q;
  q.low_ = low_ + 1;
  q.c_ = std::move(r);
  q.trim();
  return q;
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const auto& c = c_[i];
    if (c == 0) continue;
    const std::int32_t e = low_ + static_cast<std::int32_t>(i);
    mpq_class a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << var;
    if (e != 1) os << '^' << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return os.str();
}

MassRational::MassRational(const mpq_class& c) : even_(LaurentPoly::monomial(0, c)) {}

MassRational::MassRational(LaurentPoly even, LaurentPoly odd)
    : even_(std::move(even)), odd_(std::move(odd)) {}

MassRational MassRational::bracket_power(std::int32_t d) {
  return MassRational(LaurentPoly::monomial(d), LaurentPoly());
}

MassRational MassRational::curly() { return MassRational(LaurentPoly(), LaurentPoly::monomial(0)); }

MassRational MassRational::from_u(const LaurentPoly& u_poly) {
  // u = (<M> + {M})/2, 1/u = ({M} - <M>)/2
  const MassRational up(LaurentPoly::monomial(1, mpq_class(1, 2)), LaurentPoly::monomial(0, mpq_class(1, 2)));
  const MassRational down(LaurentPoly::monomial(1, mpq_class(-1, 2)), LaurentPoly::monomial(0, mpq_class(1, 2)));
  MassRational r;
  for (const auto& [e, c] : u_poly.terms()) {
    MassRational t(c);
    const MassRational& step = e >= 0 ? up : down;
    for (std::int32_t i = 0; i < std::abs(e); ++i) t *= step;
    r += t;
  }
  return r;
}

MassRational& MassRational::operator+=(const MassRational& o) {
  even_ += o.even_;
  odd_ += o.odd_;
  return *this;
}

MassRational& MassRational::operator-=(const MassRational& o) {
  even_ -= o.even_;
  odd_ -= o.odd_;
  return *this;
}

MassRational& MassRational::operator*=(const MassRational& o) {
  // (A + sB)(C + sD) = AC + (b^2 + 4) BD + s (AD + BC)
  const LaurentPoly bd = odd_ * o.odd_;
  LaurentPoly e = even_ * o.even_ + bd.shifted(2) + bd * mpq_class(4);
  LaurentPoly d = even_ * o.odd_ + odd_ * o.even_;
  even_ = std::move(e);
  odd_ = std::move(d);
  return *this;
}

MassRational& MassRational::operator*=(const mpq_class& k) {
  even_ *= k;
  odd_ *= k;
  return *this;
}

MassRational MassRational::operator-() const { return MassRational(-even_, -odd_); }

MassRational MassRational::mirrored() const {
  return MassRational(even_.substituted_negative(), odd_.substituted_negative());
}

std::optional<LaurentPoly> MassRational::to_u() const {
  if (is_zero()) return LaurentPoly();
  std::int32_t d = 0;
  if (!even_.is_zero()) d = std::max(d, -even_.low());
  if (!odd_.is_zero()) d = std::max(d, -odd_.low());
  const LaurentPoly b = LaurentPoly::from_terms({{1, 1}, {-1, -1}});
  const LaurentPoly s = LaurentPoly::from_terms({{1, 1}, {-1, 1}});
  auto horner = [&](const LaurentPoly& p) {
    LaurentPoly acc;
    if (p.is_zero()) return acc;
    for (std::int32_t e = p.high(); e >= p.low(); --e) acc = acc * b + LaurentPoly::monomial(0, p.coefficient(e));
    // acc = p(b) * b^{-low}; restore the shift by b^{low + d}
    for (std::int32_t i = 0; i < p.low() + d; ++i) acc = acc * b;
    return acc;
  };
  LaurentPoly n = horner(even_) + s * horner(odd_);
  for (std::int32_t i = 0; i < d; ++i) {
    auto q = n.divide_by_antisymmetric_unit();
    if (!q) return std::nullopt;
    n = std::move(*q);
  }
  return n;
}

mpq_class MassRational::evaluate(const mpq_class& u) const {
  const mpq_class b = u - 1 / u, s = u + 1 / u;
  return even_.evaluate(b) + s * odd_.evaluate(b);
}

std::string format_mass_polynomial(const LaurentPoly& u_poly) {
  if (u_poly.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto terms = u_poly.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    const mpq_class a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << 'M';
    if (e == 2) continue;
    if (e % 2 == 0 && e > 0)
      os << '^' << e / 2;
    else if (e % 2 == 0)
      os << "^(" << e / 2 << ')';
    else
      os << "^(" << e << "/2)";
  }
  return os.str();
}

std::string MassRational::to_string() const {
  if (auto u = to_u()) return format_mass_polynomial(*u);
  std::ostringstream os;
  os << '(' << even_.to_string("<M>") << ") + {M}*(" << odd_.to_string("<M>") << ')';
  return os.str();
}

}  // namespace coulomb
