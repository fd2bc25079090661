#include "coulomb/flux.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "coulomb/error.hpp"

namespace coulomb {

std::int64_t top_instanton_number(const ToricSurface& s, const FluxTuple& xi) {
  std::int64_t n = 0;
  for (const auto& x : xi) n += s.euler_characteristic_of_class(x);
  return n;
}

IntVector doubled_m(const ToricSurface& s, const FluxTuple& xi) {
  IntVector m2 = s.anticanonical_class();
  for (auto& c : m2) c *= static_cast<std::int64_t>(xi.size());
  for (const auto& x : xi)
    for (std::size_t a = 0; a < m2.size(); ++a) m2[a] += 2 * x[a];
  return m2;
}

Weight classical_weight(const ToricSurface& s, const FluxTuple& xi, std::uint32_t boxes) {
  return {doubled_m(s, xi), top_instanton_number(s, xi) - static_cast<std::int64_t>(boxes)};
}

bool StabilityFilter::admits(const FluxTuple& xi) const {
  for (std::size_t i = 1; i < xi.size(); ++i) {
    mpq_class a = 0, b = 0;
    for (std::size_t al = 0; al < kahler.size(); ++al) {
      a += kahler[al] * xi[i - 1][al];
      b += kahler[al] * xi[i][al];
    }
    if (a < b) return false;
    if (a == b && xi[i - 1] < xi[i]) return false;
  }
  return true;
}

bool is_effective(const ToricSurface& s, const IntVector& xi) {
  const auto& q = s.charges().surface;
  for (const auto& row : q)
    for (auto c : row)
      if (c < 0) raise(ErrorKind::UnsupportedGeometry, "flux enumeration needs nonnegative surface charges");
  for (auto x : xi)
    if (x < 0) return false;
  std::set<IntVector> seen;
  std::function<bool(const IntVector&)> reach = [&](const IntVector& left) {
    bool zero = true;
    for (auto x : left) zero = zero && x == 0;
    if (zero) return true;
    if (!seen.insert(left).second) return false;
    for (std::size_t c = 0; c < s.divisors(); ++c) {
      IntVector next = left;
      bool ok = true;
      for (std::size_t a = 0; a < next.size(); ++a) {
        next[a] -= q[a][c];
        ok = ok && next[a] >= 0;
      }
      if (ok && next != left && reach(next)) return true;
    }
    return false;
  };
  return reach(xi);
}

std::vector<FluxTuple> enumerate_fluxes(const ToricSurface& s, std::size_t rank, const IntVector& m2,
                                        const StabilityFilter& filter) {
  const std::size_t b2 = s.picard_rank();
  if (m2.size() != b2) raise(ErrorKind::Config, "m has one entry per Kähler class");
  IntVector total(b2);
  const IntVector c1 = s.anticanonical_class();
  for (std::size_t a = 0; a < b2; ++a) {
    const std::int64_t twice = m2[a] - static_cast<std::int64_t>(rank) * c1[a];
    if (twice < 0 || twice % 2 != 0) return {};
    total[a] = twice / 2;
  }
  // effective classes bounded by total
  std::vector<IntVector> classes;
  IntVector cur(b2, 0);
  std::function<void(std::size_t)> box = [&](std::size_t a) {
    if (a == b2) {
      if (is_effective(s, cur)) classes.push_back(cur);
      return;
    }
    for (std::int64_t x = 0; x <= total[a]; ++x) {
      cur[a] = x;
      box(a + 1);
    }
  };
  box(0);
  std::vector<FluxTuple> out;
  FluxTuple tuple;
  std::function<void(std::size_t, IntVector)> place = [&](std::size_t i, IntVector left) {
    if (i + 1 == rank) {
      if (!is_effective(s, left)) return;
      tuple.push_back(left);
      if (filter.admits(tuple)) out.push_back(tuple);
      tuple.pop_back();
      return;
    }
    for (const auto& c : classes) {
      IntVector rest = left;
      bool ok = true;
      for (std::size_t a = 0; a < b2; ++a) {
        rest[a] -= c[a];
        ok = ok && rest[a] >= 0;
      }
      if (!ok) continue;
      tuple.push_back(c);
      place(i + 1, rest);
      tuple.pop_back();
    }
  };
  place(0, total);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::string format_flux(const FluxTuple& xi) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (i) os << ',';
    if (xi[i].size() == 1) {
      os << xi[i][0];
      continue;
    }
    os << '[';
    for (std::size_t a = 0; a < xi[i].size(); ++a) os << (a ? "," : "") << xi[i][a];
    os << ']';
  }
  os << ')';
  return os.str();
}

}  // namespace coulomb
