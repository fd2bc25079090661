#include "coulomb/limit.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>

#include "coulomb/error.hpp"

namespace coulomb {

Direction draw_direction(const GeneratorSet& gens, std::uint64_t seed) {
  Direction d;
  d.seed = seed;
  d.weights.assign(gens.size(), 0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-997, 997);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens.at(i).role != GeneratorRole::Torus || gens.is_eliminated(i)) continue;
    std::int64_t w = 0;
    while (w == 0) w = dist(rng);
    d.weights[i] = w;
  }
  return d;
}

LimitSeries::LimitSeries(std::int32_t min_order, std::int32_t max_order)
    : min_(min_order), max_(max_order) {
  if (max_ >= min_) c_.resize(max_ - min_ + 1);
}

MassRational LimitSeries::coefficient(std::int32_t order) const {
  if (order < min_) return MassRational();
  if (order > max_) raise(ErrorKind::WindowTooSmall, "order " + std::to_string(order) + " beyond truncation");
  return c_[order - min_];
}

MassRational& LimitSeries::at(std::int32_t order) {
  if (order < min_ || order > max_) raise(ErrorKind::WindowTooSmall, "order outside window");
  return c_[order - min_];
}

LimitSeries& LimitSeries::operator+=(const LimitSeries& o) {
  if (o.empty()) return *this;
  if (empty()) return *this = o;
  LimitSeries r(std::min(min_, o.min_), std::min(max_, o.max_));
  for (std::int32_t k = r.min_; k <= r.max_; ++k) r.at(k) = coefficient(k) + o.coefficient(k);
  return *this = std::move(r);
}

LimitSeries operator*(const LimitSeries& a, const LimitSeries& b) {
  if (a.empty() || b.empty()) return LimitSeries();
  LimitSeries r(a.min_ + b.min_, std::min(a.max_ + b.min_, b.max_ + a.min_));
  for (std::int32_t i = a.min_; i <= a.max_; ++i) {
    const auto& ca = a.c_[i - a.min_];
    if (ca.is_zero()) continue;
    for (std::int32_t j = b.min_; j <= b.max_ && i + j <= r.max_; ++j) r.at(i + j) += ca * b.c_[j - b.min_];
  }
  return r;
}

LimitSeries& LimitSeries::operator*=(const mpq_class& k) {
  for (auto& c : c_) c *= k;
  return *this;
}

bool operator==(const LimitSeries& a, const LimitSeries& b) {
  const std::int32_t lo = std::min(a.min_, b.min_), hi = std::min(a.max_, b.max_);
  for (std::int32_t k = lo; k <= hi; ++k)
    if (!(a.coefficient(k) == b.coefficient(k))) return false;
  return true;
}

std::optional<std::int32_t> LimitSeries::first_negative_nonzero() const {
  for (std::int32_t k = min_; k <= std::min<std::int32_t>(max_, -1); ++k)
    if (!c_[k - min_].is_zero()) return k;
  return std::nullopt;
}

namespace {

SigmaPoly& add_into(SigmaPoly& a, const SigmaPoly& b, const mpq_class& k = 1) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += k * b[i];
  return a;
}

SigmaPoly multiply(const SigmaPoly& a, const SigmaPoly& b) {
  if (a.empty() || b.empty()) return {};
  SigmaPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// log of a series with unit constant term: g_n = f_n - (1/n) sum_{k<n} k g_k f_{n-k}
std::vector<SigmaPoly> series_log(const std::vector<SigmaPoly>& f) {
  std::vector<SigmaPoly> g(f.size());
  for (std::size_t n = 1; n < f.size(); ++n) {
    SigmaPoly acc = f[n];
    for (std::size_t k = 1; k < n; ++k) add_into(acc, multiply(g[k], f[n - k]), mpq_class(-static_cast<long>(k), static_cast<long>(n)));
    g[n] = std::move(acc);
  }
  return g;
}

struct LogTables {
  std::mutex mu;
  std::deque<mpq_class> lambda;
  std::deque<SigmaPoly> rho;

  void ensure(std::int32_t j) {
    if (static_cast<std::int32_t>(rho.size()) > j) return;
    const std::size_t n = std::max<std::size_t>(2 * (j + 1), 32);
    std::vector<SigmaPoly> s(n), r(n);
    mpq_class fact = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) fact *= static_cast<unsigned long>(i);
      const mpq_class inv = 1 / fact;
      r[i] = i % 2 == 0 ? SigmaPoly{inv} : SigmaPoly{0, inv};
    }
    fact = 1;
    for (std::size_t i = 0; i < n; ++i) {
      fact *= static_cast<unsigned long>(i + 1);  // (i+1)!
      s[i] = i % 2 == 0 ? SigmaPoly{1 / fact} : SigmaPoly{0};
    }
    auto ls = series_log(s), lr = series_log(r);
    lambda.clear();
    rho.clear();
    for (std::size_t i = 0; i < n; ++i) {
      lambda.push_back(ls[i].empty() ? mpq_class(0) : ls[i][0]);
      rho.push_back(lr[i]);
    }
  }
};

LogTables& tables() {
  static LogTables t;
  return t;
}

}  // namespace

const mpq_class& sinhc_log_coefficient(std::int32_t j) {
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  t.ensure(j);
  return t.lambda[j];
}

const SigmaPoly& mass_log_coefficient(std::int32_t j) {
  auto& t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  t.ensure(j);
  return t.rho[j];
}

LimitLog LimitLog::from(const mpq_class& coefficient, const BracketProduct& p, const Direction& d,
                        std::int32_t order_cap) {
  LimitLog r;
  r.prefactor_ = coefficient * p.sign();
  r.cap_ = order_cap;
  r.free_sums_.assign(order_cap, mpq_class(0));
  r.mass_sums_.assign(order_cap, mpq_class(0));
  if (coefficient == 0) return r;
  const auto& gens = *p.generators();
  for (const auto& [x, m] : p.factors()) {
    std::int64_t pairing = 0;
    std::int32_t mass = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (x[i] == 0) continue;
      switch (gens.at(i).role) {
        case GeneratorRole::Torus: pairing += d.weights.at(i) * x[i]; break;
        case GeneratorRole::Mass: mass += x[i]; break;
        case GeneratorRole::Coulomb:
          raise(ErrorKind::MalformedCharacter, "Coulomb parameter in limit factor <" + gens.format(x) + ">");
      }
    }
    mpq_class slope(pairing, 4);
    slope.canonicalize();
    if (mass == 0) {
      if (pairing == 0)
        raise(ErrorKind::NonGenericDirection, "factor <" + gens.format(x) + "> is constant along the direction");
      mpq_class base = 2 * slope, pw = 1;
      for (std::int64_t i = 0; i < std::abs(m); ++i) pw *= base;
      r.prefactor_ = m > 0 ? mpq_class(r.prefactor_ / pw) : mpq_class(r.prefactor_ * pw);
      r.valuation_ -= static_cast<std::int32_t>(m);
      mpq_class c = 1;
      for (std::int32_t j = 0; j < order_cap; ++j) {
        c *= slope;
        r.free_sums_[j] -= m * c;
      }
    } else if (mass == 2 || mass == -2) {
      if (mass < 0) {
        slope = -slope;
        if (m % 2 != 0) r.prefactor_ = -r.prefactor_;
      }
      r.mass_power_ -= static_cast<std::int32_t>(m);
      mpq_class c = 1;
      for (std::int32_t j = 0; j < order_cap; ++j) {
        c *= slope;
        r.mass_sums_[j] -= m * c;
      }
    } else {
      if (m > 0 || mass % 2 != 0)
        raise(ErrorKind::UnsupportedFactor, "mass power " + std::to_string(mass) + "/2 in <" + gens.format(x) + ">");
      r.direct_.push_back({mass, slope, -m});
    }
  }
  return r;
}

LimitLog& LimitLog::operator*=(const LimitLog& o) {
  prefactor_ *= o.prefactor_;
  valuation_ += o.valuation_;
  mass_power_ += o.mass_power_;
  cap_ = std::min(cap_, o.cap_);
  free_sums_.resize(cap_);
  mass_sums_.resize(cap_);
  for (std::int32_t j = 0; j < cap_; ++j) {
    free_sums_[j] += o.free_sums_[j];
    mass_sums_[j] += o.mass_sums_[j];
  }
  direct_.insert(direct_.end(), o.direct_.begin(), o.direct_.end());
  return *this;
}

std::vector<SigmaPoly> LimitLog::exponential(std::int32_t n) const {
  if (n > cap_)
    raise(ErrorKind::WindowTooSmall, "need " + std::to_string(n) + " orders, log form holds " + std::to_string(cap_));
  std::vector<SigmaPoly> e(n + 1), f(n + 1);
  for (std::int32_t j = 1; j <= n; ++j) {
    SigmaPoly ej{sinhc_log_coefficient(j) * free_sums_[j - 1]};
    add_into(ej, mass_log_coefficient(j), mass_sums_[j - 1]);
    e[j] = std::move(ej);
  }
  f[0] = {1};
  for (std::int32_t k = 1; k <= n; ++k) {
    SigmaPoly acc;
    for (std::int32_t j = 1; j <= k; ++j) add_into(acc, multiply(e[j], f[k - j]), mpq_class(j));
    for (auto& c : acc) c /= k;
    f[k] = std::move(acc);
  }
  return f;
}

MassRational sigma_to_mass(const SigmaPoly& p, std::int32_t bracket_power) {
  MassRational r, s_pow(1);
  const MassRational s = MassRational::curly();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s_pow *= s;
    if (p[i] == 0) continue;
    const std::int32_t shift = bracket_power - static_cast<std::int32_t>(i);
    r += MassRational(s_pow.even().shifted(shift), s_pow.odd().shifted(shift)) * p[i];
  }
  return r;
}

LimitSeries LimitLog::series(std::int32_t max_order) const {
  const std::int32_t n = max_order - valuation_;
  LimitSeries r(valuation_, max_order);
  if (n < 0 || prefactor_ == 0) return r;
  const auto f = exponential(n);
  for (std::int32_t i = 0; i <= n; ++i) r.at(valuation_ + i) = sigma_to_mass(f[i], mass_power_) * prefactor_;
  for (const auto& d : direct_) {
    // <x> = u^{P/2} e^y - u^{-P/2} e^{-y}, y = t C
    LimitSeries s(0, n);
    mpq_class c = 1;
    for (std::int32_t j = 0; j <= n; ++j) {
      if (j > 0) c = c * d.slope / j;
      const mpq_class minus = j % 2 == 0 ? mpq_class(-1) : mpq_class(1);
      s.at(j) = MassRational::from_u(LaurentPoly::from_terms({{d.mass_doubled / 2, c}, {-d.mass_doubled / 2, minus * c}}));
    }
    for (std::int64_t k = 0; k < d.power; ++k) r = r * s;
  }
  return r;
}

LimitSeries evaluate_limit(const BracketTerm& term, const Direction& d, std::int32_t max_order) {
  std::int64_t cap = max_order;
  for (const auto& [x, m] : term.factors.factors()) cap += std::max<std::int64_t>(m, 0);
  const auto log = LimitLog::from(term.coefficient, term.factors, d, static_cast<std::int32_t>(std::max<std::int64_t>(cap, 0)));
  return log.series(max_order);
}

SlotAccumulator::SlotAccumulator(std::int32_t min_order, std::int32_t max_order)
    : min_(min_order), max_(max_order), general_(min_order, max_order) {}

void SlotAccumulator::add(const LimitLog& term) {
  if (term.is_zero()) return;
  if (term.valuation() < min_)
    raise(ErrorKind::WindowTooSmall, "term of t-order " + std::to_string(term.valuation()) +
                                         " below window " + std::to_string(min_));
  if (term.has_direct_factors()) {
    general_ += term.series(max_);
    return;
  }
  const std::int32_t n = max_ - term.valuation();
  if (n < 0) return;
  const auto f = term.exponential(n);
  for (std::int32_t i = 0; i <= n; ++i) {
    if (f[i].empty()) continue;
    add_into(sigma_[term.valuation() + i][term.mass_power()], f[i], term.prefactor());
  }
}

void SlotAccumulator::add(const LimitSeries& s) { general_ += s; }

SlotAccumulator& SlotAccumulator::operator+=(const SlotAccumulator& o) {
  min_ = std::min(min_, o.min_);
  max_ = std::min(max_, o.max_);
  for (const auto& [order, by_power] : o.sigma_)
    for (const auto& [e, p] : by_power) add_into(sigma_[order][e], p);
  general_ += o.general_;
  return *this;
}

LimitSeries SlotAccumulator::result() const {
  LimitSeries r(min_, max_);
  r += general_;
  for (const auto& [order, by_power] : sigma_)
    if (order <= max_)
      for (const auto& [e, p] : by_power) r.at(order) += sigma_to_mass(p, e);
  return r;
}

}  // namespace coulomb
