#include "specc/counter.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

#include "specc/errors.hpp"

namespace specc {

namespace {

// Generic memo-backed series cell access. Returns true when already computed.
template <typename Series, typename Value>
bool lookup(const Series& s, long n, Value& out) {
  if (n < static_cast<long>(s.ready.size()) && s.ready[n]) {
    out = s.c[n];
    return true;
  }
  return false;
}

template <typename Series, typename Value>
void store(Series& s, long n, Value v) {
  if (static_cast<long>(s.c.size()) <= n) {
    s.c.resize(n + 1);
    s.ready.resize(n + 1, 0);
  }
  s.c[n] = std::move(v);
  s.ready[n] = 1;
}

constexpr long kInfiniteVal = std::numeric_limits<long>::max() / 4;

Int exact_div(const Int& num, const Int& den) {
  Int q, r;
  divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("inexact division in a counting transform");
  return q;
}

}  // namespace

Tables::Tables(SpecSystem sys, std::size_t max_mb)
    : sys_(std::move(sys)), byte_limit_(max_mb << 20) {
  report_ = check_well_founded(sys_);
  if (!report_.ok) {
    std::ostringstream os;
    os << "system rejected by analysis:";
    for (const auto& d : report_.diagnostics)
      if (d.severity == Severity::Error) os << "\n  " << render_diagnostic(d);
    throw AnalysisError(os.str());
  }
  for (const auto& [name, def] : sys_.defs) defs_.emplace(name, def.get());
}

const Expr* Tables::def_of(std::string_view cls) const {
  auto it = defs_.find(cls);
  if (it == defs_.end())
    throw QueryError("unknown class " + std::string(cls));
  return it->second;
}

void Tables::charge(std::size_t bytes) {
  bytes_ += bytes;
  if (bytes_ > byte_limit_)
    throw TableLimitError("count table exceeded its memory cap (" +
                          std::to_string(byte_limit_ >> 20) + " MB)");
}

void Tables::require_mutable() const {
  if (sealed_)
    throw std::logic_error("query needs entries beyond a sealed table");
}

std::pair<std::uint64_t, std::uint64_t> Tables::card_bounds(const Expr* e,
                                                            long n) const {
  std::uint64_t lo = e->card().min;
  if (e->kind() == ExprKind::Cycle) lo = std::max<std::uint64_t>(lo, 1);
  std::uint64_t cap = n < 0 ? 0 : static_cast<std::uint64_t>(n);
  std::uint64_t hi = e->card().max ? std::min(*e->card().max, cap) : cap;
  return {lo, hi};
}

long Tables::val_floor(const Expr* e) {
  if (auto it = vals_.find(e); it != vals_.end()) return it->second;
  auto v = report_.valuation.of_expr(*e);
  long floor = v ? static_cast<long>(*v) : kInfiniteVal;
  vals_.emplace(e, floor);
  return floor;
}

Int Tables::count(std::string_view cls, long n) {
  return count_expr(def_of(cls), n);
}

Int Tables::count_expr(const Expr* e, long n) {
  if (n < 0) return 0;
  // fill bottom-up so the recursion below stays shallow at any size
  for (long m = 0; m < n; ++m) coef(e, m);
  return coef(e, n);
}

Int Tables::count_labeled(std::string_view cls, long n) {
  if (sys_.mode != Mode::Labeled)
    throw ModeError("count_labeled requires a labeled-mode system");
  if (n < 0) return 0;
  const Expr* def = def_of(cls);
  for (long m = 0; m < n; ++m) coef_labeled(def, m);
  Rat normalized = coef_labeled(def, n);
  return exact_int(normalized * Rat(factorial(static_cast<std::uint64_t>(n))));
}

std::vector<Int> Tables::series(std::string_view cls, long N, Mode mode) {
  std::vector<Int> out;
  out.reserve(N + 1);
  for (long n = 0; n <= N; ++n)
    out.push_back(mode == Mode::Labeled ? count_labeled(cls, n) : count(cls, n));
  return out;
}

// ---------------------------------------------------------------------------
// Unlabeled counting (ordinary series coefficients)

Int Tables::coef(const Expr* e, long n) {
  if (n < 0 || val_floor(e) > n) return 0;
  {
    Int hit;
    auto it = oseries_.find(e);
    if (it != oseries_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();

  Int v = 0;
  switch (e->kind()) {
    case ExprKind::Epsilon:
      v = n == 0 ? 1 : 0;
      break;
    case ExprKind::Atom:
      v = n == 1 ? 1 : 0;
      break;
    case ExprKind::ClassRef:
      v = coef(def_of(e->name()), n);
      break;
    case ExprKind::Union:
      for (const auto& b : e->args()) v += coef(b.get(), n);
      break;
    case ExprKind::Prod:
      v = suffix_count(e, 0, n);
      break;
    case ExprKind::Seq: {
      auto [lo, hi] = card_bounds(e, n);
      const Expr* arg = e->arg().get();
      if (e->card().unrestricted()) {
        v = useq(arg, n);
      } else if (!e->card().max) {
        // card >= lo: A^lo * Seq(A)
        for (long j = 0; j <= n; ++j) {
          Int p = power_count(arg, lo, j);
          if (p != 0) v += p * useq(arg, n - j);
        }
      } else {
        for (std::uint64_t l = lo; l <= hi; ++l)
          v += power_count(arg, l, n);
      }
      break;
    }
    case ExprKind::MSet:
    case ExprKind::PSet: {
      const Restriction& r = e->card();
      if (!r.max && r.min <= 1) {
        v = n == 0 && r.min == 1 ? 0 : euler_count(e, n);
      } else {
        v = count_by_components(e, n);
      }
      break;
    }
    case ExprKind::Cycle:
      v = cycle_count(e, n);
      break;
  }

  auto& series = oseries_[e];
  store(series, n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Int Tables::useq(const Expr* arg, long n) {
  if (n < 0) return 0;
  {
    Int hit;
    auto it = useq_.find(arg);
    if (it != useq_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  Int v = 0;
  if (n == 0) {
    v = 1;
  } else {
    for (long k = std::max(1L, val_floor(arg)); k <= n; ++k) {
      Int a = coef(arg, k);
      if (a != 0) v += a * useq(arg, n - k);
    }
  }
  store(useq_[arg], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Int Tables::power_count(const Expr* arg, std::uint64_t len, long n) {
  if (n < 0) return 0;
  if (len == 0) return n == 0 ? 1 : 0;
  auto key = std::pair{arg, len};
  {
    Int hit;
    auto it = powers_.find(key);
    if (it != powers_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  Int v = 0;
  // collection arguments have valuation >= 1
  long lo = std::max(1L, val_floor(arg));
  for (long k = lo; k + (static_cast<long>(len) - 1) * lo <= n; ++k) {
    Int a = coef(arg, k);
    if (a != 0) v += a * power_count(arg, len - 1, n - k);
  }
  store(powers_[key], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Int Tables::suffix_count(const Expr* prod, std::size_t i, long n) {
  if (n < 0) return 0;
  const auto& factors = prod->args();
  if (i >= factors.size()) return n == 0 ? 1 : 0;
  if (i + 1 == factors.size()) return coef(factors[i].get(), n);
  auto key = std::pair{prod, i};
  {
    Int hit;
    auto it = suffixes_.find(key);
    if (it != suffixes_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  long tail_val = 0;
  for (std::size_t l = i + 1; l < factors.size(); ++l)
    tail_val += val_floor(factors[l].get());
  Int v = 0;
  for (long j = val_floor(factors[i].get()); j <= n - tail_val; ++j) {
    Int a = coef(factors[i].get(), j);
    if (a != 0) v += a * suffix_count(prod, i + 1, n - j);
  }
  store(suffixes_[key], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Int Tables::euler_count(const Expr* e, long n) {
  if (n < 0) return 0;
  {
    Int hit;
    auto it = euler_.find(e);
    if (it != euler_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  const Expr* arg = e->arg().get();
  bool pset = e->kind() == ExprKind::PSet;
  Int v;
  if (n == 0) {
    v = 1;
  } else {
    // n*b_n = sum_{k=1..n} c_k b_{n-k},
    // c_k = sum_{d|k} d*a_d  (MSet) or sum_{d|k} (-1)^{k/d+1} d*a_d  (PSet)
    Int acc = 0;
    for (long k = 1; k <= n; ++k) {
      Int ck = 0;
      for (std::uint64_t d : divisors(static_cast<std::uint64_t>(k))) {
        Int ad = coef(arg, static_cast<long>(d));
        if (ad == 0) continue;
        Int term = Int(d) * ad;
        if (pset && (static_cast<std::uint64_t>(k) / d) % 2 == 0) term = -term;
        ck += term;
      }
      if (ck != 0) acc += ck * euler_count(e, n - k);
    }
    v = exact_div(acc, Int(n));
  }
  store(euler_[e], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Int Tables::cycle_count(const Expr* e, long n) {
  if (n <= 0) return 0;  // a cycle has at least one component
  const Expr* arg = e->arg().get();
  auto [lo, hi] = card_bounds(e, n);
  if (lo == 1 && !e->card().max) {
    // b_n = sum_{k|n} (phi(k)/k) L_{n/k},  L(x) = sum_{m>=1} A(x)^m / m
    Rat total = 0;
    for (std::uint64_t k : divisors(static_cast<std::uint64_t>(n))) {
      long j = n / static_cast<long>(k);
      Rat L = 0;
      for (long m = 1; m <= j; ++m) {
        Int p = power_count(arg, static_cast<std::uint64_t>(m), j);
        if (p != 0) L += Rat(p, Int(m));
      }
      total += Rat(Int(euler_phi(k)), Int(k)) * L;
    }
    return exact_int(total);
  }
  // Card-restricted: per-length orbit count under rotation.
  Int total = 0;
  for (std::uint64_t l = lo; l <= hi; ++l) {
    Int orbit_sum = 0;
    for (std::uint64_t d : divisors(l)) {
      if (static_cast<std::uint64_t>(n) % d != 0) continue;
      Int fixed = power_count(arg, l / d, n / static_cast<long>(d));
      if (fixed != 0) orbit_sum += Int(euler_phi(d)) * fixed;
    }
    total += exact_div(orbit_sum, Int(l));
  }
  return total;
}

Int Tables::grouped_dp_entry(const Expr* e, long n, long max_size,
                             std::uint64_t parts) {
  if (n == 0) return parts == 0 ? 1 : 0;
  if (max_size <= 0 || parts == 0) return 0;
  auto key = std::tuple{e, n, max_size, parts};
  if (auto it = grouped_.find(key); it != grouped_.end()) return it->second;
  require_mutable();
  bool pset = e->kind() == ExprKind::PSet;
  std::optional<Int> types;  // fetched only for feasible splits
  Int total = 0;
  for (std::uint64_t m = 0; static_cast<long>(m) * max_size <= n && m <= parts; ++m) {
    Int sub = grouped_dp_entry(e, n - static_cast<long>(m) * max_size,
                               max_size - 1, parts - m);
    if (sub == 0) continue;
    if (m > 0 && !types) types = coef(e->arg().get(), max_size);
    Int ways = m == 0 ? Int(1)
                      : (pset ? binomial(*types, m) : multichoose(*types, m));
    if (ways == 0) continue;
    total += ways * sub;
  }
  grouped_.emplace(key, total);
  charge(approx_bytes(total) + 32);
  ++computations_;
  return total;
}

Int Tables::count_by_components(const Expr* e, long n) {
  if (n < 0) return 0;
  auto [lo, hi] = card_bounds(e, n);
  Int total = 0;
  for (std::uint64_t j = lo; j <= hi; ++j)
    total += grouped_dp_entry(e, n, n, j);
  return total;
}

// ---------------------------------------------------------------------------
// Labeled counting (exponential series, normalized coefficients)

Rat Tables::coef_labeled(const Expr* e, long n) {
  if (n < 0 || val_floor(e) > n) return 0;
  {
    Rat hit;
    auto it = eseries_.find(e);
    if (it != eseries_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();

  Rat v = 0;
  switch (e->kind()) {
    case ExprKind::Epsilon:
      v = n == 0 ? 1 : 0;
      break;
    case ExprKind::Atom:
      v = n == 1 ? 1 : 0;
      break;
    case ExprKind::ClassRef:
      v = coef_labeled(def_of(e->name()), n);
      break;
    case ExprKind::Union:
      for (const auto& b : e->args()) v += coef_labeled(b.get(), n);
      break;
    case ExprKind::Prod:
      v = suffix_hat(e, 0, n);
      break;
    case ExprKind::Seq: {
      auto [lo, hi] = card_bounds(e, n);
      const Expr* arg = e->arg().get();
      if (e->card().unrestricted()) {
        v = useq_hat(arg, n);
      } else if (!e->card().max) {
        for (long j = 0; j <= n; ++j) {
          Rat p = power_hat(arg, lo, j);
          if (p != 0) v += p * useq_hat(arg, n - j);
        }
      } else {
        for (std::uint64_t l = lo; l <= hi; ++l) v += power_hat(arg, l, n);
      }
      break;
    }
    case ExprKind::MSet: {
      // labeled Set
      const Expr* arg = e->arg().get();
      auto [lo, hi] = card_bounds(e, n);
      const Restriction& r = e->card();
      if (!r.max && r.min <= 1) {
        v = n == 0 && r.min == 1 ? 0 : exp_hat(arg, n);
      } else {
        for (std::uint64_t l = lo; l <= hi; ++l)
          v += power_hat(arg, l, n) / Rat(factorial(l));
      }
      break;
    }
    case ExprKind::Cycle: {
      const Expr* arg = e->arg().get();
      auto [lo, hi] = card_bounds(e, n);
      for (std::uint64_t l = lo; l <= hi; ++l)
        v += power_hat(arg, l, n) / Rat(Int(l));
      break;
    }
    case ExprKind::PSet:
      throw std::logic_error("PSet reached labeled counting");
  }

  store(eseries_[e], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Rat Tables::power_hat(const Expr* arg, std::uint64_t len, long n) {
  if (n < 0) return 0;
  if (len == 0) return n == 0 ? 1 : 0;
  auto key = std::pair{arg, len};
  {
    Rat hit;
    auto it = powers_hat_.find(key);
    if (it != powers_hat_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  Rat v = 0;
  long lo = std::max(1L, val_floor(arg));
  for (long k = lo; k + (static_cast<long>(len) - 1) * lo <= n; ++k) {
    Rat a = coef_labeled(arg, k);
    if (a != 0) v += a * power_hat(arg, len - 1, n - k);
  }
  store(powers_hat_[key], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Rat Tables::useq_hat(const Expr* arg, long n) {
  if (n < 0) return 0;
  {
    Rat hit;
    auto it = useq_hat_.find(arg);
    if (it != useq_hat_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  Rat v = 0;
  if (n == 0) {
    v = 1;
  } else {
    for (long k = std::max(1L, val_floor(arg)); k <= n; ++k) {
      Rat a = coef_labeled(arg, k);
      if (a != 0) v += a * useq_hat(arg, n - k);
    }
  }
  store(useq_hat_[arg], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Rat Tables::exp_hat(const Expr* arg, long n) {
  if (n < 0) return 0;
  {
    Rat hit;
    auto it = exp_hat_.find(arg);
    if (it != exp_hat_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  Rat v = 0;
  if (n == 0) {
    v = 1;
  } else {
    // n b_n = sum_{k=1..n} k a_k b_{n-k}
    for (long k = std::max(1L, val_floor(arg)); k <= n; ++k) {
      Rat a = coef_labeled(arg, k);
      if (a != 0) v += Rat(Int(k)) * a * exp_hat(arg, n - k);
    }
    v /= Rat(Int(n));
  }
  store(exp_hat_[arg], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

Rat Tables::suffix_hat(const Expr* prod, std::size_t i, long n) {
  if (n < 0) return 0;
  const auto& factors = prod->args();
  if (i >= factors.size()) return n == 0 ? 1 : 0;
  if (i + 1 == factors.size()) return coef_labeled(factors[i].get(), n);
  auto key = std::pair{prod, i};
  {
    Rat hit;
    auto it = suffixes_hat_.find(key);
    if (it != suffixes_hat_.end() && lookup(it->second, n, hit)) return hit;
  }
  require_mutable();
  long tail_val = 0;
  for (std::size_t l = i + 1; l < factors.size(); ++l)
    tail_val += val_floor(factors[l].get());
  Rat v = 0;
  for (long j = val_floor(factors[i].get()); j <= n - tail_val; ++j) {
    Rat a = coef_labeled(factors[i].get(), j);
    if (a != 0) v += a * suffix_hat(prod, i + 1, n - j);
  }
  store(suffixes_hat_[key], n, v);
  charge(approx_bytes(v));
  ++computations_;
  return v;
}

}  // namespace specc
