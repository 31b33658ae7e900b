#pragma once

// Exact arithmetic used throughout: arbitrary-precision integers for all
// counts and ranks, rationals for the cycle/labeled intermediates.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace specc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(std::uint64_t n) {
  Int r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// binomial(n, k) with a possibly huge n (used by the grouped multiset DP,
// where n is a structure count).
inline Int binomial(const Int& n, std::uint64_t k) {
  if (n < 0) return 0;
  if (k == 0) return 1;
  if (n < Int(k)) return 0;
  Int num = 1;
  for (std::uint64_t i = 0; i < k; ++i) num *= n - Int(i);
  return num / factorial(k);
}

// multichoose(n, k) = binomial(n + k - 1, k): multisets of k items from n types.
inline Int multichoose(const Int& n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n <= 0) return 0;
  return binomial(n + Int(k) - 1, k);
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Exact integer from a rational; the counting formulas guarantee integrality,
// a non-unit denominator here means the engine is broken.
inline Int exact_int(const Rat& r) {
  if (denominator(r) != 1)
    throw std::logic_error("non-integral count from an exact formula");
  return numerator(r);
}

// Rough heap footprint of a big integer, for the table memory cap.
inline std::size_t approx_bytes(const Int& v) {
  std::size_t bits = v == 0 ? 1 : msb(v < 0 ? Int(-v) : v) + 1;
  return 48 + bits / 8;
}

inline std::size_t approx_bytes(const Rat& v) {
  return approx_bytes(numerator(v)) + approx_bytes(denominator(v));
}

}  // namespace specc
