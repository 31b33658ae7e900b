#pragma once

// Linear recurrences with polynomial coefficients for counting sequences:
// guess-and-verify over exact rationals.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specc/counter.hpp"
#include "specc/numbers.hpp"

namespace specc {

// sum_{i=0..order} p[i](n) * u(n - i) = 0 for all n >= order, where u indexes
// the sequence with leading zero terms trimmed (trimmed count recorded).
// Normalized: integer coefficients of content 1, leading coefficient of p[0]
// positive; p[0] not identically zero.
struct Recurrence {
  int order = 0;
  int degree = 0;                       // max degree over the p[i]
  std::vector<std::vector<Int>> coeffs;  // coeffs[i][j] = coefficient of n^j in p[i]
  int trimmed_zeros = 0;

  bool operator==(const Recurrence& other) const {
    return order == other.order && coeffs == other.coeffs;
  }
};

// "(n + 1)*u(n) - 2*(2*n - 1)*u(n - 1) = 0"
std::string render_recurrence(const Recurrence& rec);

// Minimal (order, then degree) recurrence fitting the terms exactly and
// annihilating the holdout tail; nullopt when none survives.
// Requires at least (max_order+1)*(max_degree+1) + max_order + holdout
// usable terms after trimming, holdout = 2*(max_order + max_degree);
// otherwise InsufficientTermsError.
std::optional<Recurrence> guess_recurrence(std::span<const Int> terms,
                                           int max_order, int max_degree);

// True iff the relation holds at every applicable index (vacuously true when
// fewer than order+1 usable terms).
bool verify(const Recurrence& rec, std::span<const Int> terms);

// series(N) piped through guess_recurrence, then verify on all N+1 terms.
std::optional<Recurrence> recurrence_for(Tables& tables, std::string_view cls,
                                         long N, int max_order, int max_degree,
                                         Mode mode);

}  // namespace specc
