#pragma once

// Exact counting by size, unlabeled and labeled. Tables memoizes per
// expression node and size; construction is single-writer, and after seal()
// the table is read-only and safe to share across threads.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "specc/analyzer.hpp"
#include "specc/grammar.hpp"
#include "specc/numbers.hpp"

namespace specc {

class Tables {
 public:
  // Runs the analyzer; throws AnalysisError if the system is rejected.
  // max_mb caps the total memo footprint (TableLimitError beyond it).
  explicit Tables(SpecSystem sys, std::size_t max_mb = 512);

  const SpecSystem& system() const { return sys_; }
  const AnalysisReport& analysis() const { return report_; }

  // Exact number of unlabeled structures of size n.
  Int count(std::string_view cls, long n);
  // Number of labeled structures on {1..n}; ModeError unless mode is labeled.
  Int count_labeled(std::string_view cls, long n);
  // [count(0), ..., count(N)] in the requested mode.
  std::vector<Int> series(std::string_view cls, long N, Mode mode);

  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }

  // Node-level queries (the enumerator is built on these).
  Int count_expr(const Expr* e, long n);
  // [x^n] A(x)^len for the argument series A of e.
  Int power_count(const Expr* arg, std::uint64_t len, long n);
  // Count of tuples for factors i.. of a Prod node at total size n.
  Int suffix_count(const Expr* prod, std::size_t i, long n);
  // Bounded-component (size-grouped) DP count for an MSet/PSet node; the
  // independent route cross-checking the Euler-transform path.
  Int count_by_components(const Expr* collection, long n);

  const Expr* def_of(std::string_view cls) const;  // throws if unknown
  // Effective cardinality range of a collection node at size n; Cycle minima
  // clamp to 1. Second component is inclusive.
  std::pair<std::uint64_t, std::uint64_t> card_bounds(const Expr* e, long n) const;
  // Valuation of a node as a size floor (a huge sentinel when infinite).
  // Every counting loop is valuation-bounded: that is what makes the
  // same-size recursion through 0-weight contexts well-founded.
  long val_floor(const Expr* e);

  // Number of coefficient computations performed (monotone-memoization tests).
  std::size_t computations() const { return computations_; }

 private:
  struct IntSeries {
    std::vector<Int> c;
    std::vector<char> ready;
  };
  struct RatSeries {
    std::vector<Rat> c;
    std::vector<char> ready;
  };

  Int coef(const Expr* e, long n);          // unlabeled
  Rat coef_labeled(const Expr* e, long n);  // EGF-normalized
  Int useq(const Expr* arg, long n);        // unrestricted Seq over arg
  Int euler_count(const Expr* e, long n);   // unrestricted MSet/PSet transform
  Int cycle_count(const Expr* e, long n);   // phi-formula / per-length Burnside
  Int grouped_dp_entry(const Expr* e, long n, long max_size, std::uint64_t parts);
  Rat power_hat(const Expr* arg, std::uint64_t len, long n);
  Rat useq_hat(const Expr* arg, long n);
  Rat exp_hat(const Expr* arg, long n);
  Rat suffix_hat(const Expr* prod, std::size_t i, long n);

  void charge(std::size_t bytes);
  void require_mutable() const;

  SpecSystem sys_;
  AnalysisReport report_;
  std::map<std::string, const Expr*, std::less<>> defs_;
  std::unordered_map<const Expr*, IntSeries> oseries_;
  std::unordered_map<const Expr*, RatSeries> eseries_;
  std::unordered_map<const Expr*, IntSeries> useq_;
  std::unordered_map<const Expr*, IntSeries> euler_;
  std::unordered_map<const Expr*, RatSeries> useq_hat_;
  std::unordered_map<const Expr*, RatSeries> exp_hat_;
  std::map<std::pair<const Expr*, std::uint64_t>, IntSeries> powers_;
  std::map<std::pair<const Expr*, std::uint64_t>, RatSeries> powers_hat_;
  std::map<std::pair<const Expr*, std::size_t>, IntSeries> suffixes_;
  std::map<std::pair<const Expr*, std::size_t>, RatSeries> suffixes_hat_;
  // grouped DP memo: (node, total size, max component size, parts used) -> count
  std::map<std::tuple<const Expr*, long, long, std::uint64_t>, Int> grouped_;
  std::unordered_map<const Expr*, long> vals_;
  bool sealed_ = false;
  std::size_t bytes_ = 0;
  std::size_t byte_limit_;
  std::size_t computations_ = 0;
};

}  // namespace specc
