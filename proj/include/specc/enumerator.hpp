#pragma once

// Canonical-order generation, rank/unrank bijections, and uniform random
// generation. The global order on structures of one expression is (size,
// rank within size); rank blocks are:
//   Union by branch; Prod by size composition (lex ascending), then factor
//   ranks mixed-radix with the leftmost factor most significant; Seq by
//   length then as Prod; MSet/PSet by greatest component ascending via the
//   bounded-component DP; Cycle by the induced Seq order on minimal
//   rotations (rank via the filter path, unrank unsupported).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string_view>
#include <tuple>
#include <vector>

#include "specc/counter.hpp"
#include "specc/generator.hpp"
#include "specc/numbers.hpp"
#include "specc/structure.hpp"

namespace specc {

class Enumerator {
 public:
  explicit Enumerator(Tables& tables);

  // Every structure of size n exactly once, strictly ascending in rank.
  // Lazy: consuming k items costs the k-prefix plus table work.
  Generator<StructPtr> iterate(std::string_view cls, long n);
  std::vector<StructPtr> list(std::string_view cls, long n,
                              std::optional<std::size_t> limit = std::nullopt);

  // Index of s within its size; MembershipError if s is not in cls.
  Int rank(std::string_view cls, const StructPtr& s);
  // The unique structure of size n with rank r; RangeError when r is out of
  // [0, count(n)), UnsupportedError when a Cycle node must be unranked.
  StructPtr unrank(std::string_view cls, long n, const Int& r);

  // unrank at a uniformly drawn rank; deterministic per seed.
  StructPtr random(std::string_view cls, long n, std::uint64_t seed);
  // Same, drawing from a caller-owned stream.
  StructPtr sample(std::string_view cls, long n, std::mt19937_64& gen);

  // Global order: negative/zero/positive like a three-way compare.
  int compare(const Expr* e, const StructPtr& a, const StructPtr& b);

  bool member(const StructPtr& s, std::string_view cls);
  bool member_expr(const StructPtr& s, const Expr* e);

  // Node-level operations (class-level calls resolve and delegate here).
  Generator<StructPtr> gen_expr(const Expr* e, long n);
  Int rank_expr(const Expr* e, const StructPtr& s);
  StructPtr unrank_expr(const Expr* e, long n, Int r);
  bool is_min_rotation(const Expr* arg, const std::vector<StructPtr>& children);

  // Components of a collection argument in global order (materialized lazily).
  StructPtr component(const Expr* arg, long index);
  long component_size(const Expr* arg, long index);
  long component_count_upto(const Expr* arg, long upto_size);

  Tables& tables() { return tables_; }

 private:
  struct ComponentCache {
    std::vector<StructPtr> comps;     // ascending (size, rank)
    std::vector<long> first_of_size;  // index of the first component per size
    long filled_size = 0;             // sizes <= this are materialized
  };

  ComponentCache& components(const Expr* arg, long upto_size);
  long component_index(const Expr* node, const StructPtr& child);
  // Bounded-component DP: canonical tuples of total size n, component index
  // <= gmax, with `used` components already placed upstream.
  Int mset_dp(const Expr* node, long n, long gmax, std::uint64_t used);
  Int rank_mset(const Expr* node, const std::vector<StructPtr>& children,
                std::size_t from, std::uint64_t used);
  std::vector<StructPtr> unrank_mset(const Expr* node, long n, long gmax,
                                     std::uint64_t used, Int r);

  Int draw_below(const Int& bound, std::mt19937_64& gen);

  Tables& tables_;
  std::map<const Expr*, ComponentCache> components_;
  std::map<std::tuple<const Expr*, long, long, std::uint64_t>, Int> mset_dp_;
};

}  // namespace specc
