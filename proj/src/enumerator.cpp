#include "specc/enumerator.hpp"

#include <algorithm>
#include <cassert>

#include "specc/errors.hpp"

namespace specc {

namespace {

// Factors of a product-like block: a Prod node's factor list, or `len` copies
// of a collection argument (Seq length block, Cycle underlying sequences).
struct FactorView {
  const Expr* node = nullptr;
  std::vector<const Expr*> factors;
  bool uniform = false;  // all factors are node->arg()
};

FactorView prod_view(const Expr* node) {
  FactorView fv{node, {}, false};
  for (const auto& f : node->args()) fv.factors.push_back(f.get());
  return fv;
}

FactorView uniform_view(const Expr* node, std::uint64_t len) {
  FactorView fv{node, {}, true};
  fv.factors.assign(len, node->arg().get());
  return fv;
}

}  // namespace

Enumerator::Enumerator(Tables& tables) : tables_(tables) {}

// Count of tuples for factors i.. of the view at total size m.
static Int view_suffix(Tables& t, const FactorView& fv, std::size_t i, long m) {
  if (fv.uniform)
    return t.power_count(fv.node->arg().get(),
                         static_cast<std::uint64_t>(fv.factors.size() - i), m);
  return t.suffix_count(fv.node, i, m);
}

// ---------------------------------------------------------------------------
// Iteration

Generator<std::vector<long>> gen_compositions(Tables* t, FactorView fv,
                                              std::size_t i, long rem) {
  if (i == fv.factors.size()) {
    if (rem == 0) co_yield {};
    co_return;
  }
  if (i + 1 == fv.factors.size()) {
    if (t->count_expr(fv.factors[i], rem) != 0)
      co_yield std::vector<long>{rem};
    co_return;
  }
  for (long j = 0; j <= rem; ++j) {
    if (t->count_expr(fv.factors[i], j) == 0) continue;
    if (view_suffix(*t, fv, i + 1, rem - j) == 0) continue;
    auto rest = gen_compositions(t, fv, i + 1, rem - j);
    for (auto& tail : rest) {
      std::vector<long> comp;
      comp.reserve(fv.factors.size() - i);
      comp.push_back(j);
      comp.insert(comp.end(), tail.begin(), tail.end());
      co_yield comp;
    }
  }
}

// Composition-major order: all structures of a lex-smaller size composition
// precede any of a lex-larger one; within a composition the leftmost factor
// rank is most significant (factor 1 runs in the outermost loop).
Generator<std::vector<StructPtr>> gen_odometer(Enumerator* en,
                                               std::vector<const Expr*> factors,
                                               std::vector<long> comp,
                                               std::size_t i) {
  if (i == factors.size()) {
    co_yield {};
    co_return;
  }
  auto heads = en->gen_expr(factors[i], comp[i]);
  for (auto& head : heads) {
    auto tails = gen_odometer(en, factors, comp, i + 1);
    for (auto& tail : tails) {
      std::vector<StructPtr> out;
      out.reserve(factors.size() - i);
      out.push_back(head);
      out.insert(out.end(), tail.begin(), tail.end());
      co_yield out;
    }
  }
}

Generator<std::vector<StructPtr>> gen_tuple_view(Enumerator* en, Tables* t,
                                                 FactorView fv, long n) {
  auto comps = gen_compositions(t, fv, 0, n);
  for (auto& comp : comps) {
    auto tuples = gen_odometer(en, fv.factors, comp, 0);
    for (auto& tup : tuples) co_yield tup;
  }
}

Generator<std::vector<StructPtr>> gen_mset_rec(Enumerator* en, const Expr* node,
                                               long n, long gmax,
                                               std::uint64_t used) {
  const Restriction& r = node->card();
  if (n == 0) {
    if (used >= r.min) co_yield {};
    co_return;
  }
  if (r.max && used + 1 > *r.max) co_return;
  bool pset = node->kind() == ExprKind::PSet;
  for (long h = 0; h <= gmax; ++h) {
    long sz = en->component_size(node->arg().get(), h);
    if (sz > n) break;  // components are size-sorted
    StructPtr comp = en->component(node->arg().get(), h);
    auto tails = gen_mset_rec(en, node, n - sz, pset ? h - 1 : h, used + 1);
    for (auto& tail : tails) {
      std::vector<StructPtr> out;
      out.reserve(tail.size() + 1);
      out.push_back(comp);
      out.insert(out.end(), tail.begin(), tail.end());
      co_yield out;
    }
  }
}

Generator<StructPtr> Enumerator::gen_expr(const Expr* e, long n) {
  switch (e->kind()) {
    case ExprKind::Epsilon:
      if (n == 0) co_yield Structure::epsilon();
      co_return;
    case ExprKind::Atom:
      if (n == 1) co_yield Structure::atom(e->name());
      co_return;
    case ExprKind::ClassRef: {
      auto inner = gen_expr(tables_.def_of(e->name()), n);
      for (auto& s : inner) co_yield s;
      co_return;
    }
    case ExprKind::Union: {
      for (std::size_t i = 0; i < e->args().size(); ++i) {
        auto inner = gen_expr(e->args()[i].get(), n);
        for (auto& s : inner) co_yield Structure::uni(i, s);
      }
      co_return;
    }
    case ExprKind::Prod: {
      auto tuples = gen_tuple_view(this, &tables_, prod_view(e), n);
      for (auto& tup : tuples) co_yield Structure::prod(std::move(tup));
      co_return;
    }
    case ExprKind::Seq: {
      auto [lo, hi] = tables_.card_bounds(e, n);
      for (std::uint64_t l = lo; l <= hi; ++l) {
        if (tables_.power_count(e->arg().get(), l, n) == 0) continue;
        auto tuples = gen_tuple_view(this, &tables_, uniform_view(e, l), n);
        for (auto& tup : tuples) co_yield Structure::seq(std::move(tup));
      }
      co_return;
    }
    case ExprKind::MSet:
    case ExprKind::PSet: {
      components(e->arg().get(), n);
      long gmax = component_count_upto(e->arg().get(), n) - 1;
      auto tuples = gen_mset_rec(this, e, n, gmax, 0);
      for (auto& tup : tuples)
        co_yield e->kind() == ExprKind::MSet ? Structure::mset(std::move(tup))
                                             : Structure::pset(std::move(tup));
      co_return;
    }
    case ExprKind::Cycle: {
      // Seq order on the underlying sequences, filtered to minimal rotations.
      auto [lo, hi] = tables_.card_bounds(e, n);
      for (std::uint64_t l = lo; l <= hi; ++l) {
        if (tables_.power_count(e->arg().get(), l, n) == 0) continue;
        auto tuples = gen_tuple_view(this, &tables_, uniform_view(e, l), n);
        for (auto& tup : tuples) {
          if (is_min_rotation(e->arg().get(), tup))
            co_yield Structure::cycle(std::move(tup));
        }
      }
      co_return;
    }
  }
}

Generator<StructPtr> Enumerator::iterate(std::string_view cls, long n) {
  if (tables_.system().mode == Mode::Labeled)
    throw ModeError("iteration is defined for unlabeled systems only");
  return gen_expr(tables_.def_of(cls), n);
}

std::vector<StructPtr> Enumerator::list(std::string_view cls, long n,
                                        std::optional<std::size_t> limit) {
  std::vector<StructPtr> out;
  auto gen = iterate(cls, n);
  for (auto& s : gen) {
    if (limit && out.size() >= *limit) break;
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Components of a collection argument, ascending in (size, rank)

Enumerator::ComponentCache& Enumerator::components(const Expr* arg, long upto_size) {
  ComponentCache& cache = components_[arg];
  while (cache.filled_size < upto_size) {
    long s = cache.filled_size + 1;
    cache.first_of_size.push_back(static_cast<long>(cache.comps.size()));
    auto gen = gen_expr(arg, s);
    for (auto& st : gen) cache.comps.push_back(st);
    cache.filled_size = s;
  }
  return cache;
}

long Enumerator::component_count_upto(const Expr* arg, long upto_size) {
  return static_cast<long>(components(arg, upto_size).comps.size());
}

StructPtr Enumerator::component(const Expr* arg, long index) {
  ComponentCache& cache = components_[arg];
  return cache.comps.at(index);
}

long Enumerator::component_size(const Expr* arg, long index) {
  ComponentCache& cache = components_[arg];
  return cache.comps.at(index)->size();
}

long Enumerator::component_index(const Expr* node, const StructPtr& child) {
  const Expr* arg = node->arg().get();
  long s = child->size();
  ComponentCache& cache = components(arg, s);
  long base = cache.first_of_size.at(s - 1);
  Int local = rank_expr(arg, child);
  return base + static_cast<long>(local);
}

// ---------------------------------------------------------------------------
// Bounded-component DP for MSet/PSet rank and unrank

Int Enumerator::mset_dp(const Expr* node, long n, long gmax, std::uint64_t used) {
  const Restriction& r = node->card();
  if (n == 0) return used >= r.min ? 1 : 0;
  if (gmax < 0) return 0;
  if (r.max && used + 1 > *r.max) return 0;
  // without an upper bound, only min(used, min_card) matters
  std::uint64_t key_used = r.max ? used : std::min<std::uint64_t>(used, r.min);
  auto key = std::tuple{node, n, gmax, key_used};
  if (auto it = mset_dp_.find(key); it != mset_dp_.end()) return it->second;
  bool pset = node->kind() == ExprKind::PSet;
  Int v = mset_dp(node, n, gmax - 1, used);
  long sz = component_size(node->arg().get(), gmax);
  if (sz <= n)
    v += mset_dp(node, n - sz, pset ? gmax - 1 : gmax, used + 1);
  mset_dp_.emplace(key, v);
  return v;
}

// ---------------------------------------------------------------------------
// Rank

static Int rank_tuple(Enumerator& en, const FactorView& fv,
                      const std::vector<StructPtr>& children) {
  Tables& t = en.tables();
  long n = 0;
  for (const auto& c : children) n += c->size();
  // structures in lex-smaller compositions
  Int before = 0;
  Int prefix_product = 1;
  long rem = n;
  for (std::size_t i = 0; i < fv.factors.size(); ++i) {
    long ni = children[i]->size();
    for (long m = 0; m < ni; ++m) {
      Int cm = t.count_expr(fv.factors[i], m);
      if (cm == 0) continue;
      Int sfx = view_suffix(t, fv, i + 1, rem - m);
      if (sfx == 0) continue;
      before += prefix_product * cm * sfx;
    }
    prefix_product *= t.count_expr(fv.factors[i], ni);
    rem -= ni;
  }
  // mixed radix within the composition, leftmost most significant
  Int within = 0;
  for (std::size_t i = 0; i < fv.factors.size(); ++i) {
    within *= t.count_expr(fv.factors[i], children[i]->size());
    within += en.rank_expr(fv.factors[i], children[i]);
  }
  return before + within;
}

Int Enumerator::rank_mset(const Expr* node,
                          const std::vector<StructPtr>& children,
                          std::size_t from, std::uint64_t used) {
  if (from == children.size()) return 0;
  long n = 0;
  for (std::size_t i = from; i < children.size(); ++i) n += children[i]->size();
  bool pset = node->kind() == ExprKind::PSet;
  long h = component_index(node, children[from]);
  Int r = 0;
  for (long g = 0; g < h; ++g) {
    long sz = component_size(node->arg().get(), g);
    if (sz > n) break;
    r += mset_dp(node, n - sz, pset ? g - 1 : g, used + 1);
  }
  return r + rank_mset(node, children, from + 1, used + 1);
}

Int Enumerator::rank_expr(const Expr* e, const StructPtr& s) {
  switch (e->kind()) {
    case ExprKind::Epsilon:
    case ExprKind::Atom:
      return 0;
    case ExprKind::ClassRef:
      return rank_expr(tables_.def_of(e->name()), s);
    case ExprKind::Union: {
      Int r = 0;
      for (std::size_t j = 0; j < s->branch(); ++j)
        r += tables_.count_expr(e->args()[j].get(), s->size());
      return r + rank_expr(e->args()[s->branch()].get(), s->children()[0]);
    }
    case ExprKind::Prod:
      return rank_tuple(*this, prod_view(e), s->children());
    case ExprKind::Seq: {
      auto [lo, hi] = tables_.card_bounds(e, s->size());
      std::uint64_t l = s->children().size();
      Int r = 0;
      for (std::uint64_t l2 = lo; l2 < l; ++l2)
        r += tables_.power_count(e->arg().get(), l2, s->size());
      return r + rank_tuple(*this, uniform_view(e, l), s->children());
    }
    case ExprKind::MSet:
    case ExprKind::PSet: {
      components(e->arg().get(), s->size());
      return rank_mset(e, s->children(), 0, 0);
    }
    case ExprKind::Cycle: {
      // filter path: scan the canonical order (desk-scale)
      long n = s->size();
      Int r = 0;
      auto gen = gen_expr(e, n);
      for (auto& t : gen) {
        if (*t == *s) return r;
        ++r;
      }
      throw MembershipError("structure not found in its cycle class");
    }
  }
  throw std::logic_error("unhandled expression kind in rank");
}

Int Enumerator::rank(std::string_view cls, const StructPtr& s) {
  if (tables_.system().mode == Mode::Labeled)
    throw ModeError("rank is defined for unlabeled systems only");
  if (!member(s, cls))
    throw MembershipError("structure is not a member of class " + std::string(cls));
  return rank_expr(tables_.def_of(cls), s);
}

// ---------------------------------------------------------------------------
// Unrank

static std::vector<StructPtr> unrank_tuple(Enumerator& en, const FactorView& fv,
                                           long n, Int r) {
  Tables& t = en.tables();
  std::size_t k = fv.factors.size();
  std::vector<long> comp(k, 0);
  Int prefix_product = 1;
  long rem = n;
  for (std::size_t i = 0; i < k; ++i) {
    bool found = false;
    for (long m = 0; m <= rem; ++m) {
      Int cm = t.count_expr(fv.factors[i], m);
      if (cm == 0) continue;
      Int sfx = view_suffix(t, fv, i + 1, rem - m);
      if (sfx == 0) continue;
      Int blk = prefix_product * cm * sfx;
      if (r < blk) {
        comp[i] = m;
        prefix_product *= cm;
        rem -= m;
        found = true;
        break;
      }
      r -= blk;
    }
    if (!found) throw std::logic_error("tuple unrank walked off its blocks");
  }
  // r < prefix_product: decompose, leftmost most significant
  std::vector<Int> weights(k, 1);
  for (std::size_t i = k; i-- > 1;)
    weights[i - 1] = weights[i] * t.count_expr(fv.factors[i], comp[i]);
  std::vector<StructPtr> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Int ri = r / weights[i];
    r %= weights[i];
    out.push_back(en.unrank_expr(fv.factors[i], comp[i], ri));
  }
  return out;
}

std::vector<StructPtr> Enumerator::unrank_mset(const Expr* node, long n,
                                               long gmax, std::uint64_t used,
                                               Int r) {
  if (n == 0) {
    if (r != 0) throw std::logic_error("mset unrank: nonzero rank at the empty tuple");
    return {};
  }
  bool pset = node->kind() == ExprKind::PSet;
  for (long h = 0; h <= gmax; ++h) {
    long sz = component_size(node->arg().get(), h);
    if (sz > n) break;
    Int blk = mset_dp(node, n - sz, pset ? h - 1 : h, used + 1);
    if (r < blk) {
      auto tail = unrank_mset(node, n - sz, pset ? h - 1 : h, used + 1, r);
      std::vector<StructPtr> out;
      out.reserve(tail.size() + 1);
      out.push_back(component(node->arg().get(), h));
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
    r -= blk;
  }
  throw std::logic_error("mset unrank walked off its blocks");
}

StructPtr Enumerator::unrank_expr(const Expr* e, long n, Int r) {
  switch (e->kind()) {
    case ExprKind::Epsilon:
      return Structure::epsilon();
    case ExprKind::Atom:
      return Structure::atom(e->name());
    case ExprKind::ClassRef:
      return unrank_expr(tables_.def_of(e->name()), n, std::move(r));
    case ExprKind::Union: {
      for (std::size_t i = 0; i < e->args().size(); ++i) {
        Int c = tables_.count_expr(e->args()[i].get(), n);
        if (r < c) return Structure::uni(i, unrank_expr(e->args()[i].get(), n, r));
        r -= c;
      }
      throw std::logic_error("union unrank walked off its branches");
    }
    case ExprKind::Prod:
      return Structure::prod(unrank_tuple(*this, prod_view(e), n, std::move(r)));
    case ExprKind::Seq: {
      auto [lo, hi] = tables_.card_bounds(e, n);
      for (std::uint64_t l = lo; l <= hi; ++l) {
        Int blk = tables_.power_count(e->arg().get(), l, n);
        if (r < blk)
          return Structure::seq(
              unrank_tuple(*this, uniform_view(e, l), n, std::move(r)));
        r -= blk;
      }
      throw std::logic_error("seq unrank walked off its lengths");
    }
    case ExprKind::MSet:
    case ExprKind::PSet: {
      components(e->arg().get(), n);
      long gmax = component_count_upto(e->arg().get(), n) - 1;
      auto children = unrank_mset(e, n, gmax, 0, std::move(r));
      return e->kind() == ExprKind::MSet ? Structure::mset(std::move(children))
                                         : Structure::pset(std::move(children));
    }
    case ExprKind::Cycle:
      throw UnsupportedError(
          "unrank is not supported through Cycle constructors (v1)");
  }
  throw std::logic_error("unhandled expression kind in unrank");
}

StructPtr Enumerator::unrank(std::string_view cls, long n, const Int& r) {
  if (tables_.system().mode == Mode::Labeled)
    throw ModeError("unrank is defined for unlabeled systems only");
  Int total = tables_.count(cls, n);
  if (r < 0 || r >= total)
    throw RangeError("rank " + r.str() + " outside [0, " + total.str() +
                     ") at size " + std::to_string(n));
  return unrank_expr(tables_.def_of(cls), n, r);
}

// ---------------------------------------------------------------------------
// Random generation

Int Enumerator::draw_below(const Int& bound, std::mt19937_64& gen) {
  if (bound <= 1) return 0;
  // rejection sampling on fixed-width 64-bit blocks
  std::size_t bits = msb(bound - 1) + 1;
  std::size_t words = (bits + 63) / 64;
  Int mask = (Int(1) << bits) - 1;
  while (true) {
    Int x = 0;
    for (std::size_t w = 0; w < words; ++w) x = (x << 64) | Int(gen());
    x &= mask;
    if (x < bound) return x;
  }
}

StructPtr Enumerator::sample(std::string_view cls, long n, std::mt19937_64& gen) {
  if (tables_.system().mode == Mode::Labeled)
    throw ModeError("random generation is defined for unlabeled systems only");
  Int total = tables_.count(cls, n);
  if (total == 0)
    throw EmptyError("no structures of size " + std::to_string(n) + " in class " +
                     std::string(cls));
  Int r = draw_below(total, gen);
  return unrank_expr(tables_.def_of(cls), n, std::move(r));
}

StructPtr Enumerator::random(std::string_view cls, long n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return sample(cls, n, gen);
}

// ---------------------------------------------------------------------------
// Global order and membership

int Enumerator::compare(const Expr* e, const StructPtr& a, const StructPtr& b) {
  if (a->size() != b->size()) return a->size() < b->size() ? -1 : 1;
  Int ra = rank_expr(e, a);
  Int rb = rank_expr(e, b);
  if (ra == rb) return 0;
  return ra < rb ? -1 : 1;
}

bool Enumerator::is_min_rotation(const Expr* arg,
                                 const std::vector<StructPtr>& children) {
  std::size_t l = children.size();
  for (std::size_t shift = 1; shift < l; ++shift) {
    for (std::size_t i = 0; i < l; ++i) {
      int c = compare(arg, children[i], children[(i + shift) % l]);
      if (c < 0) break;       // this rotation is larger, fine
      if (c > 0) return false;  // a strictly smaller rotation exists
    }
  }
  return true;
}

bool Enumerator::member_expr(const StructPtr& s, const Expr* e) {
  switch (e->kind()) {
    case ExprKind::Epsilon:
      return s->kind() == NodeKind::Epsilon;
    case ExprKind::Atom:
      return s->kind() == NodeKind::Atom && s->label() == e->name();
    case ExprKind::ClassRef:
      return member_expr(s, tables_.def_of(e->name()));
    case ExprKind::Union:
      return s->kind() == NodeKind::Union && s->branch() < e->args().size() &&
             s->children().size() == 1 &&
             member_expr(s->children()[0], e->args()[s->branch()].get());
    case ExprKind::Prod: {
      if (s->kind() != NodeKind::Prod ||
          s->children().size() != e->args().size())
        return false;
      for (std::size_t i = 0; i < e->args().size(); ++i)
        if (!member_expr(s->children()[i], e->args()[i].get())) return false;
      return true;
    }
    case ExprKind::Seq: {
      if (s->kind() != NodeKind::Seq) return false;
      if (!e->card().allows(s->children().size())) return false;
      for (const auto& c : s->children())
        if (!member_expr(c, e->arg().get())) return false;
      return true;
    }
    case ExprKind::MSet:
    case ExprKind::PSet: {
      NodeKind want = e->kind() == ExprKind::MSet ? NodeKind::MSet : NodeKind::PSet;
      if (s->kind() != want) return false;
      if (!e->card().allows(s->children().size())) return false;
      for (const auto& c : s->children())
        if (!member_expr(c, e->arg().get())) return false;
      // canonical order: non-increasing (MSet) / strictly decreasing (PSet)
      for (std::size_t i = 0; i + 1 < s->children().size(); ++i) {
        int c = compare(e->arg().get(), s->children()[i], s->children()[i + 1]);
        if (e->kind() == ExprKind::MSet ? c < 0 : c <= 0) return false;
      }
      return true;
    }
    case ExprKind::Cycle: {
      if (s->kind() != NodeKind::Cycle) return false;
      std::uint64_t l = s->children().size();
      std::uint64_t lo = std::max<std::uint64_t>(e->card().min, 1);
      if (l < lo || (e->card().max && l > *e->card().max)) return false;
      for (const auto& c : s->children())
        if (!member_expr(c, e->arg().get())) return false;
      return is_min_rotation(e->arg().get(), s->children());
    }
  }
  return false;
}

bool Enumerator::member(const StructPtr& s, std::string_view cls) {
  return member_expr(s, tables_.def_of(cls));
}

bool member_of(const StructPtr& s, const SpecSystem& sys, std::string_view cls) {
  Tables tables(sys);
  Enumerator en(tables);
  return en.member(s, cls);
}

}  // namespace specc
