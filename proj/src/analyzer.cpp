#include "specc/analyzer.hpp"

#include <algorithm>
#include <set>

namespace specc {

namespace {

using Val = std::optional<std::uint64_t>;  // nullopt = infinity

Val add(Val a, Val b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

Val scale(std::uint64_t k, Val v) {
  if (k == 0) return 0;  // empty collection admitted
  if (!v) return std::nullopt;
  return k * *v;
}

std::uint64_t effective_min(const Expr& e) {
  std::uint64_t m = e.card().min;
  if (e.kind() == ExprKind::Cycle) m = std::max<std::uint64_t>(m, 1);
  return m;
}

Val expr_val(const Expr& e, const Valuation& v) {
  switch (e.kind()) {
    case ExprKind::Epsilon:
      return 0;
    case ExprKind::Atom:
      return 1;
    case ExprKind::ClassRef:
      return v.of_class(e.name());
    case ExprKind::Union: {
      Val best = std::nullopt;
      for (const auto& b : e.args()) {
        Val bv = expr_val(*b, v);
        if (bv && (!best || *bv < *best)) best = bv;
      }
      return best;
    }
    case ExprKind::Prod: {
      Val total = 0;
      for (const auto& f : e.args()) total = add(total, expr_val(*f, v));
      return total;
    }
    case ExprKind::Seq:
    case ExprKind::MSet:
    case ExprKind::PSet:
    case ExprKind::Cycle:
      return scale(effective_min(e), expr_val(*e.arg(), v));
  }
  return std::nullopt;
}

}  // namespace

Val Valuation::of_class(std::string_view name) const {
  auto it = by_class.find(name);
  return it == by_class.end() ? std::nullopt : it->second;
}

Val Valuation::of_expr(const Expr& e) const { return expr_val(e, *this); }

Valuation compute_valuation(const SpecSystem& sys) {
  Valuation v;
  for (const auto& [name, def] : sys.defs) v.by_class[name] = std::nullopt;
  std::size_t sweeps = sys.defs.size() + 2;
  for (std::size_t i = 0; i < sweeps; ++i) {
    bool changed = false;
    for (const auto& [name, def] : sys.defs) {
      Val next = expr_val(*def, v);
      Val& cur = v.by_class.find(name)->second;
      if (next != cur) {
        // monotone: only infinity -> finite or finite -> smaller
        cur = next;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return v;
}

namespace {

void collect_refs(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::ClassRef) out.insert(e.name());
  for (const auto& a : e.args()) collect_refs(*a, out);
}

std::set<std::string> reachable_from(const SpecSystem& sys, const std::string& root) {
  std::set<std::string> seen{root};
  std::vector<std::string> work{root};
  while (!work.empty()) {
    std::string cls = std::move(work.back());
    work.pop_back();
    const Expr* def = sys.lookup(cls);
    if (!def) continue;
    std::set<std::string> refs;
    collect_refs(*def, refs);
    for (auto& r : refs)
      if (seen.insert(r).second) work.push_back(r);
  }
  return seen;
}

// Weight-0 edges: F can occur inside def(C) without forcing extra size.
void zero_edges(const Expr& e, const Valuation& v, bool forced,
                std::set<std::string>& out) {
  switch (e.kind()) {
    case ExprKind::Epsilon:
    case ExprKind::Atom:
      return;
    case ExprKind::ClassRef:
      if (!forced) out.insert(e.name());
      return;
    case ExprKind::Union:
      for (const auto& b : e.args()) zero_edges(*b, v, forced, out);
      return;
    case ExprKind::Prod: {
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        bool extra = forced;
        for (std::size_t j = 0; j < e.args().size() && !extra; ++j) {
          if (j == i) continue;
          Val fv = v.of_expr(*e.args()[j]);
          if (!fv || *fv > 0) extra = true;  // sibling forces size
        }
        zero_edges(*e.args()[i], v, extra, out);
      }
      return;
    }
    case ExprKind::Seq:
    case ExprKind::MSet:
    case ExprKind::PSet:
    case ExprKind::Cycle: {
      // One component is embedded; min_card >= 2 forces at least one more.
      bool extra = forced || effective_min(e) >= 2;
      zero_edges(*e.arg(), v, extra, out);
      return;
    }
  }
}

// Any cycle in the 0-edge subgraph restricted to `scope`.
std::vector<std::string> find_zero_cycle(
    const std::map<std::string, std::set<std::string>>& edges,
    const std::set<std::string>& scope) {
  std::map<std::string, int> state;  // 0 new, 1 in progress, 2 done
  std::vector<std::string> cyclic;
  auto dfs = [&](auto&& self, const std::string& u) -> bool {
    state[u] = 1;
    auto it = edges.find(u);
    if (it != edges.end()) {
      for (const auto& w : it->second) {
        if (!scope.count(w)) continue;
        int s = state.count(w) ? state[w] : 0;
        if (s == 1) {
          cyclic.push_back(u);
          return true;
        }
        if (s == 0 && self(self, w)) {
          cyclic.push_back(u);
          return true;
        }
      }
    }
    state[u] = 2;
    return false;
  };
  for (const auto& u : scope)
    if ((state.count(u) ? state[u] : 0) == 0 && dfs(dfs, u)) break;
  std::reverse(cyclic.begin(), cyclic.end());
  return cyclic;
}

void collect_collections(const Expr& e, std::vector<const Expr*>& out) {
  if (e.is_collection()) out.push_back(&e);
  for (const auto& a : e.args()) collect_collections(*a, out);
}

const char* kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::Seq: return "Seq";
    case ExprKind::MSet: return "MSet";
    case ExprKind::PSet: return "PSet";
    case ExprKind::Cycle: return "Cycle";
    default: return "?";
  }
}

}  // namespace

AnalysisReport check_well_founded(const SpecSystem& sys) {
  AnalysisReport rep;
  rep.valuation = compute_valuation(sys);
  auto reachable = reachable_from(sys, sys.root);

  for (const auto& [name, def] : sys.defs) {
    if (!reachable.count(name)) {
      rep.diagnostics.push_back({AnalysisDiagKind::UnreachableClass,
                                 Severity::Warning, name,
                                 "unreachable from root " + sys.root});
    }
  }

  // (a) finite valuation for every reachable class
  for (const auto& [name, def] : sys.defs) {
    if (!reachable.count(name)) continue;
    if (!rep.valuation.of_class(name))
      rep.diagnostics.push_back({AnalysisDiagKind::InfiniteValuation,
                                 Severity::Error, name,
                                 "infinite valuation: no structure of any size"});
  }

  // (b) collection arguments must have valuation >= 1
  for (const auto& [name, def] : sys.defs) {
    if (!reachable.count(name)) continue;
    std::vector<const Expr*> colls;
    collect_collections(*def, colls);
    for (const Expr* c : colls) {
      Val av = rep.valuation.of_expr(*c->arg());
      if (av && *av == 0)
        rep.diagnostics.push_back(
            {AnalysisDiagKind::CollectionOverSizeZero, Severity::Error, name,
             std::string(kind_name(c->kind())) +
                 " collection over class admitting size 0"});
    }
  }

  // (c) no weight-0 cycle among reachable classes (conservative check)
  std::map<std::string, std::set<std::string>> zeroes;
  for (const auto& [name, def] : sys.defs) {
    if (!reachable.count(name)) continue;
    zero_edges(*def, rep.valuation, false, zeroes[name]);
  }
  auto cyc = find_zero_cycle(zeroes, reachable);
  if (!cyc.empty()) {
    std::string path;
    for (const auto& c : cyc) {
      if (!path.empty()) path += " -> ";
      path += c;
    }
    rep.diagnostics.push_back(
        {AnalysisDiagKind::EpsilonCycle, Severity::Error, cyc.front(),
         "epsilon-cycle through " + path +
             ": infinitely many structures of one size (possibly conservative)"});
  }

  rep.ok = std::none_of(rep.diagnostics.begin(), rep.diagnostics.end(),
                        [](const auto& d) { return d.severity == Severity::Error; });
  return rep;
}

std::string render_diagnostic(const AnalysisDiagnostic& d) {
  std::string level = d.severity == Severity::Error ? "error" : "warning";
  return level + " class " + d.class_name + ": " + d.message;
}

}  // namespace specc
