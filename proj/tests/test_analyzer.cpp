#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "specc/analyzer.hpp"
#include "specc/counter.hpp"
#include "specc/dsl.hpp"

using namespace specc;

namespace {

SpecSystem parse(const std::string& src, const char* root = nullptr) {
  auto r = parse_system(src, Mode::Unlabeled,
                        root ? std::optional<std::string>(root) : std::nullopt);
  REQUIRE(r.ok());
  return *r.system;
}

bool has_kind(const AnalysisReport& rep, AnalysisDiagKind kind) {
  return std::any_of(rep.diagnostics.begin(), rep.diagnostics.end(),
                     [&](const auto& d) { return d.kind == kind; });
}

}  // namespace

TEST_CASE("valuation of the trees grammar") {
  auto v = compute_valuation(parse("T = Prod(Atom, Seq(T))"));
  CHECK(v.of_class("T") == 1);
}

TEST_CASE("valuation without a base case is infinite") {
  auto v = compute_valuation(parse("T = Prod(T, T)"));
  CHECK(!v.of_class("T").has_value());
}

TEST_CASE("valuation of partitions") {
  auto v = compute_valuation(parse("P = MSet(I, card >= 1)\nI = Seq(Atom, card >= 1)\n"));
  CHECK(v.of_class("I") == 1);
  CHECK(v.of_class("P") == 1);
}

TEST_CASE("valuation rules on expressions") {
  auto sys = parse("A = Union(Epsilon, Atom)\nB = Prod(A, Atom, Atom)\n");
  auto v = compute_valuation(sys);
  CHECK(v.of_class("A") == 0);
  CHECK(v.of_class("B") == 2);
  CHECK(v.of_expr(*Expr::seq(Expr::ref("B"), {3, std::nullopt})) == 6);
  CHECK(v.of_expr(*Expr::cycle(Expr::ref("B"))) == 2);  // cycle min clamps to 1
  CHECK(v.of_expr(*Expr::mset(Expr::ref("B"))) == 0);
}

TEST_CASE("valuation is a fixpoint") {
  for (const auto& entry : corpus::all()) {
    auto sys = corpus::load(entry);
    auto v = compute_valuation(sys);
    for (const auto& [name, def] : sys.defs)
      CHECK(v.of_expr(*def) == v.of_class(name));
  }
}

TEST_CASE("gate rejects T = Prod(T, T) with an infinite-valuation diagnostic") {
  auto rep = check_well_founded(parse("T = Prod(T, T)"));
  CHECK(!rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::InfiniteValuation));
}

TEST_CASE("gate rejects T = Union(Atom, T) with an epsilon-cycle diagnostic") {
  auto rep = check_well_founded(parse("T = Union(Atom, T)"));
  CHECK(!rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::EpsilonCycle));
}

TEST_CASE("gate rejects S = Seq(Epsilon) as a collection over size 0") {
  auto rep = check_well_founded(parse("S = Seq(Epsilon)"));
  CHECK(!rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::CollectionOverSizeZero));
}

TEST_CASE("gate catches size-preserving collections") {
  // MSet with min_card <= 1 embeds a component without extra size
  auto rep = check_well_founded(parse("T = Union(Atom, MSet(T))"));
  CHECK(!rep.ok);
  // min_card >= 2 forces extra size, so this one is fine
  auto rep2 = check_well_founded(parse("X = Union(Atom, MSet(X, card = 2))"));
  CHECK(rep2.ok);
}

TEST_CASE("gate catches mutual epsilon-cycles") {
  auto rep = check_well_founded(parse("A = Union(Atom, B)\nB = Union(Atom, A)\n"));
  CHECK(!rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::EpsilonCycle));
}

TEST_CASE("prod factors with size-0 siblings stay weight 0") {
  // E admits size 0, so A -> A through Prod(E, A) preserves size
  auto rep = check_well_founded(
      parse("A = Union(Atom, Prod(E, A))\nE = Union(Epsilon, Atom)\n"));
  CHECK(!rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::EpsilonCycle));
  // with a size-forcing sibling the same shape is accepted
  auto rep2 = check_well_founded(parse("A = Union(Atom, Prod(Atom, A))\n"));
  CHECK(rep2.ok);
}

TEST_CASE("unreachable classes warn but do not reject") {
  auto rep = check_well_founded(parse("A = Atom\nB = Prod(B, B)\n", "A"));
  CHECK(rep.ok);
  CHECK(has_kind(rep, AnalysisDiagKind::UnreachableClass));
  auto names = render_diagnostic(rep.diagnostics.front());
  CHECK(names.find("warning class B") == 0);
}

TEST_CASE("all corpus systems are accepted") {
  for (const auto& entry : corpus::all()) {
    CAPTURE(entry.name);
    auto rep = check_well_founded(corpus::load(entry));
    CHECK(rep.ok);
  }
}

TEST_CASE("valuation equals the smallest size with a nonzero count") {
  // Exception: a PSet forced to hold k >= 2 distinct components can first be
  // inhabited above k*val(arg) (distinctness is not part of the valuation
  // rules), so for those the valuation is only a lower bound.
  for (const auto& entry : corpus::all()) {
    CAPTURE(entry.name);
    bool strict_pset = entry.name == "pset_band";
    auto sys = corpus::load(entry);
    Tables tables(sys);
    auto v = compute_valuation(sys);
    for (const auto& [name, def] : sys.defs) {
      auto val = v.of_class(name);
      REQUIRE(val.has_value());
      long first_nonzero = -1;
      for (long n = 0; n <= 30; ++n)
        if (tables.count(name, n) > 0) {
          first_nonzero = n;
          break;
        }
      if (strict_pset && name == "Q")
        CHECK(first_nonzero >= static_cast<long>(*val));
      else
        CHECK(first_nonzero == static_cast<long>(*val));
    }
  }
}

TEST_CASE("diagnostics render as LEVEL class NAME: message") {
  AnalysisDiagnostic d{AnalysisDiagKind::EpsilonCycle, Severity::Error, "T",
                       "epsilon-cycle through T"};
  CHECK(render_diagnostic(d) == "error class T: epsilon-cycle through T");
}
