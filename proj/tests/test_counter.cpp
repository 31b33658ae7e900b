#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "corpus.hpp"
#include "specc/counter.hpp"
#include "specc/dsl.hpp"

using namespace specc;

namespace {

SpecSystem parse(const std::string& src, Mode mode = Mode::Unlabeled) {
  auto r = parse_system(src, mode);
  REQUIRE(r.ok());
  return *r.system;
}

// Mini-oracles, each a direct brute force independent of the engine.

long partitions_brute(int n, int min_part = 1) {
  if (n == 0) return 1;
  long total = 0;
  for (int p = min_part; p <= n; ++p) total += partitions_brute(n - p, p);
  return total;
}

long distinct_partitions_brute(int n, int min_part = 1) {
  if (n == 0) return 1;
  long total = 0;
  for (int p = min_part; p <= n; ++p) total += distinct_partitions_brute(n - p, p + 1);
  return total;
}

// binary necklaces of length n: distinct words of {0,1}^n up to rotation
long necklaces_brute(int n) {
  std::set<std::string> reps;
  for (int w = 0; w < (1 << n); ++w) {
    std::string word;
    for (int i = 0; i < n; ++i) word += (w >> i) & 1 ? 'b' : 'a';
    std::string best = word;
    for (int s = 1; s < n; ++s) {
      std::string rot = word.substr(s) + word.substr(0, s);
      best = std::min(best, rot);
    }
    reps.insert(best);
  }
  return static_cast<long>(reps.size());
}

long compositions12_brute(int n) {
  if (n == 0) return 1;
  long total = compositions12_brute(n - 1);
  if (n >= 2) total += compositions12_brute(n - 2);
  return total;
}

}  // namespace

TEST_CASE("trees counts reproduce the demo values") {
  Tables t(corpus::load("trees"));
  CHECK(t.count("T", 6) == 42);
  CHECK(t.count("T", 5) == 14);
  CHECK(t.count("T", 0) == 0);  // below valuation
  CHECK(t.series("T", 6, Mode::Unlabeled) ==
        std::vector<Int>{0, 1, 1, 2, 5, 14, 42});
}

TEST_CASE("binary trees by leaves are shifted Catalan") {
  Tables t(corpus::load("binarytrees"));
  CHECK(t.series("B", 6, Mode::Unlabeled) ==
        std::vector<Int>{0, 1, 1, 2, 5, 14, 42});
}

TEST_CASE("binary trees by nodes live on odd sizes") {
  Tables t(corpus::load("binarytrees_nodes"));
  CHECK(t.series("B", 7, Mode::Unlabeled) ==
        std::vector<Int>{0, 1, 0, 1, 0, 2, 0, 5});
}

TEST_CASE("partition counts match brute force") {
  Tables t(corpus::load("partitions"));
  CHECK(t.count("P", 5) == 7);
  for (int n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(t.count("P", n) == partitions_brute(n));
  }
  CHECK(t.count("P", 0) == 0);  // card >= 1 excludes the empty multiset
}

TEST_CASE("distinct partition counts match brute force") {
  Tables t(corpus::load("distinct_partitions"));
  CHECK(t.count("D", 6) == 4);
  CHECK(t.count("D", 0) == 1);  // empty set allowed: card unrestricted
  for (int n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(t.count("D", n) == distinct_partitions_brute(n));
  }
}

TEST_CASE("necklace counts match the Burnside brute force") {
  Tables t(corpus::load("necklaces2"));
  CHECK(t.count("N", 4) == 6);
  for (int n = 1; n <= 14; ++n) {
    CAPTURE(n);
    CHECK(t.count("N", n) == necklaces_brute(n));
  }
}

TEST_CASE("cycle phi-formula is integral out to n = 40") {
  Tables t(corpus::load("necklaces2"));
  for (int n = 1; n <= 40; ++n) CHECK(t.count("N", n) > 0);  // throws if non-integral
}

TEST_CASE("restricted cycles match a filtered brute force") {
  Tables t(corpus::load("necklace_band"));
  // length-restricted: necklaces of {a,b} with 2 or 3 beads
  auto banded_brute = [](int n) {
    long total = 0;
    for (int l = 2; l <= 3; ++l) {
      if (l != n) continue;  // all components have size 1
      total += necklaces_brute(n);
    }
    return total;
  };
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(t.count("N", n) == banded_brute(n));
  }
}

TEST_CASE("compositions into parts 1 and 2 are Fibonacci") {
  Tables t(corpus::load("compositions12"));
  for (int n = 0; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(t.count("C", n) == compositions12_brute(n));
  }
}

TEST_CASE("motzkin counts") {
  Tables t(corpus::load("motzkin"));
  CHECK(t.series("M", 7, Mode::Unlabeled) ==
        std::vector<Int>{0, 1, 1, 2, 4, 9, 21, 51});
}

TEST_CASE("epsilon-rooted classes count the empty structure") {
  Tables t(parse("E = Epsilon"));
  CHECK(t.series("E", 3, Mode::Unlabeled) == std::vector<Int>{1, 0, 0, 0});
}

TEST_CASE("restricted multiset DP: partitions into exactly 3 parts") {
  Tables t(corpus::load("partitions_3parts"));
  // partitions of 7 into exactly 3 parts: 5+1+1, 4+2+1, 3+3+1, 3+2+2
  CHECK(t.count("R", 7) == 4);
  CHECK(t.count("R", 3) == 1);
  CHECK(t.count("R", 2) == 0);
}

TEST_CASE("transform cross-check: Euler route equals bounded-component DP") {
  for (const char* name : {"partitions", "distinct_partitions"}) {
    CAPTURE(name);
    auto sys = corpus::load(name);
    Tables t(sys);
    const Expr* node = t.def_of(sys.root);
    REQUIRE((node->kind() == ExprKind::MSet || node->kind() == ExprKind::PSet));
    for (long n = 0; n <= 40; ++n) {
      CAPTURE(n);
      CHECK(t.count_expr(node, n) == t.count_by_components(node, n));
    }
  }
}

TEST_CASE("labeled sequences of atoms count n!") {
  Tables t(parse("L = Seq(Atom)", Mode::Labeled));
  Int fact = 1;
  for (long n = 1; n <= 20; ++n) {
    fact *= n;
    CHECK(t.count_labeled("L", n) == fact);
  }
  CHECK(t.count_labeled("L", 0) == 1);
}

TEST_CASE("labeled rooted trees count n^(n-1)") {
  Tables t(parse("T = Prod(Atom, MSet(T))", Mode::Labeled));
  CHECK(t.count_labeled("T", 4) == 64);
  for (long n = 1; n <= 8; ++n) {
    Int expect = 1;
    for (long i = 0; i + 1 < n; ++i) expect *= n;
    CHECK(t.count_labeled("T", n) == expect);
  }
}

TEST_CASE("labeled set partitions are Bell numbers") {
  Tables t(parse("SP = MSet(Block)\nBlock = MSet(Atom, card >= 1)\n", Mode::Labeled));
  CHECK(t.series("SP", 8, Mode::Labeled) ==
        std::vector<Int>{1, 1, 2, 5, 15, 52, 203, 877, 4140});
}

TEST_CASE("labeled cycles of atoms count (n-1)!") {
  Tables t(parse("C = Cycle(Atom)", Mode::Labeled));
  Int fact = 1;
  for (long n = 1; n <= 10; ++n) {
    if (n >= 2) fact *= n - 1;
    CHECK(t.count_labeled("C", n) == fact);
  }
}

TEST_CASE("labeled permutations as multisets of cycles count n!") {
  Tables t(parse("P = MSet(C)\nC = Cycle(Atom)\n", Mode::Labeled));
  Int fact = 1;
  for (long n = 1; n <= 12; ++n) {
    fact *= n;
    CHECK(t.count_labeled("P", n) == fact);
  }
}

TEST_CASE("labeled set partitions into exactly 3 blocks are Stirling numbers") {
  Tables t(parse("S3 = MSet(Block, card = 3)\nBlock = MSet(Atom, card >= 1)\n",
                 Mode::Labeled));
  CHECK(t.count_labeled("S3", 5) == 25);   // S(5,3)
  CHECK(t.count_labeled("S3", 6) == 90);   // S(6,3)
}

TEST_CASE("rigid classes: labeled equals unlabeled times n!") {
  Tables lt(parse("B = Union(Atom, Prod(B, B))", Mode::Labeled));
  Tables ut(corpus::load("binarytrees"));
  Int fact = 1;
  for (long n = 1; n <= 10; ++n) {
    fact *= n;
    CHECK(lt.count_labeled("B", n) == ut.count("B", n) * fact);
  }
}

TEST_CASE("count_labeled on an unlabeled system is a mode error") {
  Tables t(corpus::load("trees"));
  CHECK_THROWS_AS(t.count_labeled("T", 3), ModeError);
}

TEST_CASE("unlabeled counting works on labeled-mode systems") {
  Tables t(parse("L = Seq(Atom)", Mode::Labeled));
  CHECK(t.count("L", 5) == 1);
}

TEST_CASE("construction rejects ill-founded systems loudly") {
  auto r = parse_system("T = Prod(T, T)");
  REQUIRE(r.ok());
  CHECK_THROWS_AS(Tables(*r.system), AnalysisError);
}

TEST_CASE("unknown class names are reported") {
  Tables t(corpus::load("trees"));
  CHECK_THROWS_AS(t.count("Nope", 3), QueryError);
}

TEST_CASE("memoization is monotone") {
  Tables t(corpus::load("trees"));
  t.count("T", 20);
  std::size_t after_20 = t.computations();
  t.count("T", 10);
  t.count("T", 20);
  CHECK(t.computations() == after_20);  // nothing recomputed
  t.count("T", 25);
  CHECK(t.computations() > after_20);
}

TEST_CASE("sealed tables serve memoized queries and refuse new work") {
  Tables t(corpus::load("trees"));
  t.series("T", 20, Mode::Unlabeled);
  t.seal();
  CHECK(t.sealed());
  CHECK(t.count("T", 20) == t.count("T", 20));
  CHECK_THROWS_AS(t.count("T", 30), std::logic_error);
}

TEST_CASE("sealed tables are safe to read concurrently") {
  Tables t(corpus::load("binarytrees"));
  auto base = t.series("B", 60, Mode::Unlabeled);
  t.seal();
  std::vector<std::thread> workers;
  std::vector<bool> ok(8, false);
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      bool good = true;
      for (int rep = 0; rep < 200 && good; ++rep)
        for (long n = 0; n <= 60 && good; ++n)
          good = t.count("B", n) == base[n];
      ok[w] = good;
    });
  }
  for (auto& th : workers) th.join();
  for (int w = 0; w < 8; ++w) CHECK(ok[w]);
}

TEST_CASE("table memory cap aborts oversized jobs") {
  Tables t(corpus::load("trees"), 1);  // 1 MB
  CHECK_THROWS_AS(t.count("T", 100000), TableLimitError);
}
