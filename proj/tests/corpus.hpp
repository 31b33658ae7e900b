#pragma once

// Shared corpus of specification systems covering every constructor,
// restrictions included. Sources are in the textual DSL.

#include <string>
#include <vector>

#include "specc/dsl.hpp"
#include "specc/grammar.hpp"

namespace corpus {

struct Entry {
  std::string name;
  std::string source;
  std::string root;
  bool has_cycle;  // Cycle constructor reachable (no unrank/random)
};

inline const std::vector<Entry>& all() {
  static const std::vector<Entry> entries = {
      {"trees", "T = Prod(Atom, Seq(T))\n", "T", false},
      {"binarytrees", "B = Union(Atom, Prod(B, B))\n", "B", false},
      {"binarytrees_nodes", "B = Union(Atom, Prod(Atom, B, B))\n", "B", false},
      {"partitions", "P = MSet(I, card >= 1)\nI = Seq(Atom, card >= 1)\n", "P",
       false},
      {"distinct_partitions", "D = PSet(I)\nI = Seq(Atom, card >= 1)\n", "D",
       false},
      {"necklaces2", "N = Cycle(Union(Atom(a), Atom(b)), card >= 1)\n", "N", true},
      {"compositions12", "C = Seq(Union(Atom, Prod(Atom, Atom)))\n", "C", false},
      {"motzkin", "M = Union(Atom, Prod(Atom, M), Prod(Atom, M, M))\n", "M",
       false},
      {"mutual", "S = Union(Atom(a), Prod(Atom(a), T))\nT = Prod(Atom(b), S)\n",
       "S", false},
      {"opt_lists", "K = Prod(Opt, Seq(Atom))\nOpt = Union(Epsilon, Atom(m))\n",
       "K", false},
      {"partitions_3parts", "R = MSet(I, card = 3)\nI = Seq(Atom, card >= 1)\n",
       "R", false},
      {"necklace_band", "N = Cycle(AB, 2 <= card <= 3)\nAB = Union(Atom(a), Atom(b))\n",
       "N", true},
      {"bounded_words", "W = Seq(AB, 1 <= card <= 4)\nAB = Union(Atom(a), Atom(b))\n",
       "W", false},
      {"pset_band", "Q = PSet(I, 2 <= card <= 4)\nI = Seq(Atom, card >= 1)\n",
       "Q", false},
  };
  return entries;
}

inline specc::SpecSystem load(const Entry& e) {
  auto result = specc::parse_system(e.source, specc::Mode::Unlabeled, e.root);
  if (!result.ok()) throw std::runtime_error("corpus entry failed to parse: " + e.name);
  return *result.system;
}

inline specc::SpecSystem load(const std::string& name) {
  for (const auto& e : all())
    if (e.name == name) return load(e);
  throw std::runtime_error("no corpus entry named " + name);
}

}  // namespace corpus
