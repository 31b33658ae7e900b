#pragma once

// Term representation of generated structures: a constructor-labeled tree.
// MSet children are non-increasing, PSet strictly decreasing, and Cycle
// children the minimal rotation, all under the global (size, rank) order.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "specc/grammar.hpp"

namespace specc {

enum class NodeKind { Epsilon, Atom, Union, Prod, Seq, MSet, PSet, Cycle };

class Structure;
using StructPtr = std::shared_ptr<const Structure>;

class Structure {
 public:
  static StructPtr epsilon();
  static StructPtr atom(std::string label);
  static StructPtr uni(std::size_t branch, StructPtr child);
  static StructPtr prod(std::vector<StructPtr> children);
  static StructPtr seq(std::vector<StructPtr> children);
  static StructPtr mset(std::vector<StructPtr> children);
  static StructPtr pset(std::vector<StructPtr> children);
  static StructPtr cycle(std::vector<StructPtr> children);

  NodeKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::size_t branch() const { return branch_; }
  const std::vector<StructPtr>& children() const { return children_; }
  // Number of atom leaves; cached at construction.
  long size() const { return size_; }

  Structure(NodeKind k, std::string label, std::size_t branch,
            std::vector<StructPtr> children);

 private:
  NodeKind kind_;
  std::string label_;
  std::size_t branch_ = 0;
  std::vector<StructPtr> children_;
  long size_ = 0;
};

bool operator==(const Structure& a, const Structure& b);
inline bool operator!=(const Structure& a, const Structure& b) { return !(a == b); }

long size_of(const Structure& s);

// Stable textual form: E | Z[label] | U<i>(s) | P(...) | S(...) | M(...) | PS(...) | C(...)
std::string to_text(const Structure& s);
StructPtr parse_structure_text(std::string_view text);  // throws SpecError on bad input

// JSON line form: {"k":"P","c":[...]}, {"k":"Z","l":"z"}, {"k":"U","i":0,"c":[...]}
std::string to_json(const Structure& s);
StructPtr parse_structure_json(std::string_view json);  // throws SpecError on bad input

// True iff s is derivable from the named class, including the canonical-form
// constraints on MSet/PSet/Cycle nodes. Implemented by the enumerator (the
// canonical order needs counting tables); this overload builds them afresh.
bool member_of(const StructPtr& s, const SpecSystem& sys, std::string_view cls);

}  // namespace specc
