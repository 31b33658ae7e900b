#pragma once

// Constructor algebra for decomposable combinatorial classes and the
// validated specification systems built from it.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specc/errors.hpp"

namespace specc {

enum class ExprKind { Epsilon, Atom, ClassRef, Union, Prod, Seq, MSet, PSet, Cycle };

enum class Mode { Unlabeled, Labeled };

// Cardinality constraint on a collection constructor; max is unbounded when empty.
struct Restriction {
  std::uint64_t min = 0;
  std::optional<std::uint64_t> max;  // nullopt = unbounded

  bool unrestricted() const { return min == 0 && !max; }
  bool allows(std::uint64_t k) const { return k >= min && (!max || k <= *max); }
  bool operator==(const Restriction&) const = default;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression node. Collection kinds hold one argument plus a
// cardinality restriction; Union/Prod hold >= 2 ordered arguments.
class Expr {
 public:
  static ExprPtr epsilon();
  static ExprPtr atom(std::string label = "z");
  static ExprPtr ref(std::string name);
  static ExprPtr uni(std::vector<ExprPtr> branches);
  static ExprPtr prod(std::vector<ExprPtr> factors);
  static ExprPtr seq(ExprPtr arg, Restriction r = {});
  static ExprPtr mset(ExprPtr arg, Restriction r = {});
  static ExprPtr pset(ExprPtr arg, Restriction r = {});
  static ExprPtr cycle(ExprPtr arg, Restriction r = {});

  ExprKind kind() const { return kind_; }
  // Atom label or ClassRef name.
  const std::string& name() const { return name_; }
  const std::vector<ExprPtr>& args() const { return args_; }
  const ExprPtr& arg() const { return args_.front(); }  // collection argument
  const Restriction& card() const { return card_; }

  bool is_collection() const {
    return kind_ == ExprKind::Seq || kind_ == ExprKind::MSet ||
           kind_ == ExprKind::PSet || kind_ == ExprKind::Cycle;
  }

  friend bool operator==(const Expr& a, const Expr& b);

  Expr(ExprKind k, std::string name, std::vector<ExprPtr> args, Restriction card)
      : kind_(k), name_(std::move(name)), args_(std::move(args)), card_(card) {}

 private:
  ExprKind kind_;
  std::string name_;
  std::vector<ExprPtr> args_;
  Restriction card_;
};

bool operator==(const Expr& a, const Expr& b);

// A system of mutually recursive class definitions, validated by build_system.
struct SpecSystem {
  std::vector<std::pair<std::string, ExprPtr>> defs;  // ordered
  std::string root;
  Mode mode = Mode::Unlabeled;

  // Definition body of a class, or nullptr if undefined.
  const Expr* lookup(std::string_view name) const;
  bool operator==(const SpecSystem& other) const;
};

struct ValidationIssue {
  std::string class_name;  // offending class ("" for system-level issues)
  std::string message;
};

// Thrown by build_system; carries every violation found.
struct ValidationError : RejectError {
  explicit ValidationError(std::vector<ValidationIssue> issues);
  std::vector<ValidationIssue> issues;
};

// All violations in the proposed system (empty when valid):
// duplicate names, unresolved references, bad arities, PSet in labeled mode,
// inverted restrictions.
std::vector<ValidationIssue> validate_system(
    const std::vector<std::pair<std::string, ExprPtr>>& defs,
    const std::string& root, Mode mode);

// Validates and assembles a SpecSystem; throws ValidationError on any issue.
SpecSystem build_system(std::vector<std::pair<std::string, ExprPtr>> defs,
                        std::string root, Mode mode = Mode::Unlabeled);

}  // namespace specc
