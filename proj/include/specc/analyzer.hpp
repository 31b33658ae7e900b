#pragma once

// Static analysis: valuation fixpoint and well-foundedness gate. Systems that
// pass are guaranteed to have finitely many structures of every size, so the
// counting and enumeration engines run without defensive checks.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specc/grammar.hpp"

namespace specc {

// Smallest structure size per class; nullopt = infinity (empty class).
struct Valuation {
  std::map<std::string, std::optional<std::uint64_t>, std::less<>> by_class;

  std::optional<std::uint64_t> of_class(std::string_view name) const;
  // Valuation of an arbitrary expression under this class assignment.
  std::optional<std::uint64_t> of_expr(const Expr& e) const;
};

enum class AnalysisDiagKind {
  InfiniteValuation,       // no structure of any size
  CollectionOverSizeZero,  // collection argument admits size 0
  EpsilonCycle,            // size-preserving dependency cycle
  UnreachableClass,        // warning only
};

struct AnalysisDiagnostic {
  AnalysisDiagKind kind;
  Severity severity;
  std::string class_name;
  std::string message;
};

struct AnalysisReport {
  Valuation valuation;
  bool ok = false;  // no error-level diagnostics
  std::vector<AnalysisDiagnostic> diagnostics;
};

// Least fixpoint of the valuation rules, starting from all-infinity; classes
// still infinite after |defs| + 2 full sweeps are infinite.
Valuation compute_valuation(const SpecSystem& sys);

// ok iff, among classes reachable from the root: (a) every valuation is
// finite, (b) every collection argument has valuation >= 1, (c) there is no
// size-preserving (weight-0) dependency cycle. Unreachable classes warn.
AnalysisReport check_well_founded(const SpecSystem& sys);

// "LEVEL class NAME: message" (the form the cli check command prints).
std::string render_diagnostic(const AnalysisDiagnostic& d);

}  // namespace specc
