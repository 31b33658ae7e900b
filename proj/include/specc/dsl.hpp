#pragma once

// Textual specification language: parse and render.
//
//   system := defn+          defn := IDENT "=" expr
//   expr   := "Epsilon" | "Atom" | "Atom" "(" IDENT ")" | IDENT
//           | ("Union"|"Prod") "(" expr ("," expr)+ ")"
//           | ("Seq"|"MSet"|"PSet"|"Cycle") "(" expr ("," restr)? ")"
//   restr  := "card" ("="|"<="|">=") INT | INT "<=" "card" "<=" INT
//
// "#" starts a comment to end of line. "Atom" without a label means label "z".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specc/grammar.hpp"

namespace specc {

struct SourceDiagnostic {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  std::string message;
  Severity severity = Severity::Error;
};

struct ParseResult {
  std::optional<SpecSystem> system;  // set on success
  std::vector<SourceDiagnostic> diagnostics;

  bool ok() const { return system.has_value(); }
};

// Parses and validates (build_system is applied). The root defaults to the
// first definition; root_override selects another class.
ParseResult parse_system(std::string_view text, Mode mode = Mode::Unlabeled,
                         std::optional<std::string> root_override = std::nullopt);

// Canonical text; parse_system(render_system(sys)) yields a system equal to sys.
std::string render_system(const SpecSystem& sys);

std::string render_expr(const Expr& e);

}  // namespace specc
