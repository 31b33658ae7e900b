#include "specc/dsl.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

namespace specc {

namespace {

enum class Tok { Ident, Int, Equals, LParen, RParen, Comma, Le, Ge, End, Bad };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void advance(std::size_t k = 1) {
    for (std::size_t i = 0; i < k && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  Token next() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
    int l = line, cl = col;
    if (pos >= src.size()) return {Tok::End, "", l, cl};
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        advance();
      return {Tok::Ident, std::string(src.substr(start, pos - start)), l, cl};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
        advance();
      return {Tok::Int, std::string(src.substr(start, pos - start)), l, cl};
    }
    if (c == '=') {
      advance();
      return {Tok::Equals, "=", l, cl};
    }
    if (c == '(') {
      advance();
      return {Tok::LParen, "(", l, cl};
    }
    if (c == ')') {
      advance();
      return {Tok::RParen, ")", l, cl};
    }
    if (c == ',') {
      advance();
      return {Tok::Comma, ",", l, cl};
    }
    if (c == '<' && pos + 1 < src.size() && src[pos + 1] == '=') {
      advance(2);
      return {Tok::Le, "<=", l, cl};
    }
    if (c == '>' && pos + 1 < src.size() && src[pos + 1] == '=') {
      advance(2);
      return {Tok::Ge, ">=", l, cl};
    }
    advance();
    return {Tok::Bad, std::string(1, c), l, cl};
  }
};

bool is_constructor(const std::string& s) {
  return s == "Epsilon" || s == "Atom" || s == "Union" || s == "Prod" ||
         s == "Seq" || s == "MSet" || s == "PSet" || s == "Cycle";
}

struct Parser {
  Lexer lex;
  Token tok;
  std::vector<SourceDiagnostic>& diags;

  Parser(std::string_view src, std::vector<SourceDiagnostic>& d)
      : lex{src}, diags(d) {
    tok = lex.next();
  }

  struct Abort {};  // unwinds to the definition level for recovery

  void error(const Token& at, const std::string& msg) {
    diags.push_back({at.line, at.column, msg, Severity::Error});
  }
  [[noreturn]] void abort_here(const std::string& msg) {
    error(tok, msg);
    throw Abort{};
  }
  void eat() { tok = lex.next(); }
  void expect(Tok k, const char* what) {
    if (tok.kind != k) abort_here(std::string("expected ") + what);
    eat();
  }

  std::uint64_t parse_int() {
    if (tok.kind != Tok::Int) abort_here("expected integer");
    std::uint64_t v = 0;
    try {
      v = std::stoull(tok.text);
    } catch (...) {
      abort_here("integer out of range");
    }
    eat();
    return v;
  }

  // restr := "card" ("="|"<="|">=") INT | INT "<=" "card" "<=" INT
  Restriction parse_restriction() {
    Restriction r;
    if (tok.kind == Tok::Int) {
      r.min = parse_int();
      expect(Tok::Le, "'<='");
      if (tok.kind != Tok::Ident || tok.text != "card") abort_here("expected 'card'");
      eat();
      expect(Tok::Le, "'<='");
      Token at = tok;
      r.max = parse_int();
      if (r.min > *r.max) error(at, "restriction has min > max");
      return r;
    }
    if (tok.kind != Tok::Ident || tok.text != "card")
      abort_here("expected card restriction");
    eat();
    if (tok.kind == Tok::Equals) {
      eat();
      r.min = parse_int();
      r.max = r.min;
    } else if (tok.kind == Tok::Le) {
      eat();
      r.max = parse_int();
    } else if (tok.kind == Tok::Ge) {
      eat();
      r.min = parse_int();
    } else {
      abort_here("expected '=', '<=' or '>=' after 'card'");
    }
    return r;
  }

  ExprPtr parse_expr() {
    if (tok.kind != Tok::Ident) abort_here("expected expression");
    Token head = tok;
    std::string name = tok.text;
    eat();

    if (name == "Epsilon") return Expr::epsilon();

    if (name == "Atom") {
      if (tok.kind == Tok::LParen) {
        eat();
        if (tok.kind != Tok::Ident) abort_here("expected atom label");
        std::string label = tok.text;
        eat();
        expect(Tok::RParen, "')'");
        return Expr::atom(std::move(label));
      }
      return Expr::atom();
    }

    if (name == "Union" || name == "Prod") {
      expect(Tok::LParen, "'('");
      std::vector<ExprPtr> args;
      args.push_back(parse_expr());
      while (tok.kind == Tok::Comma) {
        eat();
        args.push_back(parse_expr());
      }
      if (tok.kind != Tok::RParen) abort_here("expected ',' or ')'");
      if (args.size() < 2) error(head, name + " requires at least 2 arguments");
      eat();
      return name == "Union" ? Expr::uni(std::move(args)) : Expr::prod(std::move(args));
    }

    if (name == "Seq" || name == "MSet" || name == "PSet" || name == "Cycle") {
      expect(Tok::LParen, "'('");
      ExprPtr arg = parse_expr();
      Restriction r;
      if (tok.kind == Tok::Comma) {
        eat();
        r = parse_restriction();
      }
      if (tok.kind != Tok::RParen) abort_here("expected ',' or ')'");
      eat();
      if (name == "Seq") return Expr::seq(std::move(arg), r);
      if (name == "MSet") return Expr::mset(std::move(arg), r);
      if (name == "PSet") return Expr::pset(std::move(arg), r);
      return Expr::cycle(std::move(arg), r);
    }

    if (name == "card") abort_here("'card' is reserved");

    // Plain identifier: class reference. A '(' here is a call on something
    // that is not a constructor.
    if (tok.kind == Tok::LParen) {
      error(head, "unknown constructor " + name);
      throw Abort{};
    }
    return Expr::ref(std::move(name));
  }

  // Skips to the next plausible definition start (IDENT "="), for recovery.
  void synchronize() {
    while (tok.kind != Tok::End) {
      if (tok.kind == Tok::Ident) {
        Lexer save = lex;
        Token ahead = lex.next();
        lex = save;
        if (ahead.kind == Tok::Equals) return;
      }
      eat();
    }
  }

  struct ParsedDef {
    std::string name;
    ExprPtr body;
    int line;
    int column;
  };

  std::vector<ParsedDef> parse_defs() {
    std::vector<ParsedDef> defs;
    std::map<std::string, Token> seen;
    while (tok.kind != Tok::End) {
      try {
        if (tok.kind != Tok::Ident) abort_here("expected class name");
        Token name_tok = tok;
        std::string name = tok.text;
        if (is_constructor(name) || name == "card")
          error(name_tok, name + " is a reserved constructor name");
        eat();
        expect(Tok::Equals, "'='");
        ExprPtr body = parse_expr();
        if (auto [it, fresh] = seen.emplace(name, name_tok); !fresh)
          error(name_tok, "duplicate definition of " + name);
        defs.push_back({std::move(name), std::move(body), name_tok.line, name_tok.column});
      } catch (Abort&) {
        eat();
        synchronize();
      }
    }
    return defs;
  }
};

}  // namespace

ParseResult parse_system(std::string_view text, Mode mode,
                         std::optional<std::string> root_override) {
  ParseResult res;
  Parser parser(text, res.diagnostics);
  auto parsed = parser.parse_defs();
  bool syntax_ok = res.diagnostics.empty();
  if (parsed.empty() && syntax_ok)
    res.diagnostics.push_back({1, 1, "empty specification", Severity::Error});

  if (!syntax_ok || parsed.empty()) return res;

  std::vector<std::pair<std::string, ExprPtr>> defs;
  std::map<std::string, std::pair<int, int>> where;
  for (auto& d : parsed) {
    where.emplace(d.name, std::pair{d.line, d.column});
    defs.emplace_back(std::move(d.name), std::move(d.body));
  }

  std::string root = root_override.value_or(defs.front().first);
  auto issues = validate_system(defs, root, mode);
  if (!issues.empty()) {
    for (const auto& i : issues) {
      auto it = where.find(i.class_name);
      auto [line, col] = it != where.end() ? it->second : std::pair{1, 1};
      res.diagnostics.push_back(
          {line, col,
           i.class_name.empty() ? i.message : i.class_name + ": " + i.message,
           Severity::Error});
    }
    return res;
  }
  res.system = SpecSystem{std::move(defs), std::move(root), mode};
  return res;
}

namespace {

void render(const Expr& e, std::string& out) {
  auto render_args = [&](const char* head) {
    out += head;
    out += '(';
    bool first = true;
    for (const auto& a : e.args()) {
      if (!first) out += ", ";
      first = false;
      render(*a, out);
    }
    out += ')';
  };
  auto render_collection = [&](const char* head) {
    out += head;
    out += '(';
    render(*e.arg(), out);
    const Restriction& r = e.card();
    if (!r.unrestricted()) {
      out += ", ";
      if (r.max && r.min == *r.max) {
        out += "card = " + std::to_string(r.min);
      } else if (r.max && r.min > 0) {
        out += std::to_string(r.min) + " <= card <= " + std::to_string(*r.max);
      } else if (r.max) {
        out += "card <= " + std::to_string(*r.max);
      } else {
        out += "card >= " + std::to_string(r.min);
      }
    }
    out += ')';
  };
  switch (e.kind()) {
    case ExprKind::Epsilon:
      out += "Epsilon";
      break;
    case ExprKind::Atom:
      out += e.name() == "z" ? "Atom" : "Atom(" + e.name() + ")";
      break;
    case ExprKind::ClassRef:
      out += e.name();
      break;
    case ExprKind::Union:
      render_args("Union");
      break;
    case ExprKind::Prod:
      render_args("Prod");
      break;
    case ExprKind::Seq:
      render_collection("Seq");
      break;
    case ExprKind::MSet:
      render_collection("MSet");
      break;
    case ExprKind::PSet:
      render_collection("PSet");
      break;
    case ExprKind::Cycle:
      render_collection("Cycle");
      break;
  }
}

}  // namespace

std::string render_expr(const Expr& e) {
  std::string out;
  render(e, out);
  return out;
}

std::string render_system(const SpecSystem& sys) {
  std::string out;
  for (const auto& [name, def] : sys.defs) {
    out += name;
    out += " = ";
    render(*def, out);
    out += '\n';
  }
  return out;
}

}  // namespace specc
