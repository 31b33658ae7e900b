#include "specc/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace specc {

namespace {

ExprPtr make(ExprKind k, std::string name, std::vector<ExprPtr> args, Restriction r) {
  return std::make_shared<const Expr>(k, std::move(name), std::move(args), r);
}

}  // namespace

ExprPtr Expr::epsilon() { return make(ExprKind::Epsilon, "", {}, {}); }
ExprPtr Expr::atom(std::string label) {
  return make(ExprKind::Atom, std::move(label), {}, {});
}
ExprPtr Expr::ref(std::string name) {
  return make(ExprKind::ClassRef, std::move(name), {}, {});
}
ExprPtr Expr::uni(std::vector<ExprPtr> branches) {
  return make(ExprKind::Union, "", std::move(branches), {});
}
ExprPtr Expr::prod(std::vector<ExprPtr> factors) {
  return make(ExprKind::Prod, "", std::move(factors), {});
}
ExprPtr Expr::seq(ExprPtr arg, Restriction r) {
  return make(ExprKind::Seq, "", {std::move(arg)}, r);
}
ExprPtr Expr::mset(ExprPtr arg, Restriction r) {
  return make(ExprKind::MSet, "", {std::move(arg)}, r);
}
ExprPtr Expr::pset(ExprPtr arg, Restriction r) {
  return make(ExprKind::PSet, "", {std::move(arg)}, r);
}
ExprPtr Expr::cycle(ExprPtr arg, Restriction r) {
  return make(ExprKind::Cycle, "", {std::move(arg)}, r);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind_ != b.kind_ || a.name_ != b.name_ || a.card_ != b.card_ ||
      a.args_.size() != b.args_.size())
    return false;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (!(*a.args_[i] == *b.args_[i])) return false;
  return true;
}

const Expr* SpecSystem::lookup(std::string_view name) const {
  for (const auto& [n, e] : defs)
    if (n == name) return e.get();
  return nullptr;
}

bool SpecSystem::operator==(const SpecSystem& other) const {
  if (root != other.root || mode != other.mode || defs.size() != other.defs.size())
    return false;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (defs[i].first != other.defs[i].first) return false;
    if (!(*defs[i].second == *other.defs[i].second)) return false;
  }
  return true;
}

ValidationError::ValidationError(std::vector<ValidationIssue> iss)
    : RejectError([&iss] {
        std::ostringstream os;
        os << "invalid system:";
        for (const auto& i : iss) {
          os << "\n  ";
          if (!i.class_name.empty()) os << i.class_name << ": ";
          os << i.message;
        }
        return os.str();
      }()),
      issues(std::move(iss)) {}

namespace {

void check_expr(const Expr& e, const std::string& cls, Mode mode,
                const std::set<std::string>& names,
                std::vector<ValidationIssue>& out) {
  switch (e.kind()) {
    case ExprKind::Epsilon:
    case ExprKind::Atom:
      break;
    case ExprKind::ClassRef:
      if (!names.count(e.name()))
        out.push_back({cls, "unresolved class " + e.name()});
      break;
    case ExprKind::Union:
    case ExprKind::Prod:
      if (e.args().size() < 2)
        out.push_back({cls, std::string(e.kind() == ExprKind::Union ? "Union" : "Prod") +
                                " requires at least 2 arguments"});
      break;
    case ExprKind::Seq:
    case ExprKind::MSet:
    case ExprKind::PSet:
    case ExprKind::Cycle:
      if (e.args().size() != 1)
        out.push_back({cls, "collection constructor takes exactly one argument"});
      if (e.card().max && e.card().min > *e.card().max)
        out.push_back({cls, "restriction has min > max"});
      if (e.kind() == ExprKind::PSet && mode == Mode::Labeled)
        out.push_back({cls, "PSet not defined for labeled classes"});
      break;
  }
  for (const auto& a : e.args()) check_expr(*a, cls, mode, names, out);
}

}  // namespace

std::vector<ValidationIssue> validate_system(
    const std::vector<std::pair<std::string, ExprPtr>>& defs,
    const std::string& root, Mode mode) {
  std::vector<ValidationIssue> out;
  std::set<std::string> names;
  for (const auto& [name, def] : defs) {
    if (!names.insert(name).second)
      out.push_back({name, "duplicate definition of " + name});
    if (!def) out.push_back({name, "missing definition body"});
  }
  if (defs.empty()) out.push_back({"", "system has no definitions"});
  if (!names.count(root)) out.push_back({root, "root class " + root + " is not defined"});
  for (const auto& [name, def] : defs)
    if (def) check_expr(*def, name, mode, names, out);
  return out;
}

SpecSystem build_system(std::vector<std::pair<std::string, ExprPtr>> defs,
                        std::string root, Mode mode) {
  auto issues = validate_system(defs, root, mode);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return SpecSystem{std::move(defs), std::move(root), mode};
}

}  // namespace specc
