#include "specc/structure.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace specc {

using json = nlohmann::ordered_json;

Structure::Structure(NodeKind k, std::string label, std::size_t branch,
                     std::vector<StructPtr> children)
    : kind_(k), label_(std::move(label)), branch_(branch),
      children_(std::move(children)) {
  size_ = kind_ == NodeKind::Atom ? 1 : 0;
  for (const auto& c : children_) size_ += c->size();
}

StructPtr Structure::epsilon() {
  return std::make_shared<const Structure>(NodeKind::Epsilon, "", 0,
                                           std::vector<StructPtr>{});
}
StructPtr Structure::atom(std::string label) {
  return std::make_shared<const Structure>(NodeKind::Atom, std::move(label), 0,
                                           std::vector<StructPtr>{});
}
StructPtr Structure::uni(std::size_t branch, StructPtr child) {
  return std::make_shared<const Structure>(NodeKind::Union, "", branch,
                                           std::vector<StructPtr>{std::move(child)});
}
StructPtr Structure::prod(std::vector<StructPtr> children) {
  return std::make_shared<const Structure>(NodeKind::Prod, "", 0, std::move(children));
}
StructPtr Structure::seq(std::vector<StructPtr> children) {
  return std::make_shared<const Structure>(NodeKind::Seq, "", 0, std::move(children));
}
StructPtr Structure::mset(std::vector<StructPtr> children) {
  return std::make_shared<const Structure>(NodeKind::MSet, "", 0, std::move(children));
}
StructPtr Structure::pset(std::vector<StructPtr> children) {
  return std::make_shared<const Structure>(NodeKind::PSet, "", 0, std::move(children));
}
StructPtr Structure::cycle(std::vector<StructPtr> children) {
  return std::make_shared<const Structure>(NodeKind::Cycle, "", 0, std::move(children));
}

bool operator==(const Structure& a, const Structure& b) {
  if (a.kind() != b.kind() || a.label() != b.label() || a.branch() != b.branch() ||
      a.children().size() != b.children().size() || a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(*a.children()[i] == *b.children()[i])) return false;
  return true;
}

long size_of(const Structure& s) {
  long n = s.kind() == NodeKind::Atom ? 1 : 0;
  for (const auto& c : s.children()) n += size_of(*c);
  return n;
}

namespace {

void text_of(const Structure& s, std::string& out) {
  switch (s.kind()) {
    case NodeKind::Epsilon:
      out += 'E';
      return;
    case NodeKind::Atom:
      out += "Z[";
      out += s.label();
      out += ']';
      return;
    case NodeKind::Union:
      out += 'U';
      out += std::to_string(s.branch());
      break;
    case NodeKind::Prod:
      out += 'P';
      break;
    case NodeKind::Seq:
      out += 'S';
      break;
    case NodeKind::MSet:
      out += 'M';
      break;
    case NodeKind::PSet:
      out += "PS";
      break;
    case NodeKind::Cycle:
      out += 'C';
      break;
  }
  out += '(';
  bool first = true;
  for (const auto& c : s.children()) {
    if (!first) out += ',';
    first = false;
    text_of(*c, out);
  }
  out += ')';
}

struct TextParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw SpecError("bad structure text at offset " + std::to_string(pos) + ": " + what);
  }
  char peek() { return pos < text.size() ? text[pos] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::vector<StructPtr> children() {
    expect('(');
    std::vector<StructPtr> out;
    if (peek() != ')') {
      out.push_back(node());
      while (peek() == ',') {
        ++pos;
        out.push_back(node());
      }
    }
    expect(')');
    return out;
  }

  StructPtr node() {
    char c = peek();
    if (c == 'E') {
      ++pos;
      return Structure::epsilon();
    }
    if (c == 'Z') {
      ++pos;
      expect('[');
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != ']') ++pos;
      std::string label(text.substr(start, pos - start));
      expect(']');
      return Structure::atom(std::move(label));
    }
    if (c == 'U') {
      ++pos;
      std::size_t start = pos;
      while (isdigit(static_cast<unsigned char>(peek()))) ++pos;
      if (pos == start) fail("expected branch index");
      std::size_t branch = std::stoul(std::string(text.substr(start, pos - start)));
      auto kids = children();
      if (kids.size() != 1) fail("union node takes one child");
      return Structure::uni(branch, std::move(kids.front()));
    }
    if (c == 'P') {
      ++pos;
      if (peek() == 'S') {
        ++pos;
        return Structure::pset(children());
      }
      return Structure::prod(children());
    }
    if (c == 'S') {
      ++pos;
      return Structure::seq(children());
    }
    if (c == 'M') {
      ++pos;
      return Structure::mset(children());
    }
    if (c == 'C') {
      ++pos;
      return Structure::cycle(children());
    }
    fail("unknown node tag");
  }
};

json json_of(const Structure& s) {
  json j;
  switch (s.kind()) {
    case NodeKind::Epsilon:
      j["k"] = "E";
      return j;
    case NodeKind::Atom:
      j["k"] = "Z";
      j["l"] = s.label();
      return j;
    case NodeKind::Union:
      j["k"] = "U";
      j["i"] = s.branch();
      break;
    case NodeKind::Prod:
      j["k"] = "P";
      break;
    case NodeKind::Seq:
      j["k"] = "S";
      break;
    case NodeKind::MSet:
      j["k"] = "M";
      break;
    case NodeKind::PSet:
      j["k"] = "PS";
      break;
    case NodeKind::Cycle:
      j["k"] = "C";
      break;
  }
  j["c"] = json::array();
  for (const auto& c : s.children()) j["c"].push_back(json_of(*c));
  return j;
}

StructPtr struct_of_json(const json& j) {
  if (!j.is_object() || !j.contains("k"))
    throw SpecError("bad structure json: missing kind");
  std::string k = j.at("k").get<std::string>();
  std::vector<StructPtr> kids;
  if (j.contains("c"))
    for (const auto& c : j.at("c")) kids.push_back(struct_of_json(c));
  if (k == "E") return Structure::epsilon();
  if (k == "Z") return Structure::atom(j.value("l", std::string("z")));
  if (k == "U") {
    if (kids.size() != 1) throw SpecError("bad structure json: union child count");
    return Structure::uni(j.at("i").get<std::size_t>(), std::move(kids.front()));
  }
  if (k == "P") return Structure::prod(std::move(kids));
  if (k == "S") return Structure::seq(std::move(kids));
  if (k == "M") return Structure::mset(std::move(kids));
  if (k == "PS") return Structure::pset(std::move(kids));
  if (k == "C") return Structure::cycle(std::move(kids));
  throw SpecError("bad structure json: unknown kind " + k);
}

}  // namespace

std::string to_text(const Structure& s) {
  std::string out;
  text_of(s, out);
  return out;
}

StructPtr parse_structure_text(std::string_view text) {
  TextParser p{text};
  auto s = p.node();
  if (p.pos != text.size()) p.fail("trailing input");
  return s;
}

std::string to_json(const Structure& s) { return json_of(s).dump(); }

StructPtr parse_structure_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("bad structure json: parse failure");
  return struct_of_json(j);
}

}  // namespace specc
