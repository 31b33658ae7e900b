// specc: command-line front end for the specification compiler and its
// counting / enumeration / recurrence engines.
//
// Exit status: 0 success, 1 runtime query error, 2 specification rejected,
// 3 usage error. Results go to stdout, diagnostics to stderr.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "specc/analyzer.hpp"
#include "specc/counter.hpp"
#include "specc/dsl.hpp"
#include "specc/enumerator.hpp"
#include "specc/errors.hpp"
#include "specc/recurrence.hpp"
#include "specc/structure.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kRejected = 2;
constexpr int kUsage = 3;

struct UsageFailure {
  std::string message;
};
struct RejectedSpec {};  // diagnostics already printed

std::size_t table_cap_mb() {
  const char* env = std::getenv("SPECC_MAX_TABLE_MB");
  if (!env || !*env) return 512;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    std::cerr << "warning: ignoring invalid SPECC_MAX_TABLE_MB='" << env << "'\n";
    return 512;
  }
  return static_cast<std::size_t>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot read file: " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

specc::SpecSystem load_system(const std::string& path, specc::Mode mode,
                              const std::optional<std::string>& cls) {
  std::string text = read_file(path);
  auto result = specc::parse_system(text, mode, cls);
  for (const auto& d : result.diagnostics)
    std::cerr << path << ":" << d.line << ":" << d.column << ": "
              << (d.severity == specc::Severity::Error ? "error" : "warning")
              << ": " << d.message << "\n";
  if (!result.ok()) throw RejectedSpec{};
  return *std::move(result.system);
}

specc::Int parse_bigint(const std::string& text) {
  if (text.empty()) throw UsageFailure{"empty rank"};
  for (std::size_t i = text[0] == '-' ? 1 : 0; i < text.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(text[i])))
      throw UsageFailure{"rank must be a decimal integer: " + text};
  return specc::Int(text);
}

int cmd_check(const std::string& file, const std::optional<std::string>& cls) {
  auto sys = load_system(file, specc::Mode::Unlabeled, cls);
  auto report = specc::check_well_founded(sys);
  for (const auto& d : report.diagnostics)
    std::cerr << specc::render_diagnostic(d) << "\n";
  if (!report.ok) return kRejected;
  std::cout << "ok\n";
  for (const auto& [name, def] : sys.defs) {
    auto v = report.valuation.of_class(name);
    std::cout << "val " << name << " = " << (v ? std::to_string(*v) : "infinity")
              << "\n";
  }
  return kOk;
}

int cmd_count(const std::string& file, const std::optional<std::string>& cls,
              std::optional<long> size, std::optional<long> upto, bool labeled) {
  if (size.has_value() == upto.has_value())
    throw UsageFailure{"exactly one of --size or --upto is required"};
  specc::Mode mode = labeled ? specc::Mode::Labeled : specc::Mode::Unlabeled;
  auto sys = load_system(file, mode, cls);
  specc::Tables tables(std::move(sys), table_cap_mb());
  const std::string& root = tables.system().root;
  if (size) {
    std::cout << (labeled ? tables.count_labeled(root, *size)
                          : tables.count(root, *size))
              << "\n";
  } else {
    for (long n = 0; n <= *upto; ++n)
      std::cout << n << "\t"
                << (labeled ? tables.count_labeled(root, n) : tables.count(root, n))
                << "\n";
  }
  return kOk;
}

int cmd_list(const std::string& file, const std::optional<std::string>& cls,
             long size, std::optional<std::size_t> limit, const std::string& format,
             bool metadata) {
  auto sys = load_system(file, specc::Mode::Unlabeled, cls);
  specc::Tables tables(std::move(sys), table_cap_mb());
  specc::Enumerator en(tables);
  const std::string& root = tables.system().root;
  if (metadata && format == "jsonl") {
    nlohmann::ordered_json meta;
    meta["v"] = 1;
    meta["class"] = root;
    meta["size"] = size;
    meta["count"] = tables.count(root, size).str();
    std::cout << meta.dump() << "\n";
  }
  std::size_t emitted = 0;
  auto gen = en.iterate(root, size);
  for (auto& s : gen) {
    if (limit && emitted >= *limit) break;
    std::cout << (format == "jsonl" ? specc::to_json(*s) : specc::to_text(*s))
              << "\n";
    ++emitted;
  }
  return kOk;
}

int cmd_unrank(const std::string& file, const std::optional<std::string>& cls,
               long size, const std::string& rank_text) {
  specc::Int r = parse_bigint(rank_text);
  auto sys = load_system(file, specc::Mode::Unlabeled, cls);
  specc::Tables tables(std::move(sys), table_cap_mb());
  specc::Enumerator en(tables);
  std::cout << specc::to_text(*en.unrank(tables.system().root, size, r)) << "\n";
  return kOk;
}

int cmd_random(const std::string& file, const std::optional<std::string>& cls,
               long size, std::optional<std::uint64_t> seed) {
  auto sys = load_system(file, specc::Mode::Unlabeled, cls);
  specc::Tables tables(std::move(sys), table_cap_mb());
  specc::Enumerator en(tables);
  std::uint64_t s;
  if (seed) {
    s = *seed;
  } else {
    std::random_device rd;
    s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";
  }
  std::cout << specc::to_text(*en.random(tables.system().root, size, s)) << "\n";
  return kOk;
}

int cmd_guess_rec(const std::string& file, const std::optional<std::string>& cls,
                  long terms, int max_order, int max_degree, bool labeled) {
  if (terms < 1) throw UsageFailure{"--terms must be positive"};
  specc::Mode mode = labeled ? specc::Mode::Labeled : specc::Mode::Unlabeled;
  auto sys = load_system(file, mode, cls);
  specc::Tables tables(std::move(sys), table_cap_mb());
  auto rec = specc::recurrence_for(tables, tables.system().root, terms - 1,
                                   max_order, max_degree, mode);
  if (!rec) {
    std::cout << "no recurrence found (order<=" << max_order << ", degree<="
              << max_degree << ")\n";
    return kOk;
  }
  std::cout << specc::render_recurrence(*rec) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compiler and exact engines for decomposable combinatorial classes"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> cls;
  std::optional<long> size, upto;
  std::optional<std::size_t> limit;
  std::optional<std::uint64_t> seed;
  std::string rank_text, format = "text";
  long terms = 0;
  int max_order = 2, max_degree = 2;
  bool labeled = false, metadata = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "specification file (.spec)")->required();
    sub->add_option("--class", cls, "root class (default: first definition)");
  };

  auto* check = app.add_subcommand("check", "parse and analyze a specification");
  add_common(check);

  auto* count = app.add_subcommand("count", "count structures by size");
  add_common(count);
  count->add_option("--size", size, "count at this size");
  count->add_option("--upto", upto, "print sizes 0..N as 'n<TAB>count'");
  count->add_flag("--labeled", labeled, "labeled counting");

  auto* list = app.add_subcommand("list", "list structures in canonical order");
  add_common(list);
  list->add_option("--size", size, "structure size")->required();
  list->add_option("--limit", limit, "emit at most this many");
  list->add_option("--format", format, "text|jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  list->add_flag("--metadata", metadata, "jsonl: prepend a {\"v\":1,...} line");

  auto* unrank = app.add_subcommand("unrank", "structure at a given rank");
  add_common(unrank);
  unrank->add_option("--size", size, "structure size")->required();
  unrank->add_option("--rank", rank_text, "rank within the size")->required();

  auto* random = app.add_subcommand("random", "uniform random structure");
  add_common(random);
  random->add_option("--size", size, "structure size")->required();
  random->add_option("--seed", seed, "64-bit seed (default: system entropy)");

  auto* guess = app.add_subcommand("guess-rec", "guess a linear recurrence");
  add_common(guess);
  guess->add_option("--terms", terms, "number of series terms to use")->required();
  guess->add_option("--max-order", max_order, "maximum recurrence order");
  guess->add_option("--max-degree", max_degree, "maximum coefficient degree");
  guess->add_flag("--labeled", labeled, "use the labeled counting series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(file, cls);
    if (app.got_subcommand(count)) return cmd_count(file, cls, size, upto, labeled);
    if (app.got_subcommand(list))
      return cmd_list(file, cls, *size, limit, format, metadata);
    if (app.got_subcommand(unrank)) return cmd_unrank(file, cls, *size, rank_text);
    if (app.got_subcommand(random)) return cmd_random(file, cls, *size, seed);
    if (app.got_subcommand(guess))
      return cmd_guess_rec(file, cls, terms, max_order, max_degree, labeled);
    return kUsage;
  } catch (const UsageFailure& u) {
    std::cerr << "error: " << u.message << "\n";
    return kUsage;
  } catch (const RejectedSpec&) {
    return kRejected;
  } catch (const specc::RejectError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  } catch (const specc::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kRuntime;
  }
}
