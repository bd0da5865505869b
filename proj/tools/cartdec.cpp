// Command line front end: analyze, enumerate, classify, construct, verify.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cartdec/analysis.hpp"
#include "cartdec/construct.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/io.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/partition.hpp"
#include "cartdec/suites.hpp"
#include "cartdec/system.hpp"

namespace {

using nlohmann::json;
using namespace cartdec;

enum Exit { kOk = 0, kViolation = 1, kInput = 2, kLimit = 3 };

struct Config {
  std::string command;
  std::string group, decomp, plinth;
  Point omega = 0;
  std::string example, simple = "A6";
  std::size_t k = 1;
  std::string suite = "all";
  std::optional<std::size_t> max_degree;
  std::optional<std::uint64_t> max_order;
  bool heavy = false;
  std::string out;
  std::string format = "json";

  Limits limits() const {
    Limits l;
    if (max_degree) l.max_search_degree = *max_degree;
    if (max_order) l.max_search_order = *max_order;
    l.override_guard = heavy;
    return l;
  }

  json to_json() const {
    Limits l = limits();
    json j = {{"command", command}, {"format", format}, {"heavy", heavy}};
    if (!out.empty()) j["out"] = out;
    if (command == "analyze" || command == "classify" || command == "enumerate") {
      j["group"] = group;
      if (!plinth.empty()) j["plinth"] = plinth;
    }
    if (command == "analyze" || command == "classify") {
      j["decomp"] = decomp;
      j["omega"] = omega;
    }
    if (command == "construct") {
      j["example"] = example;
      j["simple"] = simple;
      j["k"] = k;
    }
    if (command == "verify") j["suite"] = suite;
    j["limits"] = {{"max_search_degree", l.max_search_degree},
                   {"max_search_order", l.max_search_order},
                   {"override_guard", l.override_guard},
                   {"max_coset_index", l.max_coset_index},
                   {"max_enumeration_degree", l.max_enumeration_degree}};
    return j;
  }
};

// What a command hands back: the structured result, its text rendering and
// whether a property it checked failed.
struct Outcome {
  json result;
  std::string text;
  bool failed = false;
  json witness;
};

PermGroup load_plinth(const Config& c, const PermGroup& g, const CartesianDecomposition* e) {
  if (!c.plinth.empty()) {
    PermGroup m = io::load_group(c.plinth);
    if (m.degree() != g.degree()) throw InputError("plinth and group have different degrees");
    return m;
  }
  if (e) return find_plinth(g, *e, c.limits());
  for (const auto& p : plinths(g, c.limits()))
    if (!p.abelian) return p.group;
  throw UnsupportedInput("G has no non-abelian transitive minimal normal subgroup");
}

CartesianDecomposition load_decomp(const Config& c, const PermGroup& g) {
  CartesianDecomposition e = io::load_decomposition(c.decomp);
  if (e.degree() != g.degree())
    throw InputError("decomposition has degree " + std::to_string(e.degree()) + ", group has degree " +
                     std::to_string(g.degree()));
  if (c.omega >= g.degree()) throw InputError("omega is out of range");
  return e;
}

// Full report with the centralizer check where a catalog row applies.
AnalysisReport full_report(const PermGroup& g, const PermGroup& m, Point omega, const CartesianDecomposition& e,
                           const Limits& limits) {
  AnalysisReport r = theorem_main_report(g, m, omega, e, limits);
  verify_centralizer_claims(r, limits);
  return r;
}

Outcome run_analyze(const Config& c) {
  PermGroup g = io::load_group(c.group);
  CartesianDecomposition e = load_decomp(c, g);
  PermGroup m = load_plinth(c, g, &e);
  AnalysisReport r = full_report(g, m, c.omega, e, c.limits());
  return {r.to_json(), r.to_text()};
}

Outcome run_classify(const Config& c) {
  PermGroup g = io::load_group(c.group);
  CartesianDecomposition e = load_decomp(c, g);
  PermGroup m = load_plinth(c, g, &e);
  LabelReport l = six_class_classify(g, m, c.omega, e, c.limits());
  std::string text = "label " + to_string(l.label);
  if (l.label == ClassLabel::UNDECIDED) text += " (" + l.undecided_reason + ")";
  return {l.to_json(), text + "\n"};
}

Outcome run_enumerate(const Config& c) {
  PermGroup g = io::load_group(c.group);
  PermGroup m = load_plinth(c, g, nullptr);
  const Limits limits = c.limits();
  auto all = enumerate_invariant_decompositions(g, m, limits);
  json items = json::array();
  std::ostringstream text;
  text << all.size() << " G-invariant Cartesian decomposition" << (all.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    AnalysisReport r = full_report(g, m, 0, all[i], limits);
    items.push_back({{"decomposition", io::decomposition_to_json(all[i])}, {"report", r.to_json()}});
    text << "[" << i << "] index " << all[i].index() << "\n" << r.to_text();
  }
  json result = {{"plinth_order", m.order()}, {"count", all.size()}, {"decompositions", items}};
  return {result, text.str()};
}

Outcome run_construct(const Config& c) {
  const Limits limits = c.limits();
  Instance inst = build_example(c.example, c.simple, c.k, limits);
  json report;
  std::string text;
  if (inst.example == "m10") {
    LabelReport l = six_class_classify(inst.g, inst.m, inst.omega, inst.e, limits);
    report = {{"label", l.to_json()}};
    text = "label " + to_string(l.label) + "\n";
  } else {
    AnalysisReport r = full_report(inst.g, inst.m, inst.omega, inst.e, limits);
    report = r.to_json();
    text = r.to_text();
  }
  json result = {{"instance", inst.info}, {"omega", inst.omega}, {"report", report}};
  if (!c.out.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(c.out);
    const fs::path dir(c.out);
    io::write_file((dir / "group.json").string(), io::group_to_json(inst.g).dump() + "\n");
    io::write_file((dir / "plinth.json").string(), io::group_to_json(inst.m).dump() + "\n");
    io::write_file((dir / "decomposition.json").string(), io::decomposition_to_json(inst.e).dump() + "\n");
    result["files"] = {"group.json", "plinth.json", "decomposition.json", "report.json"};
  }
  std::ostringstream head;
  head << inst.example << " " << inst.simple << " k=" << inst.k << ": degree " << inst.g.degree() << ", |G| = "
       << inst.g.order() << "\n";
  return {result, head.str() + text};
}

Outcome run_verify(const Config& c) {
  if (c.heavy)
    std::cerr << "heavy tier: adds the Sp6(2) rows and the 120960-point Sp6(2) instance; "
                 "budget 30 minutes, a few seconds on a current desktop\n";
  auto suites = run_suites(c.suite, c.heavy, c.limits());
  Outcome o;
  o.result = json::array();
  o.witness = json::array();
  std::ostringstream text;
  for (const auto& s : suites) {
    o.result.push_back(s.to_json());
    for (const auto& i : s.items) {
      const bool skipped = i.detail.is_object() && i.detail.contains("skipped");
      text << (i.ok ? (skipped ? "skip " : "ok   ") : "FAIL ") << s.suite << " " << i.name << "\n";
      if (!i.ok) o.witness.push_back({{"suite", s.suite}, {"item", i.name}, {"detail", i.detail}});
    }
    if (!s.ok()) o.failed = true;
  }
  o.text = text.str();
  return o;
}

int emit(const Config& c, json envelope, const std::string& text, int code) {
  std::string body;
  if (c.format == "text") {
    body = text;
    // The message itself already went to stderr.
    if (envelope.contains("error") && envelope["error"].contains("witness"))
      body += "witness: " + envelope["error"]["witness"].dump() + "\n";
  } else {
    body = envelope.dump(2) + "\n";
  }
  std::cout << body;
  if (!c.out.empty()) {
    try {
      std::filesystem::create_directories(c.out);
      io::write_file((std::filesystem::path(c.out) / "report.json").string(), envelope.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return code == kOk ? kInput : code;
    }
  }
  return code;
}

int run(const Config& c) {
  json envelope = {{"schema_version", 1}, {"config", c.to_json()}};
  auto fail = [&](int code, const std::string& kind, const std::string& msg, json witness = nullptr) {
    std::cerr << "error: " << msg << "\n";
    envelope["status"] = kind;
    envelope["error"] = {{"kind", kind}, {"message", msg}};
    if (!witness.is_null()) envelope["error"]["witness"] = std::move(witness);
    return emit(c, envelope, "", code);
  };
  try {
    Outcome o;
    if (c.command == "analyze") o = run_analyze(c);
    else if (c.command == "classify") o = run_classify(c);
    else if (c.command == "enumerate") o = run_enumerate(c);
    else if (c.command == "construct") o = run_construct(c);
    else o = run_verify(c);
    envelope["result"] = o.result;
    if (o.failed) {
      envelope["status"] = "violation";
      envelope["error"] = {{"kind", "violation"}, {"message", "suite items failed"}, {"witness", o.witness}};
      return emit(c, envelope, o.text, kViolation);
    }
    envelope["status"] = "ok";
    return emit(c, envelope, o.text, kOk);
  } catch (const TheoremViolation& e) {
    return fail(kViolation, "violation", e.what(), e.witness());
  } catch (const DataCorruption& e) {
    return fail(kViolation, "data_corruption", e.what(), json{{"data", e.what()}});
  } catch (const LimitError& e) {
    return fail(kLimit, "limit", e.what());
  } catch (const InputError& e) {
    return fail(kInput, "input", e.what());
  } catch (const std::exception& e) {
    return fail(kViolation, "internal", e.what(), json{{"exception", e.what()}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartesian decompositions of innately transitive permutation groups"};
  app.require_subcommand(1);
  Config c;

  auto add_limits = [&](CLI::App* s) {
    s->add_option("--max-degree", c.max_degree, "refuse backtrack searches above this degree");
    s->add_option("--max-order", c.max_order, "refuse backtrack searches in groups above this order");
    s->add_flag("--heavy", c.heavy, "lift the search guards and run the heavy tier");
    s->add_option("--out", c.out, "directory for the report (and instance files)");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* analyze = app.add_subcommand("analyze", "analyse a G-invariant Cartesian decomposition");
  auto* classify = app.add_subcommand("classify", "label a G-transitive Cartesian decomposition");
  for (auto* s : {analyze, classify}) {
    s->add_option("--group", c.group, "group file")->required()->check(CLI::ExistingFile);
    s->add_option("--decomp", c.decomp, "decomposition file")->required()->check(CLI::ExistingFile);
    s->add_option("--omega", c.omega, "base point");
    s->add_option("--plinth", c.plinth, "plinth file (found when omitted)")->check(CLI::ExistingFile);
    add_limits(s);
  }
  auto* enumerate = app.add_subcommand("enumerate", "list the G-invariant Cartesian decompositions");
  enumerate->add_option("--group", c.group, "group file")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--plinth", c.plinth, "plinth file (found when omitted)")->check(CLI::ExistingFile);
  add_limits(enumerate);

  auto* construct = app.add_subcommand("construct", "build an example instance");
  construct->add_option("--example", c.example, "fullex, stex, smf or m10")
      ->required()
      ->check(CLI::IsMember({"fullex", "stex", "smf", "m10"}));
  construct->add_option("--simple", c.simple, "simple group name from the atlas");
  construct->add_option("--k", c.k, "number of simple factors")->check(CLI::PositiveNumber);
  add_limits(construct);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", c.suite, "tables, normalisers, examples or all")
      ->check(CLI::IsMember({"tables", "normalisers", "examples", "all"}));
  add_limits(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  for (auto* s : {analyze, classify, enumerate, construct, verify})
    if (s->parsed()) c.command = s->get_name();
  return run(c);
}
