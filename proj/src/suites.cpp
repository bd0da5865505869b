#include "cartdec/suites.hpp"

#include <algorithm>
#include <set>

#include "cartdec/analysis.hpp"
#include "cartdec/atlas.hpp"
#include "cartdec/catalog.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/factor.hpp"
#include "cartdec/normal.hpp"

namespace cartdec {
namespace {

using nlohmann::json;

struct Candidate {
  std::string alternative;  // name as listed in the row
  std::string source;       // atlas subgroup it was taken from
  PermGroup group;
};

// Atlas subgroups standing for a listed alternative: the subgroup of that
// name and its second class X' when the atlas has one; for a name X' with no
// such class, the derived subgroup of X.
std::vector<Candidate> candidates(const AtlasEntry& e, const std::string& alt) {
  std::vector<Candidate> out;
  if (e.subgroups.count(alt)) {
    out.push_back({alt, alt, e.subgroup(alt)});
    if (e.subgroups.count(alt + "'")) out.push_back({alt, alt + "'", e.subgroup(alt + "'")});
  } else if (alt.ends_with("'")) {
    std::string base = alt.substr(0, alt.size() - 1);
    if (e.subgroups.count(base)) out.push_back({alt, "derived(" + base + ")", derived_subgroup(e.subgroup(base))});
  }
  return out;
}

SuiteItem certify_row(const CatalogRow& row, const Limits& limits) {
  const AtlasEntry& e = atlas_load(row.t.name);
  DirectFactorisation d = DirectFactorisation::of(e.group);
  json detail = {{"T", row.t.name}, {"t_order", e.group.order()}};

  std::vector<std::vector<Candidate>> pos;
  for (const auto& alts : row.parts) {
    std::vector<Candidate> c;
    for (const auto& a : alts)
      for (auto& x : candidates(e, a.name)) c.push_back(std::move(x));
    if (c.empty()) return {row.key(), false, {{"reason", "no atlas subgroup for a listed part"}}};
    pos.push_back(std::move(c));
  }

  // Every choice of distinct atlas subgroups, one per position.
  std::set<std::pair<std::size_t, std::string>> realized;
  json tried = json::array();
  std::vector<std::size_t> pick(pos.size(), 0);
  for (;;) {
    std::set<std::string> used;
    bool distinct = true;
    for (std::size_t p = 0; p < pos.size(); ++p) distinct = used.insert(pos[p][pick[p]].source).second && distinct;
    if (distinct) {
      std::vector<PermGroup> parts;
      json names = json::array();
      for (std::size_t p = 0; p < pos.size(); ++p) {
        parts.push_back(pos[p][pick[p]].group);
        names.push_back(pos[p][pick[p]].source);
      }
      FactorisationCertificate c = row.table == 2 ? is_strong_multiple_factorisation(d, parts, limits)
                                                  : is_full_factorisation(d, parts[0], parts[1], limits);
      bool matched = std::find(c.matched_rows.begin(), c.matched_rows.end(), row.key()) != c.matched_rows.end();
      if (c.holds && matched)
        for (std::size_t p = 0; p < pos.size(); ++p) realized.insert({p, pos[p][pick[p]].alternative});
      json t = {{"parts", names}, {"holds", c.holds}, {"matched", matched},
                {"part_orders", c.part_orders}, {"intersection_orders", c.intersection_orders}};
      if (!c.reason.empty()) t["reason"] = c.reason;
      tried.push_back(t);
    }
    std::size_t p = 0;
    while (p < pos.size() && ++pick[p] == pos[p].size()) pick[p++] = 0;
    if (p == pos.size()) break;
  }

  bool ok = true;
  json missing = json::array();
  for (std::size_t p = 0; p < row.parts.size(); ++p)
    for (const auto& a : row.parts[p])
      if (!realized.count({p, a.name})) {
        ok = false;
        missing.push_back({{"position", p}, {"alternative", a.name}});
      }
  detail["choices"] = tried;
  if (!ok) detail["unrealized"] = missing;
  return {row.key(), ok, detail};
}

// Runs the analysis an example was built for and compares the outcome.
SuiteItem example_item(const std::string& example, const std::string& simple, std::size_t k,
                       const Limits& limits) {
  const std::string name = example + "/" + simple + "/" + std::to_string(k);
  Instance inst = build_example(example, simple, k, limits);
  json detail = inst.info;
  bool ok = true;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail["failed"].push_back(what);
    }
  };

  if (example == "m10") {
    LabelReport l = six_class_classify(inst.g, inst.m, inst.omega, inst.e, limits);
    detail["label"] = to_string(l.label);
    expect(l.label == ClassLabel::CD_2sim, "label CD_2sim");
    return {name, ok, detail};
  }

  AnalysisReport r = theorem_main_report(inst.g, inst.m, inst.omega, inst.e, limits);
  std::vector<std::string> labels;
  for (const auto& l : r.labels) labels.push_back(to_string(l.label));
  detail["s"] = r.s;
  detail["labels"] = labels;
  const auto& cert = r.certificate;
  if (cert) {
    detail["certificate"] = to_string(cert->kind);
    detail["matched_rows"] = cert->matched_rows;
  }
  auto labels_are = [&](std::multiset<std::string> want) {
    return std::multiset<std::string>(labels.begin(), labels.end()) == want;
  };
  if (example == "fullex") {
    expect(r.s == 2, "s = 2");
    expect(labels_are({"CD_1", "CD_1"}), "labels CD_1, CD_1");
    expect(cert && cert->holds && cert->kind == FactorisationCertificate::Kind::full, "full factorisation");
  } else if (example == "stex") {
    expect(r.s == 2, "s = 2");
    expect(labels_are({"CD_S", "CD_1"}), "labels CD_S, CD_1");
    bool strip = cert && cert->holds && cert->kind == FactorisationCertificate::Kind::full_strip;
    expect(strip, "full strip factorisation");
    if (strip) {
      bool len2 = std::all_of(cert->strip_lengths.begin(), cert->strip_lengths.end(),
                              [](std::size_t x) { return x == 2; });
      expect(len2, "strips of length 2");
    }
    for (const auto& [key, val] : r.checks.items())
      if (key.starts_with("m_faithful")) expect(val.get<bool>(), key);
  } else if (example == "smf") {
    expect(r.s == 3, "s = 3");
    expect(labels_are({"CD_1", "CD_1", "CD_1"}), "labels CD_1 x3");
    expect(cert && cert->holds && cert->kind == FactorisationCertificate::Kind::strong_multiple,
           "strong multiple factorisation");
  }
  if (example != "smf" && k == 1) {
    Witnessed w = verify_centralizer_claims(r, limits);
    expect(w.ok, "trivial centralizer");
  } else if (example == "stex") {
    Witnessed w = verify_centralizer_claims(r, limits);
    expect(w.ok && r.centralizer.value("type_pa", false), "trivial centralizer and type Pa");
  }
  if (!r.centralizer.is_null()) detail["centralizer"] = r.centralizer;
  return {name, ok, detail};
}

template <class F>
void guarded(SuiteResult& r, const std::string& name, F&& f) {
  try {
    r.items.push_back(f());
  } catch (const TheoremViolation& e) {
    r.items.push_back({name, false, {{"error", e.what()}, {"witness", e.witness()}}});
  }
}

}  // namespace

SuiteResult verify_tables(bool heavy, const Limits& limits) {
  SuiteResult r;
  r.suite = "tables";
  const Catalog& cat = Catalog::builtin();
  auto bad = cat.sanity();
  r.items.push_back({"catalog_sanity", !bad, bad ? json{{"reason", *bad}} : json::object()});
  for (const auto& row : cat.rows()) {
    if (!row.atlas_instantiable || row.disputed) continue;
    if (row.table == 2 && !heavy) {
      r.items.push_back({row.key(), true, {{"skipped", "heavy tier"}}});
      continue;
    }
    guarded(r, row.key(), [&] { return certify_row(row, limits); });
  }
  return r;
}

SuiteResult verify_examples(bool heavy, const Limits& limits) {
  SuiteResult r;
  r.suite = "examples";
  const std::vector<std::tuple<std::string, std::string, std::size_t>> light = {
      {"fullex", "A6", 1}, {"fullex", "M12", 1}, {"fullex", "A6", 2}, {"stex", "A6", 2}, {"m10", "A6", 1}};
  for (const auto& [ex, t, k] : light)
    guarded(r, ex + "/" + t + "/" + std::to_string(k), [&] { return example_item(ex, t, k, limits); });
  if (heavy) {
    Limits big = limits;
    big.override_guard = true;
    guarded(r, "smf/Sp6(2)/1", [&] { return example_item("smf", "Sp6(2)", 1, big); });
  } else {
    r.items.push_back({"smf/Sp6(2)/1", true, {{"skipped", "heavy tier"}}});
  }
  return r;
}

std::vector<SuiteResult> run_suites(const std::string& suite, bool heavy, const Limits& limits) {
  if (suite != "tables" && suite != "normalisers" && suite != "examples" && suite != "all")
    throw InputError("unknown suite '" + suite + "'");
  std::vector<SuiteResult> out;
  if (suite == "tables" || suite == "all") out.push_back(verify_tables(heavy, limits));
  if (suite == "normalisers" || suite == "all") out.push_back(verify_normaliser_propositions(limits));
  if (suite == "examples" || suite == "all") out.push_back(verify_examples(heavy, limits));
  return out;
}

}  // namespace cartdec
