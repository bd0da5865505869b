#include "cartdec/atlas.hpp"

#include <algorithm>
#include <mutex>

#include "cartdec/catalog.hpp"
#include "cartdec/embedded.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/io.hpp"
#include "cartdec/search.hpp"

namespace cartdec {
namespace {

using nlohmann::json;

[[noreturn]] void corrupt(const std::string& entry, const std::string& what) {
  throw DataCorruption("atlas entry " + entry + ": " + what);
}

// Orders of every catalog group whose order formula has no parameters.
const std::map<std::string, std::uint64_t>& catalog_orders() {
  static const std::map<std::string, std::uint64_t> orders = [] {
    std::map<std::string, std::uint64_t> out;
    auto add = [&](const CatalogGroup& g) {
      try {
        out.emplace(g.name, evaluate_expression(g.order, {}));
      } catch (const InputError&) {
      }
    };
    for (const auto& row : Catalog::builtin().rows()) {
      add(row.t);
      for (const auto& alts : row.parts)
        for (const auto& g : alts) add(g);
    }
    return out;
  }();
  return orders;
}

std::optional<std::uint64_t> catalog_order(std::string name) {
  const auto& orders = catalog_orders();
  if (auto it = orders.find(name); it != orders.end()) return it->second;
  // A5' and M11' are the second classes of A5 and M11.
  if (!name.empty() && name.back() == '\'') {
    name.pop_back();
    if (auto it = orders.find(name); it != orders.end()) return it->second;
  }
  return std::nullopt;
}

std::uint64_t declared_order(const std::string& entry, const json& j, const std::string& what) {
  if (!j.contains("order") || !j["order"].is_number_unsigned()) corrupt(entry, what + " has no order");
  return j["order"].get<std::uint64_t>();
}

PermGroup load_checked(const std::string& entry, const std::string& what, std::size_t degree,
                       const json& gens, std::uint64_t order) {
  if (!gens.is_array()) corrupt(entry, what + " generators are not a list");
  std::vector<Permutation> ps;
  try {
    for (const auto& g : gens) ps.push_back(io::permutation_from_json(g, degree));
  } catch (const InputError& e) {
    corrupt(entry, what + ": " + e.what());
  }
  PermGroup g(degree, std::move(ps), what);
  if (g.order() != order)
    corrupt(entry, what + " has order " + std::to_string(g.order()) + ", expected " + std::to_string(order));
  if (auto c = catalog_order(what); c && *c != order)
    corrupt(entry, what + " order disagrees with the catalog");
  return g;
}

// Two orbits whose point stabilizers are not conjugate in the group.
void check_two_actions(const AtlasEntry& e) {
  auto orbs = orbits(e.group);
  if (orbs.size() != 2) corrupt(e.name, "expected exactly two orbits");
  Point p = *std::min_element(orbs[0].begin(), orbs[0].end());
  Point q = *std::min_element(orbs[1].begin(), orbs[1].end());
  PermGroup sp = point_stabilizer(e.group, p), sq = point_stabilizer(e.group, q);
  auto r = conjugacy(e.group, sp, sq);
  if (r.status == ConjugacyResult::Status::conjugate) corrupt(e.name, "the two actions are equivalent");
  if (r.status == ConjugacyResult::Status::undecided) {
    // Fall back to orbit lengths of the stabilizers on the first orbit.
    auto profile = [&](const PermGroup& s) {
      std::vector<std::size_t> lens;
      for (const auto& o : orbits(s))
        if (std::find(orbs[0].begin(), orbs[0].end(), o[0]) != orbs[0].end()) lens.push_back(o.size());
      std::sort(lens.begin(), lens.end());
      return lens;
    };
    if (profile(sp) == profile(sq)) corrupt(e.name, "inequivalence of the two actions not certified");
  }
}

}  // namespace

const PermGroup& AtlasEntry::subgroup(const std::string& s) const {
  auto it = subgroups.find(s);
  if (it == subgroups.end()) throw InputError("atlas entry " + name + " has no subgroup " + s);
  return it->second;
}

const AtlasMorphism& AtlasEntry::morphism(const std::string& s) const {
  auto it = morphisms.find(s);
  if (it == morphisms.end()) throw InputError("atlas entry " + name + " has no morphism " + s);
  return it->second;
}

AtlasEntry atlas_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw DataCorruption("atlas document has no name");
  AtlasEntry e;
  e.name = j["name"].get<std::string>();
  if (!j.contains("degree") || !j["degree"].is_number_unsigned()) corrupt(e.name, "missing degree");
  const auto degree = j["degree"].get<std::size_t>();
  e.group = load_checked(e.name, e.name, degree, j.value("generators", json()), declared_order(e.name, j, "group"));
  e.note = j.value("note", std::string());

  const json subs = j.value("subgroups", json::object());
  const json morphs = j.value("morphisms", json::object());
  for (const auto& [name, s] : subs.items()) {
    PermGroup h = load_checked(e.name, name, degree, s.value("generators", json()), declared_order(e.name, s, name));
    for (const auto& x : h.generators())
      if (!e.group.contains(x)) corrupt(e.name, "subgroup " + name + " is not contained in the group");
    e.subgroups.emplace(name, std::move(h));
  }

  for (const auto& [name, m] : morphs.items()) {
    std::vector<Permutation> imgs;
    try {
      for (const auto& g : m.at("generator_images")) imgs.push_back(io::permutation_from_json(g, degree));
    } catch (const std::exception& ex) {
      corrupt(e.name, "morphism " + name + ": " + ex.what());
    }
    std::optional<GroupMorphism> phi;
    try {
      phi = GroupMorphism::from_images(e.group, e.group, imgs);
    } catch (const InputError& ex) {
      corrupt(e.name, "morphism " + name + " is not a homomorphism: " + ex.what());
    }
    if (!phi->injective()) corrupt(e.name, "morphism " + name + " is not an automorphism");
    std::optional<Permutation> realizer;
    if (m.contains("realizer")) {
      try {
        realizer = io::permutation_from_json(m["realizer"], degree);
      } catch (const InputError& ex) {
        corrupt(e.name, "realizer of " + name + ": " + ex.what());
      }
      for (std::size_t i = 0; i < imgs.size(); ++i)
        if (!(conjugate(e.group.generators()[i], *realizer) == imgs[i]))
          corrupt(e.name, "realizer of " + name + " does not induce it");
    }
    e.morphisms.emplace(name, AtlasMorphism{std::move(*phi), std::move(realizer)});
  }

  if (e.name.ends_with("two-actions")) check_two_actions(e);
  return e;
}

std::vector<std::string> atlas_names() {
  std::vector<std::string> out;
  for (const auto& path : embedded::names())
    if (path.starts_with("atlas/")) out.push_back(io::parse_strict(embedded::file(path), path).at("name"));
  std::sort(out.begin(), out.end());
  return out;
}

const AtlasEntry& atlas_load(const std::string& name) {
  static std::recursive_mutex mu;
  static std::map<std::string, AtlasEntry> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;

  if (auto colon = name.find(':'); colon != std::string::npos) {
    std::string base = name.substr(0, colon), sub = name.substr(colon + 1);
    const AtlasEntry& parent = atlas_load(base);
    AtlasEntry e;
    e.name = name;
    e.group = parent.subgroup(sub);
    e.note = "Designated subgroup " + sub + " of " + base + ".";
    return cache.emplace(name, std::move(e)).first->second;
  }

  for (const auto& path : embedded::names()) {
    if (!path.starts_with("atlas/")) continue;
    json j = io::parse_strict(embedded::file(path), path);
    if (j.value("name", std::string()) != name) continue;
    return cache.emplace(name, atlas_from_json(j)).first->second;
  }
  throw InputError("unknown atlas entry " + name);
}

}  // namespace cartdec
