#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartdec/coset.hpp"
#include "cartdec/group.hpp"

namespace cartdec {

struct AtlasMorphism {
  GroupMorphism map;
  // Permutation of the points inducing the map by conjugation, when shipped.
  std::optional<Permutation> realizer;
};

struct AtlasEntry {
  std::string name;
  PermGroup group;
  std::map<std::string, PermGroup> subgroups;
  std::map<std::string, AtlasMorphism> morphisms;
  std::string note;

  const PermGroup& subgroup(const std::string& s) const;
  const AtlasMorphism& morphism(const std::string& s) const;
};

// Entry names as stored ("A6", "PSL2(11)", "Sp6(2)", ...). A designated
// subgroup is addressed as "ENTRY:SUBGROUP" and comes back as an entry of its
// own with no subgroups or morphisms. Unknown names are InputError; failed
// validation is DataCorruption. Entries are validated once and cached.
const AtlasEntry& atlas_load(const std::string& name);
std::vector<std::string> atlas_names();

// Validates an atlas document, for tests that feed corrupted copies.
AtlasEntry atlas_from_json(const nlohmann::json& j);

}  // namespace cartdec
