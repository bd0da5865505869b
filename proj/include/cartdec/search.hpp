#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartdec/group.hpp"

namespace cartdec {

// Property backtrack over the base-image tree of a stabilizer chain.
struct SearchProperty {
  // Called with base images gamma_0..gamma_i of a partial element; false cuts
  // the subtree. May be empty.
  std::function<bool(std::span<const Point> base, std::span<const Point> images)> prune;
  std::function<bool(const Permutation&)> accept;
};

// All elements with the property, assuming they form a subgroup containing
// `known`.
PermGroup subgroup_search(const PermGroup& g, std::span<const Point> base_prefix,
                          const SearchProperty& prop, const PermGroup& known);
std::optional<Permutation> element_search(const PermGroup& g, std::span<const Point> base_prefix,
                                          const SearchProperty& prop);

PermGroup intersection(const PermGroup& g, const PermGroup& h, const Limits& limits = {});
PermGroup normalizer(const PermGroup& g, const PermGroup& h, const Limits& limits = {});
PermGroup centralizer(const PermGroup& g, const PermGroup& h, const Limits& limits = {});
PermGroup setwise_stabilizer(const PermGroup& g, std::span<const Point> set,
                             const Limits& limits = {});

struct ConjugacyResult {
  enum class Status { conjugate, not_conjugate, undecided } status;
  std::optional<Permutation> element;  // h^element = l when conjugate
  std::string evidence;
};
// Decides whether h and l are conjugate under g. Returns undecided when the
// resource guard trips.
ConjugacyResult conjugacy(const PermGroup& g, const PermGroup& h, const PermGroup& l,
                          const Limits& limits = {});

// Largest normal subgroup of g inside h.
PermGroup core(const PermGroup& g, const PermGroup& h, const Limits& limits = {});

}  // namespace cartdec
