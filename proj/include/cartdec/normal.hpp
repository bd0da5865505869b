#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartdec/group.hpp"

namespace cartdec {

// <xs^g>. Stops growing once the order reaches `stop_at` (when given).
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& xs,
                         std::optional<std::uint64_t> stop_at = std::nullopt);
PermGroup derived_subgroup(const PermGroup& g);
bool is_abelian(const PermGroup& g);

// Restriction of g to one of its orbits, relabelled 0..|orbit|-1.
PermGroup restrict_to_orbit(const PermGroup& g, const std::vector<Point>& orbit);
// Restriction to the smallest orbit on which g acts nontrivially.
PermGroup smallest_nontrivial_constituent(const PermGroup& g);

struct SimplicityCertificate {
  bool simple = false;
  // Exact: every class of prime-order elements was checked. Otherwise a
  // sample of random elements was.
  bool exact = false;
  std::optional<Permutation> witness;  // element with a proper normal closure
  std::string method;
};
SimplicityCertificate certify_simple(const PermGroup& t);

struct MinimalNormalSubgroup {
  PermGroup group;
  bool abelian = false;
  bool exact = false;
  // For non-abelian ones, the simple direct factors (conjugate under g).
  std::vector<PermGroup> factors;
};

// A minimal normal subgroup of g contained in the normal subgroup `inside`.
MinimalNormalSubgroup find_minimal_normal(const PermGroup& g, const PermGroup& inside,
                                          std::uint64_t seed = 1);
// Complete when the socle is non-abelian; with abelian minimal normal
// subgroups at least one is returned.
std::vector<MinimalNormalSubgroup> minimal_normal_subgroups(const PermGroup& g,
                                                            const Limits& limits = {});
// Transitive minimal normal subgroups.
std::vector<MinimalNormalSubgroup> plinths(const PermGroup& g, const Limits& limits = {});

// Simple direct factors of a characteristically simple non-abelian group,
// via a minimal normal subgroup of m and its conjugates under `over`.
std::vector<PermGroup> simple_factors(const PermGroup& m, const PermGroup& over);

}  // namespace cartdec
