#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"
#include "cartdec/product.hpp"

namespace cartdec {

// A check that either passes or names what failed.
struct Witnessed {
  bool ok = true;
  std::string reason;
  nlohmann::json witness;
  explicit operator bool() const { return ok; }
  static Witnessed fail(std::string reason, nlohmann::json witness = nlohmann::json::object()) {
    return {false, std::move(reason), std::move(witness)};
  }
};

// Subgroups K_1..K_l of a transitive M with n K_i = M_w and
// K_i (n_{j != i} K_j) = M. The members may live in any faithful
// representation of M as long as `stabilizer` is M_w in the same one.
struct CartesianSystem {
  PermGroup m;
  Point omega = 0;
  PermGroup stabilizer;
  std::vector<PermGroup> members;

  bool degenerate() const { return members.size() == 1; }
  nlohmann::json to_json() const;
};

// K_i is the stabilizer in M of the block of partition i containing omega.
// Throws InputError when a partition is not M-invariant.
CartesianSystem system_from_decomposition(const PermGroup& m, Point omega,
                                          const CartesianDecomposition& e);
// Partition i consists of the M-translates of omega^{K_i}.
CartesianDecomposition decomposition_from_system(const CartesianSystem& s);

Witnessed verify_cartesian_system(const CartesianSystem& s, const Limits& limits = {});
// sigma_i(K_j) (n_{j' != j} sigma_i(K_j')) = T_i for every factor i and member j.
Witnessed verify_simple_factor_identity(const CartesianSystem& s, const DirectFactorisation& d,
                                        const Limits& limits = {});
// Q_a = n_{j in I_a} K_j; checks Q_a (n_{b != a} Q_b) = M. Index sets must be
// nonempty and pairwise disjoint (InputError otherwise).
Witnessed merged_system_check(const CartesianSystem& s, const std::vector<std::vector<std::size_t>>& sets,
                              const Limits& limits = {});
// Conjugation by each generator permutes the members.
Witnessed system_invariant_under(const CartesianSystem& s, const std::vector<Permutation>& gens);

// All G-invariant Cartesian decompositions of index >= 2 whose partitions are
// block systems of M. Complete relative to all_block_systems(M). Sorted
// canonically.
std::vector<CartesianDecomposition> enumerate_invariant_decompositions(const PermGroup& g,
                                                                       const PermGroup& m,
                                                                       const Limits& limits = {});

}  // namespace cartdec
