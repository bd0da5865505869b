#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cartdec/coset.hpp"
#include "cartdec/group.hpp"

namespace cartdec {

// M = T_1 x ... x T_k with simple T_i, together with a second faithful
// representation of M in which the T_i act on disjoint supports. There
// factor i acts primitively on [offset(i), offset(i)+length(i)) and every
// other factor acts trivially, so projections are restrictions.
class DirectFactorisation {
 public:
  DirectFactorisation() = default;
  // Finest decomposition, found from minimal normal subgroups of m.
  static DirectFactorisation of(const PermGroup& m);
  // Factors known by construction; checked (commuting, normal, simple,
  // orders multiply to |m|).
  static DirectFactorisation from_factors(const PermGroup& m, std::vector<PermGroup> factors);

  const PermGroup& group() const { return m_; }
  std::size_t k() const { return factors_.size(); }
  const PermGroup& factor(std::size_t i) const { return factors_[i]; }
  std::uint64_t factor_order() const { return factors_[0].order(); }

  const PermGroup& prep() const { return prep_; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t length(std::size_t i) const { return spaces_[i]->index(); }
  Permutation to_prep(const Permutation& x) const;
  Permutation from_prep(const Permutation& y) const;
  PermGroup to_prep(const PermGroup& k) const;

  // sigma_I(K) acting on the concatenated supports of I.
  PermGroup projection(std::span<const std::size_t> idx, const PermGroup& k) const;
  PermGroup projection(std::size_t i, const PermGroup& k) const;
  // sigma_i(K) as a subgroup of T_i inside M.
  PermGroup projection_in_m(std::size_t i, const PermGroup& k) const;
  // K intersected with the product of the T_i, i in idx.
  PermGroup restrict_to(std::span<const std::size_t> idx, const PermGroup& k) const;

 private:
  void build_prep();

  PermGroup m_;
  std::vector<PermGroup> factors_;
  std::vector<std::shared_ptr<CosetSpace>> spaces_;
  std::vector<std::size_t> offsets_;
  PermGroup prep_;
  std::shared_ptr<GroupMorphism> back_;
};

struct Strip {
  std::vector<std::size_t> support;  // sorted factor indices
  PermGroup component;               // a subgroup of M
  std::size_t length() const { return support.size(); }
};

bool is_subdirect(const DirectFactorisation& d, const PermGroup& k);
// Full strips whose direct product is the subdirect subgroup h. Throws
// InputError when h is not subdirect.
std::vector<Strip> scott_decompose(const DirectFactorisation& d, const PermGroup& h);
// Non-trivial full strips X with K = X x sigma_rest(K).
std::vector<Strip> strips_involved(const DirectFactorisation& d, const PermGroup& k);

}  // namespace cartdec
