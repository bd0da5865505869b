#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "cartdec/group.hpp"

namespace cartdec {

// Right cosets Hx of h in g, enumerated through canonical representatives
// (minimal base images under h), with g acting by right multiplication.
class CosetSpace {
 public:
  CosetSpace(const PermGroup& g, const PermGroup& h, const Limits& limits = {});

  std::size_t index() const { return reps_.size(); }
  const PermGroup& group() const { return g_; }
  const PermGroup& subgroup() const { return h_; }
  // The action of g on the cosets; coset 0 is h itself.
  const PermGroup& image() const { return image_; }
  std::size_t coset_of(const Permutation& x) const;
  const Permutation& representative(std::size_t i) const { return reps_[i]; }
  Permutation image_of(const Permutation& x) const;
  PermGroup image_of(const PermGroup& k) const;

 private:
  std::vector<Point> key(Permutation x) const;

  struct KeyHash {
    std::size_t operator()(const std::vector<Point>& v) const;
  };

  PermGroup g_, h_, image_;
  std::vector<Point> base_;
  std::shared_ptr<const StabilizerChain> hchain_;
  std::vector<Permutation> reps_;
  std::unordered_map<std::vector<Point>, std::size_t, KeyHash> index_;
};

// A homomorphism given by images of the source generators. Construction
// validates exactly: the graph group on source+target points must have the
// order of the source.
class GroupMorphism {
 public:
  static GroupMorphism from_images(const PermGroup& source, const PermGroup& target,
                                   std::vector<Permutation> images);
  // Skips validation; for maps known to be homomorphisms by construction
  // (the graph group order is then taken as |source|).
  static GroupMorphism trusted(const PermGroup& source, const PermGroup& target,
                               std::vector<Permutation> images);
  // x -> pi^-1 x pi, where pi normalizes `group` (checked).
  static GroupMorphism conjugation(const PermGroup& group, const Permutation& pi);

  const PermGroup& source() const { return source_; }
  const PermGroup& target() const { return target_; }
  const std::vector<Permutation>& generator_images() const { return images_; }
  Permutation operator()(const Permutation& x) const;
  PermGroup image(const PermGroup& k) const;
  // |image| == |source|.
  bool injective() const;

 private:
  void build_graph(bool validate);

  PermGroup source_, target_;
  std::vector<Permutation> images_;
  std::optional<Permutation> conjugator_;
  std::shared_ptr<const StabilizerChain> graph_;
};

// Permutation of the cosets of h induced by an automorphism phi of the
// coset space's group: Hx -> H phi(x). Throws InputError unless phi(h) = h.
Permutation induced_coset_permutation(const GroupMorphism& phi, const CosetSpace& cosets);

// Centralizer of a transitive group in the symmetric group on its points,
// built from N_M(M_w) acting on the cosets of M_w.
PermGroup centralizer_in_sym(const PermGroup& m, Point omega, const Limits& limits = {});

}  // namespace cartdec
