#include "cartdec/coset.hpp"

#include <algorithm>

#include "cartdec/search.hpp"

namespace cartdec {

std::size_t CosetSpace::KeyHash::operator()(const std::vector<Point>& v) const {
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : v) h = (h ^ x) * 1099511628211ull;
  return static_cast<std::size_t>(h);
}

CosetSpace::CosetSpace(const PermGroup& g, const PermGroup& h, const Limits& limits)
    : g_(g), h_(h) {
  if (g.degree() != h.degree()) throw InputError("degree mismatch in coset action");
  const std::uint64_t go = g.order(), ho = h.order();
  if (go % ho != 0) throw InputError("subgroup order does not divide group order");
  const std::uint64_t idx = go / ho;
  if (idx > limits.max_coset_index && !limits.override_guard)
    throw LimitError("coset index " + std::to_string(idx) + " exceeds cap " +
                     std::to_string(limits.max_coset_index));
  for (const auto& x : h.generators())
    if (!g.contains(x)) throw InputError("coset action: subgroup not contained in group");
  base_ = g.chain().base();
  hchain_ = h.chain_with_base(base_);
  reps_.reserve(idx);
  reps_.emplace_back(g.degree());
  index_.emplace(key(reps_[0]), 0);
  const auto& gens = g.generators();
  std::vector<std::vector<Point>> images(gens.size(), std::vector<Point>());
  for (auto& im : images) im.reserve(idx);
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation y = reps_[k] * gens[s];
      auto [it, fresh] = index_.emplace(key(y), reps_.size());
      if (fresh) reps_.push_back(std::move(y));
      images[s].push_back(static_cast<Point>(it->second));
    }
  }
  if (reps_.size() != idx) throw InputError("coset enumeration found " + std::to_string(reps_.size()) +
                                            " cosets, expected " + std::to_string(idx));
  std::vector<Permutation> perms;
  for (auto& im : images) perms.push_back(Permutation::from_images(std::move(im)));
  image_ = PermGroup(reps_.size(), std::move(perms));
}

std::vector<Point> CosetSpace::key(Permutation x) const {
  const auto& c = *hchain_;
  for (std::size_t i = 0; i < c.length(); ++i) {
    const auto& orb = c.orbit(i);
    if (orb.size() == 1) continue;
    Point best = orb[0], best_img = x[orb[0]];
    for (Point d : orb)
      if (x[d] < best_img) {
        best = d;
        best_img = x[d];
      }
    if (best != c.base_point(i)) x = c.transversal(i, best) * x;
  }
  std::vector<Point> k(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i) k[i] = x[base_[i]];
  return k;
}

std::size_t CosetSpace::coset_of(const Permutation& x) const {
  auto it = index_.find(key(x));
  if (it == index_.end()) throw InputError("element does not lie in the group acting on cosets");
  return it->second;
}

Permutation CosetSpace::image_of(const Permutation& x) const {
  std::vector<Point> img(reps_.size());
  for (std::size_t k = 0; k < reps_.size(); ++k)
    img[k] = static_cast<Point>(coset_of(reps_[k] * x));
  return Permutation::from_images(std::move(img));
}

PermGroup CosetSpace::image_of(const PermGroup& k) const {
  std::vector<Permutation> gens;
  for (const auto& x : k.generators()) gens.push_back(image_of(x));
  return PermGroup(reps_.size(), std::move(gens));
}

// ---------------------------------------------------------------- morphisms

GroupMorphism GroupMorphism::from_images(const PermGroup& source, const PermGroup& target,
                                         std::vector<Permutation> images) {
  GroupMorphism m;
  m.source_ = source;
  m.target_ = target;
  m.images_ = std::move(images);
  if (m.images_.size() != source.generators().size())
    throw InvalidMorphism("expected " + std::to_string(source.generators().size()) +
                          " generator images, got " + std::to_string(m.images_.size()));
  for (std::size_t i = 0; i < m.images_.size(); ++i) {
    if (m.images_[i].degree() != target.degree())
      throw InvalidMorphism("generator image " + std::to_string(i) + " has the wrong degree");
    if (!target.contains(m.images_[i]))
      throw InvalidMorphism("generator image " + std::to_string(i) + " is not in the target");
  }
  m.build_graph(true);
  return m;
}

GroupMorphism GroupMorphism::trusted(const PermGroup& source, const PermGroup& target,
                                     std::vector<Permutation> images) {
  GroupMorphism m;
  m.source_ = source;
  m.target_ = target;
  m.images_ = std::move(images);
  m.build_graph(false);
  return m;
}

GroupMorphism GroupMorphism::conjugation(const PermGroup& group, const Permutation& pi) {
  GroupMorphism m;
  m.source_ = group;
  m.target_ = group;
  for (const auto& x : group.generators()) {
    Permutation y = conjugate(x, pi);
    if (!group.contains(y)) throw InvalidMorphism("conjugating permutation does not normalize the group");
    m.images_.push_back(std::move(y));
  }
  m.conjugator_ = pi;
  return m;
}

void GroupMorphism::build_graph(bool validate) {
  const std::size_t ns = source_.degree(), nt = target_.degree();
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    std::vector<Point> img(ns + nt);
    for (Point p = 0; p < ns; ++p) img[p] = source_.generators()[i][p];
    for (Point p = 0; p < nt; ++p) img[ns + p] = static_cast<Point>(ns + images_[i][p]);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  StabilizerChain::Options opts;
  opts.window = ns;
  opts.base_prefix = source_.chain().base();
  if (!validate) opts.known_order = source_.order();
  try {
    graph_ = std::make_shared<const StabilizerChain>(StabilizerChain::build(ns + nt, gens, opts));
  } catch (const InputError& e) {
    if (!validate) throw;
    throw InvalidMorphism("generator images violate a relation of the source: " +
                          std::string(e.what()));
  }
  if (graph_->order() != source_.order())
    throw InvalidMorphism("graph group order " + std::to_string(graph_->order()) +
                          " differs from source order " + std::to_string(source_.order()));
}

Permutation GroupMorphism::operator()(const Permutation& x) const {
  if (conjugator_) {
    if (!source_.contains(x)) throw InputError("element outside the morphism source");
    return conjugate(x, *conjugator_);
  }
  const std::size_t ns = source_.degree(), nt = target_.degree();
  if (x.degree() != ns) throw InputError("degree mismatch in morphism evaluation");
  std::vector<Point> img(ns + nt);
  for (Point p = 0; p < ns; ++p) img[p] = x[p];
  for (Point p = 0; p < nt; ++p) img[ns + p] = static_cast<Point>(ns + p);
  auto s = graph_->sift(Permutation::from_images(std::move(img)));
  for (Point p = 0; p < ns; ++p)
    if (s.residue[p] != p) throw InputError("element outside the morphism source");
  return restricted(s.residue, ns, nt).inverse();
}

PermGroup GroupMorphism::image(const PermGroup& k) const {
  std::vector<Permutation> gens;
  for (const auto& x : k.generators()) gens.push_back((*this)(x));
  return PermGroup(target_.degree(), std::move(gens));
}

bool GroupMorphism::injective() const {
  return PermGroup(target_.degree(), images_).order() == source_.order();
}

Permutation induced_coset_permutation(const GroupMorphism& phi, const CosetSpace& cosets) {
  const PermGroup& h = cosets.subgroup();
  PermGroup ph = phi.image(h);
  if (ph.order() != h.order() || !is_subgroup(ph, h))
    throw InputError("automorphism does not fix the subgroup setwise");
  std::vector<Point> img(cosets.index());
  for (std::size_t k = 0; k < cosets.index(); ++k)
    img[k] = static_cast<Point>(cosets.coset_of(phi(cosets.representative(k))));
  return Permutation::from_images(std::move(img));
}

PermGroup centralizer_in_sym(const PermGroup& m, Point omega, const Limits& limits) {
  if (omega >= m.degree()) throw InputError("base point out of range");
  if (!is_transitive(m)) throw InputError("centralizer in Sym needs a transitive group");
  Point b[1] = {omega};
  auto chain = m.chain_with_base(b);
  PermGroup stab(m.degree(), chain->level_generators(1));
  stab.set_known_order(chain->order_from(1));
  PermGroup n = normalizer(m, stab, limits);
  // Transversal u_d with omega^u_d = d; c_x maps omega^m to omega^(x m).
  std::vector<Permutation> gens;
  for (const auto& x : n.generators()) {
    if (stab.contains(x)) continue;
    std::vector<Point> img(m.degree());
    for (Point d = 0; d < m.degree(); ++d) img[d] = (x * chain->transversal(0, d))[omega];
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  PermGroup c(m.degree(), std::move(gens));
  const std::uint64_t expect = n.order() / stab.order();
  if (c.order() != expect)
    throw TheoremViolation("centralizer order differs from |N_M(M_w)|/|M_w|",
                           {{"computed", c.order()}, {"expected", expect}});
  return c;
}

}  // namespace cartdec
