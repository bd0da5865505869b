#include "cartdec/search.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace cartdec {
namespace {

class Backtrack {
 public:
  Backtrack(const PermGroup& g, std::span<const Point> prefix, const SearchProperty& prop)
      : chain_(g.chain_with_base(prefix)), prop_(prop), base_(chain_->base()) {
    images_.resize(base_.size());
  }

  std::optional<Permutation> find_any() {
    return find_one(0, Permutation(chain_->degree()));
  }

  PermGroup all(const PermGroup& known) {
    found_ = PermGroup(chain_->degree(), known.generators());
    refresh_known();
    explore_identity(0);
    PermGroup out(chain_->degree(), found_.generators());
    out.adopt_chain(known_chain_);
    return out;
  }

 private:
  bool prune_ok(std::size_t depth) const {
    if (!prop_.prune) return true;
    return prop_.prune(std::span<const Point>(base_.data(), depth + 1),
                       std::span<const Point>(images_.data(), depth + 1));
  }

  void refresh_known() {
    known_chain_ = found_.chain_with_base(base_);
    known_orbits_.assign(base_.size(), {});
    for (std::size_t i = 0; i < base_.size(); ++i) {
      known_orbits_[i].assign(chain_->degree(), false);
      if (i < known_chain_->length())
        for (Point p : known_chain_->orbit(i)) known_orbits_[i][p] = true;
      else
        known_orbits_[i][base_[i]] = true;
    }
  }

  void explore_identity(std::size_t i) {
    if (i == base_.size()) return;
    images_[i] = base_[i];
    explore_identity(i + 1);
    std::vector<Point> cands(chain_->orbit(i).begin(), chain_->orbit(i).end());
    std::sort(cands.begin(), cands.end());
    for (Point delta : cands) {
      if (delta == base_[i] || known_orbits_[i][delta]) continue;
      images_[i] = delta;
      if (!prune_ok(i)) continue;
      if (auto sol = find_one(i + 1, chain_->transversal(i, delta))) {
        std::vector<Permutation> gens = found_.generators();
        gens.push_back(*sol);
        found_ = PermGroup(chain_->degree(), std::move(gens));
        refresh_known();
      }
    }
    images_[i] = base_[i];
  }

  std::optional<Permutation> find_one(std::size_t i, const Permutation& p) {
    if (i == base_.size()) {
      if (prop_.accept(p)) return p;
      return std::nullopt;
    }
    std::vector<std::pair<Point, Point>> cands;
    for (Point delta : chain_->orbit(i)) cands.emplace_back(p[delta], delta);
    std::sort(cands.begin(), cands.end());
    for (auto [gamma, delta] : cands) {
      images_[i] = gamma;
      if (!prune_ok(i)) continue;
      if (auto sol = find_one(i + 1, chain_->transversal(i, delta) * p)) return sol;
    }
    return std::nullopt;
  }

  std::shared_ptr<const StabilizerChain> chain_;
  const SearchProperty& prop_;
  std::vector<Point> base_;
  std::vector<Point> images_;
  PermGroup found_;
  std::shared_ptr<const StabilizerChain> known_chain_;
  std::vector<std::vector<bool>> known_orbits_;
};

// Orbit id and length of each point under h.
struct OrbitData {
  std::vector<std::uint32_t> id;
  std::vector<std::uint32_t> size;
  std::vector<std::size_t> sorted_sizes;
};

OrbitData orbit_data(const PermGroup& h) {
  OrbitData d;
  d.id.assign(h.degree(), 0);
  d.size.assign(h.degree(), 0);
  auto orbs = orbits(h);
  for (std::size_t k = 0; k < orbs.size(); ++k) {
    for (Point p : orbs[k]) {
      d.id[p] = static_cast<std::uint32_t>(k);
      d.size[p] = static_cast<std::uint32_t>(orbs[k].size());
    }
    d.sorted_sizes.push_back(orbs[k].size());
  }
  std::sort(d.sorted_sizes.begin(), d.sorted_sizes.end());
  return d;
}

// g maps h-orbits onto l-orbits of equal length.
std::function<bool(std::span<const Point>, std::span<const Point>)> orbit_prune(OrbitData from,
                                                                             OrbitData to) {
  return [from = std::move(from), to = std::move(to)](std::span<const Point> base,
                                                     std::span<const Point> img) {
    const std::size_t i = base.size() - 1;
    if (from.size[base[i]] != to.size[img[i]]) return false;
    for (std::size_t j = 0; j < i; ++j)
      if ((from.id[base[j]] == from.id[base[i]]) != (to.id[img[j]] == to.id[img[i]])) return false;
    return true;
  };
}

bool normalizes(const Permutation& g, const PermGroup& h, const PermGroup& l) {
  for (const auto& x : h.generators())
    if (!l.contains(conjugate(x, g))) return false;
  return true;
}

PermGroup intersection_by_enumeration(const PermGroup& small, const PermGroup& big) {
  std::vector<Permutation> gens;
  PermGroup acc = PermGroup::trivial(small.degree());
  small.chain().for_each_element([&](const Permutation& x) {
    if (!x.is_identity() && big.contains(x) && !acc.contains(x)) {
      gens.push_back(x);
      acc = PermGroup(small.degree(), gens);
    }
    return true;
  });
  return acc;
}

constexpr std::uint64_t kEnumerationOrder = 20000;

}  // namespace

PermGroup subgroup_search(const PermGroup& g, std::span<const Point> base_prefix,
                          const SearchProperty& prop, const PermGroup& known) {
  if (g.is_trivial()) return PermGroup::trivial(g.degree());
  Backtrack bt(g, base_prefix, prop);
  return bt.all(known);
}

std::optional<Permutation> element_search(const PermGroup& g, std::span<const Point> base_prefix,
                                          const SearchProperty& prop) {
  if (g.is_trivial()) {
    Permutation id(g.degree());
    if (prop.accept(id)) return id;
    return std::nullopt;
  }
  Backtrack bt(g, base_prefix, prop);
  return bt.find_any();
}

PermGroup intersection(const PermGroup& g, const PermGroup& h, const Limits& limits) {
  if (g.degree() != h.degree()) throw InputError("degree mismatch in intersection");
  if (g.is_trivial() || h.is_trivial()) return PermGroup::trivial(g.degree());
  const PermGroup& small = g.order() <= h.order() ? g : h;
  const PermGroup& big = g.order() <= h.order() ? h : g;
  if (small.order() <= kEnumerationOrder) return intersection_by_enumeration(small, big);
  limits.check_search(g.degree(), small.order(), "intersection");
  auto sc = small.chain_with_base({});
  const std::vector<Point> base = sc->base();
  auto bc = big.chain_with_base(base);
  SearchProperty prop;
  prop.prune = [bc, n = g.degree()](std::span<const Point>, std::span<const Point> img) {
    // Is there an element of `big` with these base images?
    Permutation x(n);
    for (std::size_t j = 0; j < img.size(); ++j) {
      Point delta = x.inverse()[img[j]];
      if (j >= bc->length() || !bc->in_orbit(j, delta)) return false;
      x = bc->transversal(j, delta) * x;
    }
    return true;
  };
  prop.accept = [&big](const Permutation& p) { return big.contains(p); };
  return subgroup_search(small, base, prop, PermGroup::trivial(g.degree()));
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h, const Limits& limits) {
  if (g.degree() != h.degree()) throw InputError("degree mismatch in normalizer");
  if (h.is_trivial() || g.is_trivial()) return g;
  limits.check_search(g.degree(), g.order(), "normalizer");
  OrbitData d = orbit_data(h);
  SearchProperty prop;
  prop.prune = orbit_prune(d, d);
  prop.accept = [&h](const Permutation& p) { return normalizes(p, h, h); };
  PermGroup known = is_subgroup(h, g) ? h : PermGroup::trivial(g.degree());
  return subgroup_search(g, {}, prop, known);
}

PermGroup centralizer(const PermGroup& g, const PermGroup& h, const Limits& limits) {
  if (g.degree() != h.degree()) throw InputError("degree mismatch in centralizer");
  if (h.is_trivial() || g.is_trivial()) return g;
  limits.check_search(g.degree(), g.order(), "centralizer");
  OrbitData d = orbit_data(h);
  auto hg = h.generators();
  SearchProperty prop;
  prop.prune = [d, hg](std::span<const Point> base, std::span<const Point> img) {
    const std::size_t i = base.size() - 1;
    if (d.size[base[i]] != d.size[img[i]]) return false;
    // c commutes with x: (b^x)^c = (b^c)^x.
    for (const auto& x : hg)
      for (std::size_t j = 0; j <= i; ++j)
        for (std::size_t k = 0; k <= i; ++k)
          if ((j == i || k == i) && x[base[j]] == base[k] && x[img[j]] != img[k]) return false;
    return true;
  };
  prop.accept = [hg](const Permutation& p) {
    for (const auto& x : hg)
      if (!(x * p == p * x)) return false;
    return true;
  };
  return subgroup_search(g, {}, prop, PermGroup::trivial(g.degree()));
}

PermGroup setwise_stabilizer(const PermGroup& g, std::span<const Point> set,
                             const Limits& limits) {
  std::vector<Point> s(set.begin(), set.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (Point p : s)
    if (p >= g.degree()) throw InputError("point out of range in setwise stabilizer");
  if (g.is_trivial()) return g;
  struct VecHash {
    std::size_t operator()(const std::vector<Point>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (Point x : v) h = (h ^ x) * 1099511628211ull;
      return h;
    }
  };
  auto act = [](const std::vector<Point>& v, const Permutation& x) {
    std::vector<Point> out;
    out.reserve(v.size());
    for (Point p : v) out.push_back(x[p]);
    std::sort(out.begin(), out.end());
    return out;
  };
  try {
    return orbit_stabilizer<std::vector<Point>, VecHash>(g, s, act, 200000);
  } catch (const LimitError&) {
  }
  limits.check_search(g.degree(), g.order(), "setwise stabilizer");
  std::vector<bool> in(g.degree(), false);
  for (Point p : s) in[p] = true;
  SearchProperty prop;
  prop.prune = [in](std::span<const Point> base, std::span<const Point> img) {
    const std::size_t i = base.size() - 1;
    return in[base[i]] == in[img[i]];
  };
  prop.accept = [in](const Permutation& p) {
    for (std::size_t x = 0; x < in.size(); ++x)
      if (in[x] != in[p[static_cast<Point>(x)]]) return false;
    return true;
  };
  return subgroup_search(g, s, prop, PermGroup::trivial(g.degree()));
}

ConjugacyResult conjugacy(const PermGroup& g, const PermGroup& h, const PermGroup& l,
                          const Limits& limits) {
  if (h.order() != l.order())
    return {ConjugacyResult::Status::not_conjugate, std::nullopt, "orders differ"};
  OrbitData dh = orbit_data(h), dl = orbit_data(l);
  if (dh.sorted_sizes != dl.sorted_sizes)
    return {ConjugacyResult::Status::not_conjugate, std::nullopt, "orbit length profiles differ"};
  if (same_group(h, l))
    return {ConjugacyResult::Status::conjugate, Permutation(g.degree()), "equal subgroups"};
  try {
    limits.check_search(g.degree(), g.order(), "conjugacy search");
  } catch (const LimitError& e) {
    return {ConjugacyResult::Status::undecided, std::nullopt, e.what()};
  }
  SearchProperty prop;
  prop.prune = orbit_prune(dh, dl);
  prop.accept = [&h, &l](const Permutation& p) { return normalizes(p, h, l); };
  if (auto x = element_search(g, {}, prop))
    return {ConjugacyResult::Status::conjugate, *x, "conjugating element found"};
  return {ConjugacyResult::Status::not_conjugate, std::nullopt, "search exhausted"};
}

PermGroup core(const PermGroup& g, const PermGroup& h, const Limits& limits) {
  PermGroup c = h;
  for (;;) {
    bool stable = true;
    for (const auto& s : g.generators()) {
      PermGroup cs = conjugate(c, s);
      if (!is_subgroup(cs, c)) {
        c = intersection(c, cs, limits);
        stable = false;
      }
    }
    if (stable) return c;
  }
}

}  // namespace cartdec
