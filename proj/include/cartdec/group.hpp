#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cartdec/errors.hpp"
#include "cartdec/permutation.hpp"

namespace cartdec {

// Resource guards. Backtrack searches refuse to start beyond these unless
// `override_guard` is set.
struct Limits {
  std::size_t max_search_degree = 20000;
  std::uint64_t max_search_order = 1000000000ull;
  bool override_guard = false;
  std::size_t max_coset_index = 100000;
  std::size_t max_enumeration_degree = 5000;

  void check_search(std::size_t degree, std::uint64_t order, const std::string& what) const;
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

class StabilizerChain {
 public:
  struct Options {
    // Base points to use first, in order; levels with trivial orbits are kept.
    std::vector<Point> base_prefix;
    // Claimed order. When the random phase reaches it the chain is complete
    // (a partial chain never overshoots); otherwise the deterministic pass
    // runs and a mismatch is reported as InputError.
    std::optional<std::uint64_t> known_order;
    // New base points are drawn from [0, window).
    std::size_t window = std::numeric_limits<std::size_t>::max();
    std::uint64_t seed = 0x5eed5eedull;
    // Optional source of uniformly random group elements.
    std::function<Permutation(std::mt19937_64&)> sampler;
  };

  StabilizerChain() = default;
  static StabilizerChain build(std::size_t degree, const std::vector<Permutation>& gens,
                               const Options& opts);
  // Like build with a target order, but gives up (returns nullopt) instead of
  // running the deterministic pass when the generators seem to fall short.
  static std::optional<StabilizerChain> try_build_to_order(std::size_t degree,
                                                           const std::vector<Permutation>& gens,
                                                           std::uint64_t target,
                                                           const Options& opts,
                                                           std::size_t patience = 60);

  std::size_t degree() const { return degree_; }
  std::size_t length() const { return levels_.size(); }
  std::vector<Point> base() const;
  Point base_point(std::size_t i) const { return levels_[i].base; }
  std::uint64_t order() const;
  std::uint64_t order_from(std::size_t level) const;

  const std::vector<Point>& orbit(std::size_t i) const { return levels_[i].orbit; }
  bool in_orbit(std::size_t i, Point p) const { return levels_[i].edge[p] != kAbsent; }
  // u with base_point(i)^u = p, u in the level-i subgroup.
  Permutation transversal(std::size_t i, Point p) const;
  // Generators of the stabilizer of the first i base points.
  std::vector<Permutation> level_generators(std::size_t i) const;
  const std::vector<Permutation>& strong_generators() const { return strong_; }

  struct Sift {
    Permutation residue;
    std::size_t level;  // == length() when every level was passed
  };
  Sift sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;

  Permutation random_element(std::mt19937_64& rng) const;
  // Visits every element; the callback returns false to stop early.
  void for_each_element(const std::function<bool(const Permutation&)>& fn) const;

 private:
  static constexpr std::int32_t kAbsent = -1;
  static constexpr std::int32_t kRoot = -2;

  struct Level {
    Point base = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<Point> orbit;
    std::vector<std::int32_t> edge;  // local generator index that reached the point
    std::vector<Permutation> cached;  // explicit transversal when affordable
    std::vector<std::uint32_t> position;
  };

  void add_level(Point base);
  void recompute_orbit(std::size_t i);
  void extend_orbit(std::size_t i, std::size_t local_gen);
  void add_strong(const Permutation& h, std::size_t upto, std::size_t window);
  Point parent(std::size_t i, Point p) const;
  void finalize_cache();
  bool schreier_pass(std::size_t window);
  void sift_random(const std::function<Permutation(std::mt19937_64&)>& draw,
                   std::mt19937_64& rng, std::size_t window, std::optional<std::uint64_t> target,
                   std::size_t patience);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
};

// Product replacement generator of pseudo-random elements.
class RandomSource {
 public:
  RandomSource(std::size_t degree, const std::vector<Permutation>& gens, std::uint64_t seed);
  Permutation next();
  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<Permutation> state_;
  Permutation acc_;
  std::mt19937_64 rng_;
};

// A permutation group given by generators; the stabilizer chain is built on
// first use and shared by copies.
class PermGroup {
 public:
  PermGroup();
  PermGroup(std::size_t degree, std::vector<Permutation> gens, std::string name = {});
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  // Records an order obtained elsewhere; the chain is then certified by it.
  void set_known_order(std::uint64_t order) const;
  std::optional<std::uint64_t> known_order() const;

  const StabilizerChain& chain() const;
  std::shared_ptr<const StabilizerChain> chain_with_base(std::span<const Point> prefix,
                                                         std::size_t window = std::numeric_limits<
                                                             std::size_t>::max()) const;
  std::uint64_t order() const { return chain().order(); }
  bool contains(const Permutation& g) const;
  bool is_trivial() const;
  // Installs a chain built elsewhere from exactly these generators.
  void adopt_chain(std::shared_ptr<const StabilizerChain> chain) const;
  Permutation random_element(std::mt19937_64& rng) const { return chain().random_element(rng); }

 private:
  struct Shared;
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::string name_;
  std::shared_ptr<Shared> shared_;
};

std::vector<Point> orbit(const PermGroup& g, Point p);
std::vector<std::vector<Point>> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

bool is_subgroup(const PermGroup& h, const PermGroup& g);
bool same_group(const PermGroup& a, const PermGroup& b);
bool is_normal(const PermGroup& n, const PermGroup& g);
// Group generated by the union of generator lists.
PermGroup join(const PermGroup& a, const PermGroup& b);
PermGroup conjugate(const PermGroup& h, const Permutation& g);

PermGroup point_stabilizer(const PermGroup& g, Point p);
PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points);

// Drops identities and duplicates; keeps order otherwise.
std::vector<Permutation> tidy_generators(std::vector<Permutation> gens);

// Stabilizer of `start` under an action given by `act`, computed from the
// orbit and Schreier generators with the order |G|/|orbit| as certificate.
template <class Key, class Hash, class Act>
PermGroup orbit_stabilizer(const PermGroup& g, const Key& start, Act act, std::size_t max_orbit,
                           std::vector<Key>* orbit_out = nullptr);

PermGroup stabilizer_from_schreier(const PermGroup& g, std::size_t orbit_size,
                                   const std::function<Permutation(std::mt19937_64&)>& schreier_gen,
                                   const std::function<std::vector<Permutation>()>& all_schreier);

template <class Key, class Hash, class Act>
PermGroup orbit_stabilizer(const PermGroup& g, const Key& start, Act act, std::size_t max_orbit,
                           std::vector<Key>* orbit_out) {
  if (g.generators().empty()) {
    if (orbit_out) *orbit_out = {start};
    return PermGroup::trivial(g.degree());
  }
  std::vector<Key> keys{start};
  std::vector<std::pair<std::size_t, std::size_t>> back{{0, SIZE_MAX}};
  std::unordered_map<Key, std::size_t, Hash> index{{start, 0}};
  const auto& gens = g.generators();
  for (std::size_t q = 0; q < keys.size(); ++q) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Key img = act(keys[q], gens[s]);
      if (index.emplace(img, keys.size()).second) {
        keys.push_back(std::move(img));
        back.emplace_back(q, s);
        if (keys.size() > max_orbit) throw LimitError("orbit exceeds cap of " + std::to_string(max_orbit));
      }
    }
  }
  auto word = [&](std::size_t k) {
    Permutation u(g.degree());
    std::vector<std::size_t> path;
    while (back[k].second != SIZE_MAX) {
      path.push_back(back[k].second);
      k = back[k].first;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) u = u * gens[*it];
    return u;
  };
  auto schreier = [&](std::size_t k, std::size_t s) {
    Key img = act(keys[k], gens[s]);
    return word(k) * gens[s] * word(index.at(img)).inverse();
  };
  auto random_gen = [&](std::mt19937_64& rng) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, keys.size() - 1)(rng);
    std::size_t s = std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng);
    return schreier(k, s);
  };
  auto all = [&]() {
    std::vector<Permutation> out;
    for (std::size_t k = 0; k < keys.size(); ++k)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Permutation y = schreier(k, s);
        if (!y.is_identity()) out.push_back(std::move(y));
      }
    return out;
  };
  PermGroup stab = stabilizer_from_schreier(g, keys.size(), random_gen, all);
  if (orbit_out) *orbit_out = std::move(keys);
  return stab;
}

}  // namespace cartdec
