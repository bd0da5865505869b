#pragma once

// Reference computations that work on explicit element lists. Nothing here
// uses a stabilizer chain or a backtrack search, so they can check both.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"
#include "cartdec/permutation.hpp"

namespace oracle {

using cartdec::Permutation;
using cartdec::PermGroup;
using cartdec::Point;
using ElementSet = std::unordered_set<Permutation, cartdec::PermutationHash>;

// Closure of the generators under right multiplication.
inline std::vector<Permutation> elements(std::size_t degree, const std::vector<Permutation>& gens,
                                         std::size_t cap = 2000000) {
  ElementSet seen;
  std::vector<Permutation> out;
  Permutation id(degree);
  seen.insert(id);
  out.push_back(id);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Permutation y = out[i] * g;
      if (seen.insert(y).second) {
        out.push_back(y);
        if (out.size() > cap) throw std::runtime_error("oracle: element cap exceeded");
      }
    }
  return out;
}

inline std::vector<Permutation> elements(const PermGroup& g, std::size_t cap = 2000000) {
  return elements(g.degree(), g.generators(), cap);
}

inline ElementSet as_set(const std::vector<Permutation>& xs) { return ElementSet(xs.begin(), xs.end()); }

inline std::vector<Point> orbit(std::size_t degree, const std::vector<Permutation>& gens, Point p) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{p};
  seen[p] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens)
      if (!seen[g[out[i]]]) {
        seen[g[out[i]]] = true;
        out.push_back(g[out[i]]);
      }
  std::sort(out.begin(), out.end());
  return out;
}

// Elements of `g` satisfying `pred`.
template <class Pred>
std::vector<Permutation> filter(const std::vector<Permutation>& g, Pred pred) {
  std::vector<Permutation> out;
  for (const auto& x : g)
    if (pred(x)) out.push_back(x);
  return out;
}

inline std::uint64_t intersection_order(const std::vector<Permutation>& g, const ElementSet& h) {
  return std::count_if(g.begin(), g.end(), [&](const Permutation& x) { return h.count(x) > 0; });
}

// x normalizes H iff it maps each generator of H into H.
inline std::vector<Permutation> normalizer(const std::vector<Permutation>& g, const std::vector<Permutation>& hgens,
                                           const ElementSet& h) {
  return filter(g, [&](const Permutation& x) {
    return std::all_of(hgens.begin(), hgens.end(),
                       [&](const Permutation& y) { return h.count(cartdec::conjugate(y, x)) > 0; });
  });
}

inline std::vector<Permutation> centralizer(const std::vector<Permutation>& g, const std::vector<Permutation>& hgens) {
  return filter(g, [&](const Permutation& x) {
    return std::all_of(hgens.begin(), hgens.end(), [&](const Permutation& y) { return x * y == y * x; });
  });
}

inline std::vector<Permutation> point_stabilizer(const std::vector<Permutation>& g, Point p) {
  return filter(g, [&](const Permutation& x) { return x[p] == p; });
}

// Block systems of a transitive group from its element list: a block
// through 0 is a union of orbits of the stabilizer of 0, and it is a block
// when every element maps it to itself or off it.
inline std::vector<cartdec::Partition> block_systems(std::size_t degree, const std::vector<Permutation>& g) {
  auto stab = point_stabilizer(g, 0);
  std::vector<std::vector<Point>> suborbits;
  std::vector<bool> seen(degree, false);
  for (Point p = 0; p < degree; ++p) {
    if (seen[p]) continue;
    std::set<Point> o;
    for (const auto& x : stab) o.insert(x[p]);
    for (Point q : o) seen[q] = true;
    suborbits.emplace_back(o.begin(), o.end());
  }
  std::vector<cartdec::Partition> out;
  const std::size_t r = suborbits.size();
  if (r > 24) throw std::runtime_error("oracle: too many suborbits");
  // suborbits[0] is {0}.
  for (std::uint64_t mask = 0; mask < (1ull << (r - 1)); ++mask) {
    std::vector<bool> in(degree, false);
    std::vector<Point> block = suborbits[0];
    for (std::size_t b = 1; b < r; ++b)
      if (mask >> (b - 1) & 1) block.insert(block.end(), suborbits[b].begin(), suborbits[b].end());
    if (block.size() == 1 || block.size() == degree || degree % block.size()) continue;
    for (Point p : block) in[p] = true;
    bool ok = true;
    std::vector<std::vector<Point>> translates;
    std::set<std::vector<Point>> distinct;
    for (const auto& x : g) {
      std::size_t hit = 0;
      std::vector<Point> img;
      for (Point p : block) {
        img.push_back(x[p]);
        hit += in[x[p]];
      }
      if (hit != 0 && hit != block.size()) {
        ok = false;
        break;
      }
      std::sort(img.begin(), img.end());
      if (distinct.insert(img).second) translates.push_back(img);
    }
    if (ok) out.push_back(cartdec::Partition::from_blocks(degree, translates));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cartesian axiom by listing every selection of blocks.
inline bool cartesian(const std::vector<cartdec::Partition>& parts) {
  if (parts.empty()) return false;
  const std::size_t n = parts[0].degree();
  std::uint64_t total = 1;
  for (const auto& p : parts) {
    if (p.block_count() < 2 && !(parts.size() == 1 && p.is_singletons())) return false;
    total *= p.block_count();
    if (total > n) return false;
  }
  if (total != n) return false;
  // Each point gives one selection; the axiom holds iff they are distinct.
  std::set<std::vector<std::uint32_t>> sel;
  for (Point x = 0; x < n; ++x) {
    std::vector<std::uint32_t> s;
    for (const auto& p : parts) s.push_back(p.block_of(x));
    sel.insert(s);
  }
  return sel.size() == n;
}

// G-invariant Cartesian decompositions of index >= 2 built from the given
// block systems, by trying every subset whose block counts multiply to n.
inline std::vector<cartdec::CartesianDecomposition> invariant_decompositions(
    const std::vector<cartdec::Partition>& systems, const std::vector<Permutation>& g_gens) {
  std::vector<cartdec::CartesianDecomposition> out;
  if (systems.empty()) return out;
  const std::size_t n = systems[0].degree();
  std::vector<cartdec::Partition> chosen;
  auto invariant = [&] {
    for (const auto& x : g_gens)
      for (const auto& p : chosen)
        if (std::find(chosen.begin(), chosen.end(), p.image(x)) == chosen.end()) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t prod) -> void {
    if (prod == n && chosen.size() >= 2 && cartesian(chosen) && invariant())
      out.push_back(cartdec::CartesianDecomposition(chosen).canonical());
    for (std::size_t i = from; i < systems.size(); ++i) {
      const std::uint64_t next = prod * systems[i].block_count();
      if (next > n || n % next) continue;
      chosen.push_back(systems[i]);
      self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.partitions() < b.partitions(); });
  return out;
}

}  // namespace oracle
