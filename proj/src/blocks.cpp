#include "cartdec/blocks.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace cartdec {

Partition minimal_block_system(const PermGroup& g, std::span<const Point> seed) {
  const std::size_t n = g.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::deque<Point> queue;
  auto merge = [&](Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    queue.push_back(b);
  };
  for (std::size_t i = 1; i < seed.size(); ++i) merge(seed[0], seed[i]);
  while (!queue.empty()) {
    Point gamma = queue.front();
    queue.pop_front();
    Point delta = find(gamma);
    for (const auto& s : g.generators()) merge(s[gamma], s[delta]);
  }
  std::vector<std::uint32_t> raw(n);
  for (Point x = 0; x < n; ++x) raw[x] = find(x);
  return Partition::from_labels(std::span<const std::uint32_t>(raw));
}

namespace {

std::vector<Partition> seeded_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw InputError("block systems requested for an intransitive group");
  std::set<Partition> found;
  for (Point p = 1; p < g.degree(); ++p) {
    Point seed[2] = {0, p};
    Partition s = minimal_block_system(g, seed);
    if (s.is_whole()) continue;
    found.insert(s);
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::vector<Partition> block_systems(const PermGroup& g) {
  auto seeded = seeded_systems(g);
  std::vector<Partition> out;
  for (const auto& s : seeded) {
    bool minimal = true;
    for (const auto& t : seeded)
      if (!(t == s) && t.refines(s)) minimal = false;
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> all_block_systems(const PermGroup& g) {
  auto seeded = seeded_systems(g);
  std::set<Partition> all(seeded.begin(), seeded.end());
  std::vector<Partition> frontier(seeded.begin(), seeded.end());
  while (!frontier.empty()) {
    std::vector<Partition> next;
    for (const auto& a : frontier)
      for (const auto& b : seeded) {
        Partition j = join(a, b);
        if (!j.is_whole() && all.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

Partition block_system_from_block(const PermGroup& g, std::span<const Point> block) {
  const std::size_t n = g.degree();
  std::vector<std::uint32_t> raw(n, UINT32_MAX);
  std::vector<std::vector<Point>> blocks{std::vector<Point>(block.begin(), block.end())};
  for (Point p : blocks[0]) raw[p] = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (const auto& s : g.generators()) {
      std::vector<Point> img;
      for (Point p : blocks[k]) img.push_back(s[p]);
      std::uint32_t lab = raw[img[0]];
      if (lab != UINT32_MAX) {
        for (Point p : img)
          if (raw[p] != lab) throw InputError("set is not a block of imprimitivity");
        continue;
      }
      for (Point p : img) {
        if (raw[p] != UINT32_MAX) throw InputError("set is not a block of imprimitivity");
        raw[p] = static_cast<std::uint32_t>(blocks.size());
      }
      blocks.push_back(std::move(img));
    }
  }
  for (auto r : raw)
    if (r == UINT32_MAX) throw InputError("block translates do not cover the domain");
  return Partition::from_labels(std::span<const std::uint32_t>(raw));
}

Permutation action_on_blocks(const Partition& p, const Permutation& x) {
  std::vector<Point> img(p.block_count(), UINT32_MAX);
  for (Point q = 0; q < p.degree(); ++q) {
    Point b = p.block_of(q), c = p.block_of(x[q]);
    if (img[b] == UINT32_MAX)
      img[b] = c;
    else if (img[b] != c)
      throw InputError("partition is not invariant under the permutation");
  }
  return Permutation::from_images(std::move(img));
}

PermGroup action_on_blocks(const Partition& p, const PermGroup& g) {
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(action_on_blocks(p, s));
  return PermGroup(p.block_count(), std::move(gens));
}

}  // namespace cartdec
