#pragma once

// Hand-rolled random generators for the property tests. Every generator takes
// the engine explicitly so failures reproduce from the seed.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cartdec/group.hpp"
#include "cartdec/partition.hpp"
#include "cartdec/permutation.hpp"

namespace gen {

using cartdec::Permutation;
using cartdec::PermGroup;
using cartdec::Point;
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Permutation permutation(std::size_t n, Rng& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

inline Permutation cycle(std::size_t n, std::vector<Point> pts) { return Permutation::from_cycles(n, {pts}); }

inline PermGroup symmetric(std::size_t n) {
  std::vector<Point> all(n);
  std::iota(all.begin(), all.end(), 0);
  return PermGroup(n, {cycle(n, {0, 1}), cycle(n, all)});
}

inline PermGroup alternating(std::size_t n) {
  std::vector<Point> rest(n % 2 ? n : n - 1);
  std::iota(rest.begin(), rest.end(), n % 2 ? 0 : 1);
  return PermGroup(n, {cycle(n, {0, 1, 2}), cycle(n, rest)});
}

inline PermGroup cyclic(std::size_t n) {
  std::vector<Point> all(n);
  std::iota(all.begin(), all.end(), 0);
  return PermGroup(n, {cycle(n, all)});
}

// Labels in [0, blocks) with every label used.
inline cartdec::Partition partition(std::size_t n, std::size_t blocks, Rng& rng) {
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < blocks ? i : uniform(rng, 0, blocks - 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return cartdec::Partition::from_labels(std::span<const std::uint32_t>(labels));
}

// Set partition of {0..k-1} with every part of size >= min_part (when
// possible); returned sorted by least element.
inline std::vector<std::vector<std::size_t>> set_partition(std::size_t k, std::size_t min_part, Rng& rng) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<std::vector<std::size_t>> parts;
  std::size_t i = 0;
  while (i < k) {
    std::size_t left = k - i;
    std::size_t len = left <= 2 * min_part - 1 ? left : uniform(rng, min_part, left - min_part);
    if (min_part == 1) len = uniform(rng, 1, left);
    parts.emplace_back(idx.begin() + i, idx.begin() + i + len);
    std::sort(parts.back().begin(), parts.back().end());
    i += len;
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

// x acting on copy b of k copies of an n-point set.
inline Permutation place(const Permutation& x, std::size_t b, std::size_t k) {
  return cartdec::shifted(x, b * x.degree(), x.degree() * k);
}

// The strip {(phi_i(h))_{i in support} : h in H1} in T^k, where phi_i is
// conjugation by twists[i] (which must normalize T).
inline PermGroup strip(const std::vector<Permutation>& h1_gens, const std::vector<std::size_t>& support,
                       const std::vector<Permutation>& twists, std::size_t k) {
  const std::size_t n = twists[0].degree();
  std::vector<Permutation> gens;
  for (const auto& h : h1_gens) {
    Permutation x(n * k);
    for (std::size_t i : support) x = x * place(cartdec::conjugate(h, twists[i]), i, k);
    gens.push_back(x);
  }
  return PermGroup(n * k, gens);
}

// A random nontrivial subgroup of t generated by one or two random elements.
inline std::vector<Permutation> random_subgroup_gens(const PermGroup& t, Rng& rng) {
  std::vector<Permutation> out;
  const std::size_t count = uniform(rng, 1, 2);
  while (out.size() < count) {
    Permutation x = t.random_element(rng);
    if (!x.is_identity()) out.push_back(x);
  }
  return out;
}

}  // namespace gen
