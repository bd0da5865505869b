#include "cartdec/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace cartdec {
namespace {

template <class T>
std::pair<std::vector<std::uint32_t>, std::size_t> canonical_labels(std::span<const T> raw) {
  std::vector<std::uint32_t> out(raw.size());
  std::unordered_map<T, std::uint32_t> seen;
  seen.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, fresh] = seen.emplace(raw[i], static_cast<std::uint32_t>(seen.size()));
    out[i] = it->second;
  }
  return {std::move(out), seen.size()};
}

}  // namespace

Partition Partition::from_blocks(std::size_t degree, const std::vector<std::vector<Point>>& blocks) {
  std::vector<std::uint32_t> raw(degree, UINT32_MAX);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw InputError("empty block in partition");
    for (Point p : blocks[b]) {
      if (p >= degree) throw InputError("block point " + std::to_string(p) + " out of range");
      if (raw[p] != UINT32_MAX) throw InputError("point " + std::to_string(p) + " lies in two blocks");
      raw[p] = static_cast<std::uint32_t>(b);
    }
  }
  for (std::size_t p = 0; p < degree; ++p)
    if (raw[p] == UINT32_MAX) throw InputError("point " + std::to_string(p) + " lies in no block");
  return from_labels(std::span<const std::uint32_t>(raw));
}

Partition Partition::from_labels(std::span<const std::uint64_t> labels) {
  Partition p;
  std::tie(p.labels_, p.count_) = canonical_labels(labels);
  return p;
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  std::tie(p.labels_, p.count_) = canonical_labels(labels);
  return p;
}

Partition Partition::singletons(std::size_t degree) {
  Partition p;
  p.labels_.resize(degree);
  std::iota(p.labels_.begin(), p.labels_.end(), 0u);
  p.count_ = degree;
  return p;
}

Partition Partition::whole(std::size_t degree) {
  Partition p;
  p.labels_.assign(degree, 0);
  p.count_ = degree ? 1 : 0;
  return p;
}

std::vector<std::vector<Point>> Partition::blocks() const {
  std::vector<std::vector<Point>> out(count_);
  for (std::size_t p = 0; p < labels_.size(); ++p) out[labels_[p]].push_back(static_cast<Point>(p));
  return out;
}

std::vector<Point> Partition::block(std::uint32_t b) const {
  std::vector<Point> out;
  for (std::size_t p = 0; p < labels_.size(); ++p)
    if (labels_[p] == b) out.push_back(static_cast<Point>(p));
  return out;
}

std::size_t Partition::uniform_block_size() const {
  if (count_ == 0) return 0;
  std::vector<std::size_t> sizes(count_, 0);
  for (auto l : labels_) ++sizes[l];
  for (auto s : sizes)
    if (s != sizes[0]) return 0;
  return sizes[0];
}

Partition Partition::image(const Permutation& g) const {
  if (g.degree() != labels_.size()) throw InputError("degree mismatch in partition image");
  std::vector<std::uint32_t> raw(labels_.size());
  for (std::size_t p = 0; p < labels_.size(); ++p) raw[g[static_cast<Point>(p)]] = labels_[p];
  return from_labels(std::span<const std::uint32_t>(raw));
}

bool Partition::refines(const Partition& coarser) const {
  std::vector<std::uint32_t> map(count_, UINT32_MAX);
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    auto& m = map[labels_[p]];
    if (m == UINT32_MAX)
      m = coarser.labels_[p];
    else if (m != coarser.labels_[p])
      return false;
  }
  return true;
}

bool Partition::operator<(const Partition& o) const {
  if (count_ != o.count_) return count_ < o.count_;
  return labels_ < o.labels_;
}

std::size_t PartitionHash::operator()(const Partition& p) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : p.labels()) h = (h ^ x) * 1099511628211ull;
  return static_cast<std::size_t>(h);
}

Partition infimum(std::span<const Partition> parts) {
  if (parts.empty()) throw InputError("infimum of an empty sequence");
  Partition acc = parts[0];
  std::vector<std::uint64_t> keys(acc.degree());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].degree() != acc.degree()) throw InputError("degree mismatch in infimum");
    kernels::active().combine_labels(acc.labels().data(), parts[i].labels().data(),
                                     static_cast<Point>(parts[i].block_count()), keys.data(),
                                     keys.size());
    acc = Partition::from_labels(std::span<const std::uint64_t>(keys));
  }
  return acc;
}

Partition join(const Partition& a, const Partition& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in join");
  const std::size_t n = a.degree();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Partition* p : {&a, &b}) {
    std::vector<std::uint32_t> first(p->block_count(), UINT32_MAX);
    for (std::uint32_t x = 0; x < n; ++x) {
      auto& f = first[p->block_of(x)];
      if (f == UINT32_MAX)
        f = x;
      else
        parent[find(x)] = find(f);
    }
  }
  std::vector<std::uint32_t> raw(n);
  for (std::uint32_t x = 0; x < n; ++x) raw[x] = find(x);
  return Partition::from_labels(std::span<const std::uint32_t>(raw));
}

CartesianCheck check_cartesian(std::span<const Partition> parts) {
  CartesianCheck r;
  if (parts.empty()) {
    r.reason = "empty decomposition";
    return r;
  }
  const std::size_t n = parts[0].degree();
  for (const auto& p : parts)
    if (p.degree() != n) throw InputError("degree mismatch in decomposition");
  if (parts.size() == 1 && parts[0].is_singletons()) {
    r.ok = true;
    r.degenerate = true;
    return r;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].block_count() < 2) {
      r.reason = "partition " + std::to_string(i) + " has a single block";
      return r;
    }
  }
  // Points sharing a tuple of blocks witness a selection meeting twice.
  std::vector<std::uint32_t> tuple(parts.size());
  Partition inf = infimum(parts);
  if (inf.block_count() < n) {
    std::vector<Point> rep(inf.block_count(), UINT32_MAX);
    for (Point p = 0; p < n; ++p) {
      auto& q = rep[inf.block_of(p)];
      if (q == UINT32_MAX) {
        q = p;
        continue;
      }
      for (std::size_t i = 0; i < parts.size(); ++i) r.selection.push_back(parts[i].block_of(p));
      r.meets = 0;
      for (Point x = 0; x < n; ++x) r.meets += inf.block_of(x) == inf.block_of(p);
      r.reason = "points " + std::to_string(q) + " and " + std::to_string(p) +
                 " lie in the same block of every partition";
      return r;
    }
  }
  // Injective; check surjectivity via the product of block counts.
  unsigned __int128 prod = 1;
  for (const auto& p : parts) {
    prod *= p.block_count();
    if (prod > n) break;
  }
  if (prod == n) {
    r.ok = true;
    return r;
  }
  // Some selection is empty; find the lexicographically first.
  std::set<std::vector<std::uint32_t>> occupied;
  for (Point p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < parts.size(); ++i) tuple[i] = parts[i].block_of(p);
    occupied.insert(tuple);
  }
  std::vector<std::uint32_t> sel(parts.size(), 0);
  for (;;) {
    if (!occupied.count(sel)) break;
    std::size_t i = parts.size();
    while (i-- > 0) {
      if (++sel[i] < parts[i].block_count()) break;
      sel[i] = 0;
    }
  }
  r.selection = sel;
  r.meets = 0;
  r.reason = "a selection of blocks has empty intersection";
  return r;
}

CartesianDecomposition::CartesianDecomposition(std::vector<Partition> parts) : parts_(std::move(parts)) {
  CartesianCheck c = check_cartesian(parts_);
  if (!c.ok) {
    std::string sel;
    for (auto s : c.selection) sel += (sel.empty() ? "" : ",") + std::to_string(s);
    throw InputError("not a Cartesian decomposition: " + c.reason +
                     (sel.empty() ? "" : " (selection [" + sel + "])"));
  }
}

std::optional<std::size_t> CartesianDecomposition::find(const Partition& p) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i] == p) return i;
  return std::nullopt;
}

CartesianDecomposition CartesianDecomposition::canonical() const {
  CartesianDecomposition c = *this;
  std::sort(c.parts_.begin(), c.parts_.end());
  return c;
}

DecompositionProperties decomposition_properties(const CartesianDecomposition& e,
                                                 const PermGroup& g) {
  if (e.degree() != g.degree()) throw InputError("degree mismatch between group and decomposition");
  DecompositionProperties d;
  std::unordered_map<Partition, std::size_t, PartitionHash> index;
  for (std::size_t i = 0; i < e.index(); ++i) index.emplace(e[i], i);
  d.invariant = true;
  for (std::size_t s = 0; s < g.generators().size() && d.invariant; ++s) {
    std::vector<std::size_t> act(e.index());
    for (std::size_t i = 0; i < e.index(); ++i) {
      auto it = index.find(e[i].image(g.generators()[s]));
      if (it == index.end()) {
        d.invariant = false;
        d.bad_generator = s;
        d.bad_partition = i;
        break;
      }
      act[i] = it->second;
    }
    if (d.invariant) d.action.push_back(std::move(act));
  }
  std::size_t m = e.index() ? e[0].block_count() : 0;
  d.homogeneous = true;
  for (const auto& p : e.partitions()) d.homogeneous &= p.block_count() == m;
  d.m = d.homogeneous ? m : 0;
  if (!d.invariant) {
    d.action.clear();
    return d;
  }
  std::vector<bool> seen(e.index(), false);
  for (std::size_t i = 0; i < e.index(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orb{i};
    seen[i] = true;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& act : d.action)
        if (!seen[act[orb[k]]]) {
          seen[act[orb[k]]] = true;
          orb.push_back(act[orb[k]]);
        }
    std::sort(orb.begin(), orb.end());
    d.orbits.push_back(std::move(orb));
  }
  d.transitive = d.orbits.size() == 1;
  return d;
}

}  // namespace cartdec
