#include "cartdec/system.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cartdec/blocks.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/io.hpp"
#include "cartdec/search.hpp"

namespace cartdec {
namespace {

PermGroup meet_all(const std::vector<const PermGroup*>& gs, const PermGroup& whole, const Limits& limits) {
  if (gs.empty()) return whole;
  PermGroup acc = *gs[0];
  for (std::size_t i = 1; i < gs.size(); ++i) acc = intersection(acc, *gs[i], limits);
  return acc;
}

bool product_is(std::uint64_t a, std::uint64_t b, std::uint64_t meet, std::uint64_t m) {
  return a % meet == 0 && checked_mul(a / meet, b) == m;
}

}  // namespace

nlohmann::json CartesianSystem::to_json() const {
  nlohmann::json j;
  j["omega"] = omega;
  j["stabilizer_order"] = stabilizer.order();
  j["members"] = nlohmann::json::array();
  for (const auto& k : members) {
    nlohmann::json g = io::group_to_json(k);
    g["order"] = k.order();
    j["members"].push_back(std::move(g));
  }
  return j;
}

CartesianSystem system_from_decomposition(const PermGroup& m, Point omega, const CartesianDecomposition& e) {
  if (e.degree() != m.degree()) throw InputError("decomposition and group have different degrees");
  if (omega >= m.degree()) throw InputError("base point out of range");
  for (std::size_t i = 0; i < e.index(); ++i)
    for (std::size_t g = 0; g < m.generators().size(); ++g)
      if (!(e[i].image(m.generators()[g]) == e[i]))
        throw InputError("partition " + std::to_string(i) + " is not invariant under generator " +
                         std::to_string(g) + " of M");
  Point base[1] = {omega};
  auto chain = m.chain_with_base(base);
  if (chain->orbit(0).size() != m.degree()) throw InputError("M is not transitive");
  CartesianSystem s;
  s.m = m;
  s.omega = omega;
  s.stabilizer = PermGroup(m.degree(), chain->level_generators(1));
  s.stabilizer.set_known_order(chain->order_from(1));
  for (const auto& part : e.partitions()) {
    std::vector<Permutation> gens = chain->level_generators(1);
    auto block = part.block(part.block_of(omega));
    for (Point p : block)
      if (p != omega) gens.push_back(chain->transversal(0, p));
    PermGroup k(m.degree(), tidy_generators(std::move(gens)));
    k.set_known_order(checked_mul(chain->order_from(1), block.size()));
    s.members.push_back(std::move(k));
  }
  return s;
}

CartesianDecomposition decomposition_from_system(const CartesianSystem& s) {
  std::vector<Partition> parts;
  for (const auto& k : s.members) {
    auto block = orbit(k, s.omega);
    std::sort(block.begin(), block.end());
    try {
      parts.push_back(block_system_from_block(s.m, block));
    } catch (const InputError& e) {
      throw TheoremViolation(std::string("member orbit translates do not partition the points: ") + e.what(),
                             {{"orbit_size", block.size()}});
    }
  }
  return CartesianDecomposition(std::move(parts));
}

Witnessed verify_cartesian_system(const CartesianSystem& s, const Limits& limits) {
  const std::uint64_t m = s.m.order();
  if (s.members.empty()) return Witnessed::fail("empty system");
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (s.members[i].order() >= m)
      return Witnessed::fail("member is not proper", {{"member", i}});
    for (const auto& x : s.stabilizer.generators())
      if (!s.members[i].contains(x))
        return Witnessed::fail("point stabilizer is not contained in a member", {{"member", i}});
  }
  std::vector<const PermGroup*> all;
  for (const auto& k : s.members) all.push_back(&k);
  std::uint64_t meet = meet_all(all, s.m, limits).order();
  if (meet != s.stabilizer.order())
    return Witnessed::fail("intersection of the members is not the point stabilizer",
                           {{"intersection_order", meet}, {"stabilizer_order", s.stabilizer.order()}});
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    std::vector<const PermGroup*> rest;
    for (std::size_t j = 0; j < s.members.size(); ++j)
      if (j != i) rest.push_back(&s.members[j]);
    PermGroup r = meet_all(rest, s.m, limits);
    std::uint64_t both = intersection(s.members[i], r, limits).order();
    if (!product_is(s.members[i].order(), r.order(), both, m))
      return Witnessed::fail("member times the intersection of the others is not M",
                             {{"member", i}, {"member_order", s.members[i].order()},
                              {"others_order", r.order()}, {"meet_order", both}});
  }
  return {};
}

Witnessed verify_simple_factor_identity(const CartesianSystem& s, const DirectFactorisation& d,
                                        const Limits& limits) {
  const std::size_t l = s.members.size();
  for (std::size_t i = 0; i < d.k(); ++i) {
    std::vector<PermGroup> proj;
    for (const auto& k : s.members) proj.push_back(d.projection(i, k));
    PermGroup ti = d.projection(i, d.group());
    for (std::size_t j = 0; j < l; ++j) {
      std::vector<const PermGroup*> rest;
      for (std::size_t jj = 0; jj < l; ++jj)
        if (jj != j) rest.push_back(&proj[jj]);
      PermGroup r = meet_all(rest, ti, limits);
      std::uint64_t both = intersection(proj[j], r, limits).order();
      if (!product_is(proj[j].order(), r.order(), both, d.factor_order()))
        return Witnessed::fail("projected system does not factorise the simple factor",
                               {{"factor", i}, {"member", j}, {"projection_order", proj[j].order()},
                                {"others_order", r.order()}});
    }
  }
  return {};
}

Witnessed merged_system_check(const CartesianSystem& s, const std::vector<std::vector<std::size_t>>& sets,
                              const Limits& limits) {
  std::vector<bool> used(s.members.size(), false);
  for (const auto& set : sets) {
    if (set.empty()) throw InputError("merged system: empty index set");
    for (auto j : set) {
      if (j >= s.members.size()) throw InputError("merged system: index out of range");
      if (used[j]) throw InputError("merged system: index sets are not disjoint");
      used[j] = true;
    }
  }
  std::vector<PermGroup> q;
  for (const auto& set : sets) {
    std::vector<const PermGroup*> gs;
    for (auto j : set) gs.push_back(&s.members[j]);
    q.push_back(meet_all(gs, s.m, limits));
  }
  const std::uint64_t m = s.m.order();
  for (std::size_t a = 0; a < q.size(); ++a) {
    std::vector<const PermGroup*> rest;
    for (std::size_t b = 0; b < q.size(); ++b)
      if (b != a) rest.push_back(&q[b]);
    PermGroup r = meet_all(rest, s.m, limits);
    std::uint64_t both = intersection(q[a], r, limits).order();
    if (!product_is(q[a].order(), r.order(), both, m))
      return Witnessed::fail("merged member times the intersection of the others is not M",
                             {{"set", a}, {"merged_order", q[a].order()}, {"others_order", r.order()}});
  }
  return {};
}

Witnessed system_invariant_under(const CartesianSystem& s, const std::vector<Permutation>& gens) {
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      PermGroup c = conjugate(s.members[i], gens[g]);
      bool found = false;
      for (const auto& k : s.members)
        if (k.order() == s.members[i].order() && same_group(c, k)) {
          found = true;
          break;
        }
      if (!found)
        return Witnessed::fail("conjugate of a member is not a member", {{"generator", g}, {"member", i}});
    }
  return {};
}

namespace {

struct Enumerator {
  const PermGroup& g;
  std::size_t n;
  std::vector<Partition> systems;
  std::vector<std::size_t> chosen;
  std::set<CartesianDecomposition, bool (*)(const CartesianDecomposition&, const CartesianDecomposition&)>* out;

  bool invariant(const std::vector<Partition>& parts) const {
    std::set<Partition> have(parts.begin(), parts.end());
    for (const auto& x : g.generators())
      for (const auto& p : parts)
        if (!have.count(p.image(x))) return false;
    return true;
  }

  void dfs(std::size_t from, std::size_t prod, const Partition& meet) {
    if (prod == n) {
      if (chosen.size() < 2) return;
      std::vector<Partition> parts;
      for (auto c : chosen) parts.push_back(systems[c]);
      if (!meet.is_singletons() || !check_cartesian(parts).ok || !invariant(parts)) return;
      out->insert(CartesianDecomposition(std::move(parts)).canonical());
      return;
    }
    for (std::size_t c = from; c < systems.size(); ++c) {
      std::size_t b = systems[c].block_count();
      if ((n / prod) % b != 0) continue;
      Partition parts[2] = {meet, systems[c]};
      Partition next = infimum(parts);
      // In a Cartesian decomposition any subfamily of index j meets in
      // blocks that all have size n / (product of block counts).
      if (next.block_count() != prod * b || next.uniform_block_size() != n / (prod * b)) continue;
      chosen.push_back(c);
      dfs(c + 1, prod * b, next);
      chosen.pop_back();
    }
  }
};

bool decomposition_less(const CartesianDecomposition& a, const CartesianDecomposition& b) {
  return std::lexicographical_compare(a.partitions().begin(), a.partitions().end(), b.partitions().begin(),
                                      b.partitions().end());
}

}  // namespace

std::vector<CartesianDecomposition> enumerate_invariant_decompositions(const PermGroup& g, const PermGroup& m,
                                                                       const Limits& limits) {
  if (g.degree() != m.degree()) throw InputError("G and M have different degrees");
  if (m.degree() > limits.max_enumeration_degree && !limits.override_guard)
    throw LimitError("enumeration refused: degree " + std::to_string(m.degree()) + " exceeds the cap " +
                     std::to_string(limits.max_enumeration_degree));
  if (!is_transitive(m)) throw InputError("M is not transitive");
  std::set<CartesianDecomposition, bool (*)(const CartesianDecomposition&, const CartesianDecomposition&)> found(
      decomposition_less);
  Enumerator en{g, m.degree(), all_block_systems(m), {}, &found};
  en.dfs(0, 1, Partition::whole(m.degree()));
  return {found.begin(), found.end()};
}

}  // namespace cartdec
