#pragma once

// Property suites shared by the unit tests and the acceptance runner. Each
// returns the number of cases checked and the first failure, if any.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cartdec/atlas.hpp"
#include "cartdec/construct.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/factor.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/product.hpp"
#include "cartdec/search.hpp"
#include "cartdec/system.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace props {

using namespace cartdec;

struct Result {
  std::size_t cases = 0;
  std::string failure;  // empty when every case passed
  bool ok() const { return failure.empty(); }
};

struct Decomposed {
  std::string name;
  PermGroup g, m;
  Point omega = 0;
  CartesianDecomposition e;
};

// The decompositions built by the example families plus the product action
// grid and the index-1 decomposition of a primitive group.
inline std::vector<Decomposed> constructed_decompositions() {
  std::vector<Decomposed> out;
  for (const auto& [ex, t, k] : std::vector<std::tuple<std::string, std::string, std::size_t>>{
           {"fullex", "A6", 1}, {"fullex", "M12", 1}, {"fullex", "A6", 2}, {"m10", "A6", 1}, {"stex", "A6", 2}}) {
    Instance inst = build_example(ex, t, k);
    out.push_back({ex + "/" + t + "/" + std::to_string(k), inst.g, inst.m, inst.omega, inst.e});
  }
  {
    const PermGroup& g = atlas_load("S6wrS2-36").group;
    PermGroup m = plinths(g)[0].group;
    std::vector<std::vector<Point>> rows(6), cols(6);
    for (Point p = 0; p < 36; ++p) {
      rows[p / 6].push_back(p);
      cols[p % 6].push_back(p);
    }
    CartesianDecomposition grid({Partition::from_blocks(36, rows), Partition::from_blocks(36, cols)});
    out.push_back({"S6wrS2-36/grid", g, m, 0, grid});
  }
  {
    const PermGroup& t = atlas_load("A6").group;
    out.push_back({"A6/points", t, t, 0, CartesianDecomposition({Partition::singletons(6)})});
  }
  return out;
}

// Orbits of a group acting on indices 0..n-1 through the given generator maps.
inline std::vector<std::size_t> orbit_labels(std::size_t n, const std::vector<std::vector<std::size_t>>& maps) {
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& m : maps)
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t a = label[i], b = label[m[i]];
        if (a != b) {
          label[i] = label[m[i]] = std::min(a, b);
          changed = true;
        }
      }
  }
  return label;
}

// Decomposition -> system -> decomposition is the identity, the system
// satisfies both defining identities and the per-factor identity, and G_w
// permutes the partitions and the members the same way.
inline Result system_roundtrip(const std::vector<Decomposed>& cases) {
  Result r;
  for (const auto& c : cases) {
    ++r.cases;
    CartesianSystem s = system_from_decomposition(c.m, c.omega, c.e);
    CartesianDecomposition back = decomposition_from_system(s);
    if (!(back.canonical() == c.e.canonical())) return {r.cases, c.name + ": roundtrip changed E"};
    if (auto w = verify_cartesian_system(s); !w) return {r.cases, c.name + ": " + w.reason};
    DirectFactorisation d = DirectFactorisation::of(c.m);
    if (auto w = verify_simple_factor_identity(s, d); !w) return {r.cases, c.name + ": " + w.reason};

    PermGroup gw = point_stabilizer(c.g, c.omega);
    std::vector<std::vector<std::size_t>> on_e, on_s;
    const std::size_t l = c.e.index();
    for (const auto& x : gw.generators()) {
      std::vector<std::size_t> a(l), b(l);
      for (std::size_t i = 0; i < l; ++i) {
        auto j = c.e.find(c.e[i].image(x));
        if (!j) return {r.cases, c.name + ": G_w does not preserve E"};
        a[i] = *j;
        PermGroup img = conjugate(s.members[i], x);
        bool found = false;
        for (std::size_t t = 0; t < l && !found; ++t)
          if (same_group(img, s.members[t])) {
            b[i] = t;
            found = true;
          }
        if (!found) return {r.cases, c.name + ": G_w does not permute the members"};
      }
      on_e.push_back(a);
      on_s.push_back(b);
    }
    if (orbit_labels(l, on_e) != orbit_labels(l, on_s))
      return {r.cases, c.name + ": G_w orbits differ on E and on the system"};
  }
  return r;
}

// A5^k on 5k points with its factorisation, cached per k.
inline const DirectFactorisation& a5_power(std::size_t k) {
  static std::map<std::size_t, DirectFactorisation> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  const PermGroup& t = atlas_load("A5").group;
  std::vector<Permutation> gens;
  std::vector<PermGroup> factors;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Permutation> fi;
    for (const auto& x : t.generators()) fi.push_back(gen::place(x, i, k));
    gens.insert(gens.end(), fi.begin(), fi.end());
    factors.emplace_back(5 * k, fi);
  }
  PermGroup m(5 * k, gens);
  return cache.emplace(k, DirectFactorisation::from_factors(m, factors)).first->second;
}

inline std::vector<Permutation> twists(std::size_t k, gen::Rng& rng) {
  PermGroup s5 = gen::symmetric(5);
  std::vector<Permutation> tw;
  for (std::size_t i = 0; i < k; ++i) tw.push_back(s5.random_element(rng));
  return tw;
}

// Random subdirect subgroups of A5^k, k <= 4, as products of full strips
// with random supports and twists; Scott's decomposition must give back the
// supports and reassemble the group.
inline Result scott_roundtrip(std::size_t trials, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  const PermGroup& t = atlas_load("A5").group;
  for (std::size_t n = 0; n < trials; ++n) {
    ++r.cases;
    const std::size_t k = gen::uniform(rng, 1, 4);
    const DirectFactorisation& d = a5_power(k);
    auto supports = gen::set_partition(k, 1, rng);
    auto tw = twists(k, rng);
    std::vector<Permutation> hg;
    for (const auto& sup : supports) {
      PermGroup x = gen::strip(t.generators(), sup, tw, k);
      hg.insert(hg.end(), x.generators().begin(), x.generators().end());
    }
    PermGroup h(5 * k, hg);
    std::ostringstream id;
    id << "trial " << n << " (k=" << k << ", " << supports.size() << " strips)";
    if (!is_subdirect(d, h)) return {r.cases, id.str() + ": not subdirect"};
    auto strips = scott_decompose(d, h);
    std::vector<std::vector<std::size_t>> got;
    std::uint64_t prod = 1;
    std::vector<Permutation> joined;
    for (const auto& s : strips) {
      got.push_back(s.support);
      prod *= s.component.order();
      if (s.component.order() != 60) return {r.cases, id.str() + ": strip is not full"};
      for (const auto& x : s.component.generators()) {
        if (!h.contains(x)) return {r.cases, id.str() + ": strip generator outside H"};
        joined.push_back(x);
      }
    }
    std::sort(got.begin(), got.end());
    if (got != supports) return {r.cases, id.str() + ": supports differ"};
    if (prod != h.order()) return {r.cases, id.str() + ": orders do not multiply to |H|"};
    if (!same_group(PermGroup(5 * k, joined), h)) return {r.cases, id.str() + ": strips do not generate H"};
  }
  return r;
}

// Products of pairwise disjoint non-trivial strips on two sides never
// factorise A5^k.
inline Result disjoint_strip_pairs(std::size_t trials, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  const PermGroup& t = atlas_load("A5").group;
  auto side = [&](std::size_t k) {
    auto parts = gen::set_partition(k, 2, rng);
    std::vector<Permutation> g;
    const std::size_t take = gen::uniform(rng, 1, parts.size());
    std::shuffle(parts.begin(), parts.end(), rng);
    auto tw = twists(k, rng);
    for (std::size_t i = 0; i < take; ++i) {
      PermGroup x = gen::strip(gen::random_subgroup_gens(t, rng), parts[i], tw, k);
      g.insert(g.end(), x.generators().begin(), x.generators().end());
    }
    return PermGroup(5 * k, g);
  };
  for (std::size_t n = 0; n < trials; ++n) {
    ++r.cases;
    const std::size_t k = gen::uniform(rng, 2, 4);
    const DirectFactorisation& d = a5_power(k);
    PermGroup a = side(k), b = side(k);
    FactorisationCertificate c = is_factorisation(d.group(), a, b);
    if (c.holds)
      return {r.cases, "trial " + std::to_string(n) + ": |A|=" + std::to_string(a.order()) +
                           " |B|=" + std::to_string(b.order()) + " factorise M"};
  }
  return r;
}

// N_{T x T}(H) for a random diagonal-type strip H, against the closed form
// and against element enumeration.
inline Result strip_normalizers(const std::string& tn, std::size_t trials, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  const AtlasEntry& e = atlas_load(tn);
  const PermGroup& t = e.group;
  const std::size_t n = t.degree();
  PermGroup sym = gen::symmetric(n);
  std::vector<Permutation> tt_gens;
  for (const auto& x : t.generators()) {
    tt_gens.push_back(gen::place(x, 0, 2));
    tt_gens.push_back(gen::place(x, 1, 2));
  }
  PermGroup tt(2 * n, tt_gens);
  static std::map<std::string, std::vector<Permutation>> tt_elements;
  auto& all = tt_elements[tn];
  if (all.empty()) all = oracle::elements(tt);
  auto t_elements = oracle::elements(t);

  for (std::size_t c = 0; c < trials; ++c) {
    ++r.cases;
    auto h1 = gen::random_subgroup_gens(t, rng);
    // phi: conjugation by a random symmetric group element, composed with
    // the class-swapping automorphism every other time when there is one.
    Permutation pi = sym.random_element(rng);
    std::optional<GroupMorphism> outer;
    if (e.morphisms.count("outer") && c % 2) outer = e.morphism("outer").map;
    auto phi = [&](const Permutation& x) { return conjugate(outer ? (*outer)(x) : x, pi); };

    std::vector<Permutation> hg;
    for (const auto& x : h1) hg.push_back(gen::place(x, 0, 2) * gen::place(phi(x), 1, 2));
    PermGroup h(2 * n, hg);
    auto h_set = oracle::as_set(oracle::elements(h));
    const std::uint64_t brute = oracle::normalizer(all, hg, h_set).size();

    auto h1_set = oracle::as_set(oracle::elements(n, h1));
    std::vector<Permutation> ph1;
    for (const auto& x : h1) ph1.push_back(phi(x));
    const std::uint64_t formula =
        oracle::normalizer(t_elements, h1, h1_set).size() * oracle::centralizer(t_elements, ph1).size();
    const std::uint64_t lib = normalizer(tt, h).order();
    if (brute != formula || lib != brute)
      return {r.cases, tn + " trial " + std::to_string(c) + ": enumeration " + std::to_string(brute) +
                           ", closed form " + std::to_string(formula) + ", search " + std::to_string(lib)};
  }
  return r;
}

}  // namespace props
