#include <gtest/gtest.h>

#include <random>

#include "cartdec/atlas.hpp"
#include "cartdec/blocks.hpp"
#include "cartdec/coset.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/kernels.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/search.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cartdec;

namespace {

Permutation cyc(std::size_t n, std::vector<Point> c) { return Permutation::from_cycles(n, {c}); }

// Random subgroup of S_n with at most `cap` elements, found by retrying.
PermGroup small_random_group(std::size_t n, std::size_t cap, gen::Rng& rng) {
  for (;;) {
    std::vector<Permutation> gens;
    const std::size_t count = gen::uniform(rng, 1, 2);
    for (std::size_t i = 0; i < count; ++i) gens.push_back(gen::permutation(n, rng));
    PermGroup g(n, gens);
    if (g.order() <= cap) return g;
  }
}

}  // namespace

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation::from_images({0, 0, 1}), InputError);
  EXPECT_THROW(Permutation::from_images({0, 3}), InputError);
  EXPECT_NO_THROW(Permutation::from_images({2, 0, 1}));
}

TEST(Permutation, ProductsReadLeftToRight) {
  Permutation a = cyc(3, {0, 1});
  Permutation b = cyc(3, {1, 2});
  Permutation ab = a * b;
  for (Point x = 0; x < 3; ++x) EXPECT_EQ(ab[x], b[a[x]]);
  EXPECT_EQ(conjugate(a, b), b.inverse() * a * b);
  EXPECT_EQ(cyc(5, {0, 1, 2, 3, 4}).order(), 5u);
  EXPECT_EQ((cyc(6, {0, 1}) * cyc(6, {2, 3, 4})).order(), 6u);
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_EQ(cyc(5, {0, 1, 2, 3, 4}).pow(-1), cyc(5, {0, 1, 2, 3, 4}).inverse());
}

TEST(Permutation, RandomAssociativity) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = gen::uniform(rng, 1, 40);
    Permutation a = gen::permutation(n, rng), b = gen::permutation(n, rng), c = gen::permutation(n, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_TRUE((a.inverse() * a).is_identity());
  }
}

TEST(Kernels, VariantsAgreeWithScalar) {
  const kernels::KernelSet& ref = kernels::scalar_kernels();
  const kernels::KernelSet* fast = kernels::avx2_kernels();
  if (!fast) GTEST_SKIP() << "no AVX2 variant on this machine";
  gen::Rng rng(5);
  for (std::size_t n : {1u, 7u, 8u, 9u, 31u, 64u, 1000u, 4099u}) {
    Permutation a = gen::permutation(n, rng), b = gen::permutation(n, rng);
    std::vector<Point> o1(n), o2(n);
    ref.compose(a.images().data(), b.images().data(), o1.data(), n);
    fast->compose(a.images().data(), b.images().data(), o2.data(), n);
    EXPECT_EQ(o1, o2);
    ref.invert(a.images().data(), o1.data(), n);
    fast->invert(a.images().data(), o2.data(), n);
    EXPECT_EQ(o1, o2);
    EXPECT_EQ(ref.equal(a.images().data(), b.images().data(), n),
              fast->equal(a.images().data(), b.images().data(), n));
    EXPECT_TRUE(fast->equal(a.images().data(), a.images().data(), n));
    EXPECT_EQ(ref.is_identity(a.images().data(), n), fast->is_identity(a.images().data(), n));
    std::vector<Point> id(n);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_TRUE(fast->is_identity(id.data(), n));
    std::vector<std::uint64_t> l1(n), l2(n);
    ref.combine_labels(a.images().data(), b.images().data(), static_cast<Point>(n), l1.data(), n);
    fast->combine_labels(a.images().data(), b.images().data(), static_cast<Point>(n), l2.data(), n);
    EXPECT_EQ(l1, l2);
  }
}

TEST(Orbit, Examples) {
  PermGroup c3(3, {cyc(3, {0, 1, 2})});
  EXPECT_EQ(orbit(c3, 0), (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(orbit(PermGroup::trivial(8), 5), (std::vector<Point>{5}));
  const PermGroup& a6 = atlas_load("A6").group;
  EXPECT_EQ(orbit(a6, 0), oracle::orbit(6, a6.generators(), 0));
  EXPECT_EQ(orbit(a6, 0).size(), 6u);
  EXPECT_THROW(orbit(c3, 3), InputError);
}

TEST(Chain, OrdersMatchEnumeration) {
  EXPECT_EQ(atlas_load("A6").group.order(), 360u);
  EXPECT_EQ(oracle::elements(atlas_load("A6").group).size(), 360u);
  EXPECT_EQ(atlas_load("M12").group.order(), 95040u);
  EXPECT_EQ(PermGroup::trivial(10).order(), 1u);
  EXPECT_EQ(gen::symmetric(7).order(), 5040u);
  EXPECT_EQ(gen::alternating(8).order(), 20160u);

  gen::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    PermGroup g = small_random_group(gen::uniform(rng, 3, 9), 10000, rng);
    auto all = oracle::elements(g);
    ASSERT_EQ(g.order(), all.size());
    auto set = oracle::as_set(all);
    for (int j = 0; j < 20; ++j) {
      Permutation x = gen::permutation(g.degree(), rng);
      EXPECT_EQ(g.contains(x), set.count(x) > 0);
      Permutation w = g.random_element(rng);
      EXPECT_TRUE(g.contains(w));
    }
  }
}

TEST(Chain, WrongClaimedOrderIsInputError) {
  PermGroup g = gen::symmetric(6);
  g.set_known_order(360);
  EXPECT_THROW(g.order(), InputError);
  PermGroup h = gen::symmetric(6);
  h.set_known_order(720);
  EXPECT_EQ(h.order(), 720u);
}

TEST(Chain, DegreeMismatchIsRejected) {
  PermGroup g = gen::symmetric(5);
  EXPECT_THROW(g.contains(Permutation(6)), InputError);
}

TEST(SubgroupAlgebra, AtlasExamples) {
  const AtlasEntry& a6 = atlas_load("A6");
  EXPECT_EQ(point_stabilizer(a6.group, 0).order(), 60u);
  PermGroup meet = intersection(a6.subgroup("A5"), a6.subgroup("A5'"));
  EXPECT_EQ(meet.order(), 10u);
  EXPECT_EQ(normalizer(a6.group, meet).order(), 10u);
  EXPECT_EQ(centralizer(a6.group, meet).order(), 1u);
  EXPECT_TRUE(same_group(centralizer(a6.group, PermGroup::trivial(6)), a6.group));
}

TEST(SubgroupAlgebra, AgreesWithEnumeration) {
  gen::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = gen::uniform(rng, 4, 8);
    PermGroup g = small_random_group(n, 5000, rng);
    auto ge = oracle::elements(g);
    PermGroup h(n, gen::random_subgroup_gens(g, rng));
    PermGroup other = small_random_group(n, 5000, rng);
    auto he = oracle::elements(h);
    auto hs = oracle::as_set(he);
    auto os = oracle::as_set(oracle::elements(other));

    EXPECT_EQ(intersection(g, other).order(), oracle::intersection_order(ge, os));
    PermGroup nh = normalizer(g, h);
    auto nb = oracle::normalizer(ge, h.generators(), hs);
    EXPECT_EQ(nh.order(), nb.size());
    for (const auto& x : nb) EXPECT_TRUE(nh.contains(x));
    PermGroup ch = centralizer(g, h);
    EXPECT_EQ(ch.order(), oracle::centralizer(ge, h.generators()).size());
    EXPECT_TRUE(is_subgroup(h, nh));
    EXPECT_TRUE(is_subgroup(ch, nh));
    EXPECT_EQ(g.order() % h.order(), 0u);
    Point p = static_cast<Point>(gen::uniform(rng, 0, n - 1));
    EXPECT_EQ(point_stabilizer(g, p).order(), oracle::point_stabilizer(ge, p).size());
  }
}

TEST(SubgroupAlgebra, SetwiseStabilizer) {
  PermGroup s6 = gen::symmetric(6);
  std::vector<Point> set{0, 1};
  EXPECT_EQ(setwise_stabilizer(s6, set).order(), 48u);
  const PermGroup& m12 = atlas_load("M12").group;
  std::vector<Point> one{3};
  EXPECT_EQ(setwise_stabilizer(m12, one).order(), 7920u);
}

TEST(SubgroupAlgebra, GuardRefusesLargeSearches) {
  const PermGroup& m12 = atlas_load("M12").group;
  Limits tight;
  tight.max_search_order = 1000;
  EXPECT_THROW(normalizer(m12, point_stabilizer(m12, 0), tight), LimitError);
  tight.override_guard = true;
  EXPECT_EQ(normalizer(m12, point_stabilizer(m12, 0), tight).order(), 7920u);
  Limits narrow;
  narrow.max_search_degree = 5;
  EXPECT_THROW(centralizer(m12, m12, narrow), LimitError);
}

TEST(SubgroupAlgebra, ConjugacyOfTheTwoA5Classes) {
  const AtlasEntry& a6 = atlas_load("A6");
  auto r = conjugacy(a6.group, a6.subgroup("A5"), a6.subgroup("A5'"));
  EXPECT_EQ(r.status, ConjugacyResult::Status::not_conjugate);
  PermGroup s6 = gen::symmetric(6);
  auto same = conjugacy(s6, point_stabilizer(s6, 0), point_stabilizer(s6, 4));
  ASSERT_EQ(same.status, ConjugacyResult::Status::conjugate);
  EXPECT_TRUE(same_group(conjugate(point_stabilizer(s6, 0), *same.element), point_stabilizer(s6, 4)));
}

TEST(BlockSystems, Examples) {
  // The product action of S6 wr S2 is primitive (suborbits 1, 10, 25); the
  // two grid directions are the minimal systems of its plinth.
  const PermGroup& wr = atlas_load("S6wrS2-36").group;
  EXPECT_TRUE(block_systems(wr).empty());
  auto grid = block_systems(plinths(wr)[0].group);
  EXPECT_EQ(grid.size(), 2u);
  for (const auto& p : grid) EXPECT_EQ(p.block_count(), 6u);

  auto c4 = block_systems(gen::cyclic(4));
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_EQ(c4[0], Partition::from_blocks(4, {{0, 2}, {1, 3}}));

  EXPECT_TRUE(block_systems(atlas_load("A6").group).empty());
  PermGroup intransitive(6, {cyc(6, {0, 1, 2})});
  EXPECT_THROW(block_systems(intransitive), InputError);
}

TEST(BlockSystems, AllSystemsMatchEnumeration) {
  std::vector<PermGroup> groups = {gen::cyclic(12), gen::cyclic(16), plinths(atlas_load("S6wrS2-36").group)[0].group};
  // Dihedral group of order 24.
  std::vector<Point> refl(12);
  for (Point i = 0; i < 12; ++i) refl[i] = (12 - i) % 12;
  groups.emplace_back(12, std::vector<Permutation>{gen::cyclic(12).generators()[0], Permutation::from_images(refl)});
  for (const auto& g : groups) {
    auto lib = all_block_systems(g);
    auto brute = oracle::block_systems(g.degree(), oracle::elements(g));
    EXPECT_EQ(lib, brute) << "degree " << g.degree();
  }
}

TEST(MinimalNormal, Examples) {
  const PermGroup& a6 = atlas_load("A6").group;
  auto mins = minimal_normal_subgroups(a6);
  ASSERT_EQ(mins.size(), 1u);
  EXPECT_TRUE(same_group(mins[0].group, a6));
  EXPECT_EQ(plinths(a6).size(), 1u);

  auto p = plinths(atlas_load("S6wrS2-36").group);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].group.order(), 129600u);
  EXPECT_EQ(p[0].factors.size(), 2u);

  // A5 on five points plus a fixed point.
  PermGroup a5_fixed(6, {cyc(6, {0, 1, 2}), cyc(6, {0, 1, 2, 3, 4})});
  EXPECT_TRUE(plinths(a5_fixed).empty());
  EXPECT_FALSE(minimal_normal_subgroups(a5_fixed).empty());
}

TEST(CosetAction, Examples) {
  const AtlasEntry& two = atlas_load("A6-two-actions");
  const PermGroup& t = two.group;
  CosetSpace cs(t, two.subgroup("AnB"));
  EXPECT_EQ(cs.index(), 36u);
  EXPECT_TRUE(is_transitive(cs.image()));
  EXPECT_EQ(cs.image().order(), 360u);
  EXPECT_TRUE(same_group(point_stabilizer(cs.image(), 0), cs.image_of(two.subgroup("AnB"))));

  EXPECT_EQ(CosetSpace(t, t).index(), 1u);

  // Kernel is the core: S4 on the cosets of the Klein four-group.
  PermGroup s4 = gen::symmetric(4);
  PermGroup v4(4, {cyc(4, {0, 1}) * cyc(4, {2, 3}), cyc(4, {0, 2}) * cyc(4, {1, 3})});
  CosetSpace q(s4, v4);
  EXPECT_EQ(q.index(), 6u);
  EXPECT_EQ(q.image().order(), 6u);

  Limits small;
  small.max_coset_index = 10;
  EXPECT_THROW(CosetSpace(t, two.subgroup("AnB"), small), LimitError);
}

TEST(CosetAction, ProductOfTwoCopies) {
  const AtlasEntry& two = atlas_load("A6-two-actions");
  const std::size_t n = two.group.degree();
  std::vector<Permutation> mg, hg;
  for (const auto& x : two.group.generators()) {
    mg.push_back(gen::place(x, 0, 2));
    mg.push_back(gen::place(x, 1, 2));
  }
  for (const auto& x : two.subgroup("AnB").generators()) {
    hg.push_back(gen::place(x, 0, 2));
    hg.push_back(gen::place(x, 1, 2));
  }
  CosetSpace cs(PermGroup(2 * n, mg), PermGroup(2 * n, hg));
  EXPECT_EQ(cs.index(), 1296u);
}

TEST(Morphism, ValidationAndInducedPermutations) {
  const AtlasEntry& a6 = atlas_load("A6");
  auto id = GroupMorphism::from_images(a6.group, a6.group, a6.group.generators());
  EXPECT_TRUE(id.injective());
  Permutation x = a6.group.generators()[0] * a6.group.generators()[1];
  EXPECT_EQ(id(x), x);

  const GroupMorphism& outer = a6.morphism("outer").map;
  EXPECT_TRUE(outer.injective());
  // Not inner: it moves the class of A5 to the other class.
  EXPECT_EQ(conjugacy(a6.group, outer.image(a6.subgroup("A5")), a6.subgroup("A5'")).status,
            ConjugacyResult::Status::conjugate);

  std::vector<Permutation> bad = {a6.group.generators()[0], a6.group.generators()[0]};
  EXPECT_THROW(GroupMorphism::from_images(a6.group, a6.group, bad), InvalidMorphism);

  const AtlasEntry& two = atlas_load("A6-two-actions");
  CosetSpace cs(two.group, two.subgroup("AnB"));
  const AtlasMorphism& tau = two.morphism("tau");
  ASSERT_TRUE(tau.realizer.has_value());
  Permutation ind = induced_coset_permutation(tau.map, cs);
  for (const auto& g : cs.image().generators()) EXPECT_TRUE(cs.image().contains(conjugate(g, ind)));

  CosetSpace by_a(two.group, two.subgroup("A"));
  EXPECT_THROW(induced_coset_permutation(tau.map, by_a), InputError);
}

TEST(CentralizerInSym, Examples) {
  EXPECT_EQ(centralizer_in_sym(gen::cyclic(4), 0).order(), 4u);
  EXPECT_EQ(centralizer_in_sym(atlas_load("A6").group, 0).order(), 1u);
  const AtlasEntry& two = atlas_load("A6-two-actions");
  CosetSpace cs(two.group, two.subgroup("AnB"));
  EXPECT_EQ(centralizer_in_sym(cs.image(), 0).order(), 1u);
  PermGroup intransitive(6, {cyc(6, {0, 1, 2})});
  EXPECT_THROW(centralizer_in_sym(intransitive, 0), InputError);
}

TEST(CentralizerInSym, OrderIdentityAgainstEnumeration) {
  // Regular and imprimitive transitive groups; the centralizer in S_n is
  // checked against all of S_n where that is small enough.
  gen::Rng rng(41);
  std::vector<PermGroup> groups = {gen::cyclic(6), gen::cyclic(8), gen::alternating(5)};
  PermGroup v4(4, {cyc(4, {0, 1}) * cyc(4, {2, 3}), cyc(4, {0, 2}) * cyc(4, {1, 3})});
  groups.push_back(v4);
  std::vector<Point> refl(6);
  for (Point i = 0; i < 6; ++i) refl[i] = (6 - i) % 6;
  groups.emplace_back(6, std::vector<Permutation>{gen::cyclic(6).generators()[0], Permutation::from_images(refl)});
  for (const auto& m : groups) {
    const std::size_t n = m.degree();
    PermGroup c = centralizer_in_sym(m, 0);
    PermGroup mw = point_stabilizer(m, 0);
    EXPECT_EQ(c.order() * mw.order(), normalizer(m, mw).order());
    auto sym = oracle::elements(gen::symmetric(n));
    EXPECT_EQ(c.order(), oracle::centralizer(sym, m.generators()).size()) << "degree " << n;
    for (const auto& x : c.generators())
      for (const auto& y : m.generators()) EXPECT_EQ(x * y, y * x);
  }
}
