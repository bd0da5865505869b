#include <gtest/gtest.h>

#include <algorithm>

#include "cartdec/atlas.hpp"
#include "cartdec/catalog.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/factor.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/primes.hpp"
#include "cartdec/search.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace cartdec;

namespace {

bool has_row(const FactorisationCertificate& c, const std::string& key) {
  return std::find(c.matched_rows.begin(), c.matched_rows.end(), key) != c.matched_rows.end();
}

PermGroup placed(const std::vector<const PermGroup*>& parts) {
  const std::size_t k = parts.size(), n = parts[0]->degree();
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& x : parts[i]->generators()) gens.push_back(gen::place(x, i, k));
  return PermGroup(n * k, gens);
}

}  // namespace

TEST(Primes, Factorisation) {
  EXPECT_EQ(factorize(1451520), (std::map<std::uint64_t, unsigned>{{2, 9}, {3, 4}, {5, 1}, {7, 1}}));
  EXPECT_EQ(prime_divisors(95040), (std::vector<std::uint64_t>{2, 3, 5, 11}));
  EXPECT_TRUE(is_prime(2305843009213693951ull));
  EXPECT_FALSE(is_prime(2305843009213693953ull));
  EXPECT_EQ(factorize(1000000007ull * 998244353ull).size(), 2u);
  EXPECT_TRUE(factorize(1).empty());
}

TEST(Factorisation, PlainExamples) {
  const AtlasEntry& a6 = atlas_load("A6");
  auto c = is_factorisation(a6.group, a6.subgroup("A5"), a6.subgroup("A5'"));
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.nontrivial);
  EXPECT_EQ(c.intersection_orders, (std::vector<std::uint64_t>{10}));

  const AtlasEntry& m12 = atlas_load("M12");
  auto d = is_factorisation(m12.group, m12.subgroup("M11"), m12.subgroup("M11'"));
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(d.intersection_orders, (std::vector<std::uint64_t>{660}));

  // Two point stabilizers of the natural action: 60 * 60 / 12 = 300.
  auto e = is_factorisation(a6.group, point_stabilizer(a6.group, 0), point_stabilizer(a6.group, 1));
  EXPECT_FALSE(e.holds);
  EXPECT_EQ(e.intersection_orders, (std::vector<std::uint64_t>{12}));
}

TEST(Factorisation, IntersectionOrdersAgreeWithEnumeration) {
  const AtlasEntry& a6 = atlas_load("A6");
  auto a = oracle::elements(a6.subgroup("A5"));
  std::uint64_t in_b = std::count_if(a.begin(), a.end(), [&](const Permutation& x) {
    return a6.subgroup("A5'").contains(x);
  });
  EXPECT_EQ(in_b, 10u);
}

TEST(FullFactorisation, Examples) {
  const AtlasEntry& a6 = atlas_load("A6");
  DirectFactorisation d = DirectFactorisation::of(a6.group);
  auto c = is_full_factorisation(d, a6.subgroup("A5"), a6.subgroup("A5'"));
  EXPECT_TRUE(c.holds) << c.reason;
  EXPECT_EQ(c.t_primes, (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_TRUE(has_row(c, "table1/row1"));
  EXPECT_TRUE(has_row(c, "table3/row1"));
  ASSERT_TRUE(c.derived_contained.has_value());
  EXPECT_TRUE(*c.derived_contained);

  const PermGroup &a = a6.subgroup("A5"), &b = a6.subgroup("A5'");
  PermGroup m = placed({&a6.group, &a6.group});
  DirectFactorisation d2 = DirectFactorisation::of(m);
  auto c2 = is_full_factorisation(d2, placed({&a, &a}), placed({&b, &b}));
  EXPECT_TRUE(c2.holds) << c2.reason;
  EXPECT_EQ(c2.k, 2u);

  std::vector<Point> pair{0, 1};
  PermGroup s4 = setwise_stabilizer(a6.group, pair);
  ASSERT_EQ(s4.order(), 24u);
  auto bad = is_full_factorisation(d, a6.subgroup("A5'"), s4);
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.reason.empty());
}

TEST(FullFactorisation, MathieuRowsAndTableMatches) {
  const AtlasEntry& m12 = atlas_load("M12");
  DirectFactorisation d = DirectFactorisation::of(m12.group);
  auto c = is_full_factorisation(d, m12.subgroup("M11"), m12.subgroup("PSL2(11)"));
  EXPECT_TRUE(c.holds) << c.reason;
  EXPECT_TRUE(has_row(c, "table1/row2"));
  EXPECT_FALSE(has_row(c, "table3/row2"));
  auto same = is_full_factorisation(d, m12.subgroup("M11"), m12.subgroup("M11'"));
  EXPECT_TRUE(has_row(same, "table3/row2"));
  EXPECT_TRUE(match_table(FactorisationCertificate{}).empty());
}

TEST(StrongMultiple, ArityAndFailures) {
  const AtlasEntry& a6 = atlas_load("A6");
  DirectFactorisation d = DirectFactorisation::of(a6.group);
  std::vector<PermGroup> pair{a6.subgroup("A5"), a6.subgroup("A5'")};
  auto c = is_strong_multiple_factorisation(d, pair);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.reason, "requires three parts");

  std::vector<PermGroup> three{a6.subgroup("A5"), a6.subgroup("A5'"), point_stabilizer(a6.group, 3)};
  EXPECT_FALSE(is_strong_multiple_factorisation(d, three).holds);
}

TEST(StrongMultiple, Sp62Triple) {
  const AtlasEntry& sp = atlas_load("Sp6(2)");
  EXPECT_EQ(sp.group.order(), 1451520u);
  DirectFactorisation d = DirectFactorisation::of(sp.group);
  std::vector<PermGroup> parts{sp.subgroup("G2(2)"), sp.subgroup("O6-(2)"), sp.subgroup("O6+(2)")};
  auto c = is_strong_multiple_factorisation(d, parts);
  EXPECT_TRUE(c.holds) << c.reason;
  EXPECT_TRUE(has_row(c, "table2/row3a"));
  EXPECT_EQ(c.part_orders, (std::vector<std::uint64_t>{12096, 51840, 40320}));

  std::vector<PermGroup> four = parts;
  four.push_back(derived_subgroup(sp.subgroup("G2(2)")));
  auto r = is_strong_multiple_factorisation(d, four);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.reason, "requires three parts");
}

TEST(FullStrip, ExampleData) {
  const AtlasEntry& a6 = atlas_load("A6");
  const PermGroup &a = a6.subgroup("A5"), &b = a6.subgroup("A5'");
  PermGroup m = placed({&a6.group, &a6.group});
  DirectFactorisation d = DirectFactorisation::of(m);
  std::vector<Permutation> tw(2, Permutation(6));
  std::vector<std::size_t> both{0, 1};
  PermGroup diag = gen::strip(a6.group.generators(), both, tw, 2);
  auto c = is_full_strip_factorisation(d, diag, placed({&a, &b}));
  EXPECT_TRUE(c.holds) << c.reason;
  EXPECT_EQ(c.strip_lengths, (std::vector<std::size_t>{2}));
  ASSERT_TRUE(c.strip_factorisation.has_value());
  EXPECT_TRUE(*c.strip_factorisation);
  EXPECT_TRUE(has_row(c, "table3/row1"));

  const AtlasEntry& a5 = atlas_load("A5");
  PermGroup m5 = placed({&a5.group, &a5.group});
  DirectFactorisation d5 = DirectFactorisation::of(m5);
  std::vector<Permutation> tw5(2, Permutation(5));
  PermGroup diag5 = gen::strip(a5.group.generators(), both, tw5, 2);
  PermGroup triv = PermGroup::trivial(5);
  auto bad = is_full_strip_factorisation(d5, diag5, placed({&a5.group, &triv}));
  EXPECT_FALSE(bad.holds);
}

TEST(TwoActions, TauSwapsTheSubgroupsAndTheMeetIsSelfNormalising) {
  for (const std::string name : {"A6-two-actions", "M12-two-actions"}) {
    const AtlasEntry& e = atlas_load(name);
    const PermGroup &a = e.subgroup("A"), &b = e.subgroup("B"), &ab = e.subgroup("AnB");
    EXPECT_TRUE(same_group(e.morphism("tau").map.image(a), b)) << name;
    EXPECT_TRUE(same_group(e.morphism("tau").map.image(b), a)) << name;
    EXPECT_TRUE(same_group(intersection(a, b), ab));
    EXPECT_EQ(normalizer(e.group, ab).order(), ab.order()) << name;
    EXPECT_EQ(centralizer(e.group, ab).order(), 1u) << name;
  }
}

TEST(DisjointStrips, ProductsNeverFactorise) {
  props::Result r = props::disjoint_strip_pairs(200, 46);
  EXPECT_EQ(r.cases, 200u);
  EXPECT_TRUE(r.ok()) << r.failure;
}

TEST(ElementOrders, A5Profile) {
  auto p = element_order_profile(atlas_load("A5").group);
  EXPECT_EQ(p, (std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 15}, {3, 20}, {5, 24}}));
  EXPECT_THROW(element_order_profile(atlas_load("M12").group, 1000), LimitError);
}

TEST(Catalog, Expressions) {
  EXPECT_EQ(evaluate_expression("2^3*5", {}), 40u);
  EXPECT_EQ(evaluate_expression("(q^2-1)/gcd(2, q-1)", {{"q", 5}}), 12u);
  EXPECT_EQ(evaluate_expression("prod(i, 1, 3, 4^i-1)", {}), 3u * 15u * 63u);
  EXPECT_THROW(evaluate_expression("7/2", {}), InputError);
  EXPECT_THROW(evaluate_expression("2^80", {}), InputError);
  EXPECT_THROW(evaluate_expression("q+1", {}), InputError);
  EXPECT_THROW(evaluate_expression("(1+2", {}), InputError);
}

TEST(Catalog, BuiltinRows) {
  const Catalog& cat = Catalog::builtin();
  EXPECT_FALSE(cat.sanity().has_value());
  const CatalogRow* sp4 = cat.find("table4/row4");
  ASSERT_NE(sp4, nullptr);
  EXPECT_TRUE(sp4->disputed);
  EXPECT_EQ(cat.find("table9/row1"), nullptr);
  // Order formulas at the atlas instances equal the computed orders.
  for (const auto& row : cat.rows()) {
    if (!row.atlas_instantiable) continue;
    EXPECT_EQ(evaluate_expression(row.t.order, row.instances.at(0)), atlas_load(row.t.name).group.order())
        << row.key();
  }
  // Symbolic rows evaluate at their parameters.
  const CatalogRow* po = cat.find("table1/row3");
  ASSERT_NE(po, nullptr);
  EXPECT_FALSE(po->atlas_instantiable);
  EXPECT_EQ(evaluate_expression(po->t.order, {{"q", 3}}), 4952179814400ull);
  EXPECT_TRUE(cat.match(4, 1, {1, 1}).empty());
}

TEST(Catalog, RejectsMalformedDocuments) {
  EXPECT_ANY_THROW(Catalog::from_json(nlohmann::json::object()));
  EXPECT_ANY_THROW(Catalog::from_json({{"schema_version", 1}, {"rows", {{{"table", 1}}}}}));
}
