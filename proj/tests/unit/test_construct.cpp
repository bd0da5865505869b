#include <gtest/gtest.h>

#include "cartdec/atlas.hpp"
#include "cartdec/construct.hpp"
#include "cartdec/embedded.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/io.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/suites.hpp"
#include "oracles.hpp"

using namespace cartdec;
using nlohmann::json;

namespace {

json atlas_doc(const std::string& file) {
  return io::parse_strict(embedded::file("atlas/" + file), file);
}

}  // namespace

TEST(Atlas, OrdersOfTheShippedGroups) {
  const std::map<std::string, std::uint64_t> want = {
      {"A5", 60},          {"A6", 360},          {"M11", 7920},     {"M12", 95040},
      {"PSL2(11)", 660},   {"Sp6(2)", 1451520}, {"S6wrS2-36", 1036800}, {"A6-two-actions", 360},
      {"M12-two-actions", 95040}};
  for (const auto& [name, order] : want) EXPECT_EQ(atlas_load(name).group.order(), order) << name;
  EXPECT_EQ(atlas_names().size(), want.size());

  const AtlasEntry& sp = atlas_load("Sp6(2)");
  EXPECT_EQ(sp.group.degree(), 63u);
  EXPECT_EQ(sp.subgroup("G2(2)").order(), 12096u);
  EXPECT_EQ(sp.subgroup("O6-(2)").order(), 51840u);
  EXPECT_EQ(sp.subgroup("O6+(2)").order(), 40320u);
  EXPECT_TRUE(certify_simple(sp.group).simple);
}

TEST(Atlas, TwoActionEntries) {
  const AtlasEntry& m = atlas_load("M12-two-actions");
  EXPECT_EQ(m.group.degree(), 24u);
  EXPECT_EQ(orbits(m.group).size(), 2u);
  for (const auto& o : orbits(m.group)) EXPECT_EQ(o.size(), 12u);
  EXPECT_EQ(m.subgroup("AnB").order(), 660u);

  const AtlasEntry& a = atlas_load("A6-two-actions");
  EXPECT_EQ(orbits(a.group).size(), 2u);
  EXPECT_EQ(a.subgroup("AnB").order(), 10u);
}

TEST(Atlas, DesignatedSubgroupsAndUnknownNames) {
  const AtlasEntry& a5 = atlas_load("A6:A5'");
  EXPECT_EQ(a5.group.order(), 60u);
  EXPECT_TRUE(a5.subgroups.empty());
  EXPECT_THROW(atlas_load("A7"), InputError);
  EXPECT_THROW(atlas_load("A6:A4"), InputError);
  EXPECT_THROW(atlas_load("A6").subgroup("A4"), InputError);
  EXPECT_THROW(atlas_load("A6").morphism("inner"), InputError);
}

TEST(Atlas, CorruptDocumentsAreRejected) {
  json good = atlas_doc("A6.json");
  EXPECT_NO_THROW(atlas_from_json(good));

  json wrong_order = good;
  wrong_order["order"] = 720;
  EXPECT_THROW(atlas_from_json(wrong_order), DataCorruption);

  json no_name = good;
  no_name.erase("name");
  EXPECT_THROW(atlas_from_json(no_name), DataCorruption);

  json bad_perm = good;
  bad_perm["generators"][0][0] = bad_perm["generators"][0][1];
  EXPECT_THROW(atlas_from_json(bad_perm), DataCorruption);

  // A subgroup that is not inside the group: a transposition.
  json outside = good;
  outside["subgroups"]["A5"]["generators"] = json::array({json::array({1, 0, 2, 3, 4, 5})});
  outside["subgroups"]["A5"].erase("order");
  EXPECT_THROW(atlas_from_json(outside), DataCorruption);

  // Swapping two generator images breaks the homomorphism.
  json not_hom = good;
  auto& imgs = not_hom["morphisms"]["outer"]["generator_images"];
  ASSERT_GE(imgs.size(), 2u);
  std::swap(imgs[0], imgs[1]);
  if (imgs[0] != imgs[1]) EXPECT_THROW(atlas_from_json(not_hom), DataCorruption);

  json two = atlas_doc("A6-two-actions.json");
  two["subgroups"]["AnB"]["generators"] = two["subgroups"]["A"]["generators"];
  two["subgroups"]["AnB"]["order"] = 60;
  EXPECT_THROW(atlas_from_json(two), DataCorruption);
}

TEST(Examples, BuiltInstances) {
  Instance f = build_full_fact_example("A6", 1);
  EXPECT_EQ(f.m.order(), 360u);
  EXPECT_EQ(f.g.order(), 720u);
  EXPECT_EQ(f.g.degree(), 36u);
  EXPECT_TRUE(is_normal(f.m, f.g));
  // The point stabilizer in M is A5 n A5' of order 10 by enumeration.
  EXPECT_EQ(oracle::point_stabilizer(oracle::elements(f.m), f.omega).size(), 10u);

  Instance m12 = build_full_fact_example("M12", 1);
  EXPECT_EQ(m12.g.degree(), 144u);
  EXPECT_EQ(point_stabilizer(m12.m, m12.omega).order(), 660u);

  Instance m10 = build_m10_example();
  EXPECT_EQ(m10.g.order(), 720u);
  EXPECT_EQ(m10.e.index(), 2u);
  // The adjoined outer automorphism is not an element of S6 or PGL2(9): the
  // element orders of G \ M are 4 and 8 only.
  for (const auto& x : oracle::elements(m10.g))
    if (!m10.m.contains(x)) EXPECT_TRUE(x.order() == 4 || x.order() == 8) << x.order();
}

TEST(Examples, InvalidRequests) {
  EXPECT_THROW(build_example("fullex", "A6", 0), InputError);
  EXPECT_THROW(build_example("stex", "A6", 3), InputError);
  EXPECT_THROW(build_example("stex", "A5", 2), InputError);
  EXPECT_THROW(build_example("smf", "A6", 1), InputError);
  EXPECT_THROW(build_example("m10", "M12", 1), InputError);
  EXPECT_THROW(build_example("grid", "A6", 1), InputError);
  EXPECT_THROW(build_example("fullex", "A7", 1), InputError);
  Limits tight;
  tight.max_coset_index = 100;
  EXPECT_THROW(build_example("fullex", "A6", 2, tight), LimitError);
}

TEST(Suites, NormalisersTablesAndExamples) {
  SuiteResult n = verify_normaliser_propositions();
  EXPECT_TRUE(n.ok()) << n.to_json().dump(1);
  EXPECT_FALSE(n.items.empty());

  SuiteResult t = verify_tables(false);
  EXPECT_TRUE(t.ok()) << t.to_json().dump(1);
  std::size_t skipped = 0;
  for (const auto& item : t.items) skipped += item.detail.contains("skipped");
  EXPECT_EQ(skipped, 4u);

  SuiteResult e = verify_examples(false);
  EXPECT_TRUE(e.ok()) << e.to_json().dump(1);
  EXPECT_EQ(e.items.size(), 6u);

  EXPECT_THROW(run_suites("everything", false), InputError);
  EXPECT_EQ(run_suites("normalisers", false).size(), 1u);
}
