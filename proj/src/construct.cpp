#include "cartdec/construct.hpp"

#include <random>

#include "cartdec/atlas.hpp"
#include "cartdec/blocks.hpp"
#include "cartdec/catalog.hpp"
#include "cartdec/coset.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/search.hpp"

namespace cartdec {
namespace {

using nlohmann::json;

void require_row(int table, const std::string& simple) {
  for (const auto& row : Catalog::builtin().rows())
    if (row.table == table && row.t.name == simple && row.atlas_instantiable && !row.disputed) return;
  throw InputError(simple + " has no atlas-instantiable row in catalog table " + std::to_string(table));
}

const AtlasEntry& two_actions(const std::string& simple) {
  for (const auto& n : atlas_names())
    if (n == simple + "-two-actions") return atlas_load(n);
  throw InputError("the atlas has no two-action representation of " + simple);
}

// x acting on block b of k blocks of n points.
Permutation place(const Permutation& x, std::size_t b, std::size_t n, std::size_t k) {
  return shifted(x, b * n, n * k);
}

// Block b goes to block to[b], its points moved by f[b] (identity if null).
Permutation block_map(std::size_t n, const std::vector<std::size_t>& to,
                      const std::vector<const Permutation*>& f) {
  const std::size_t k = to.size();
  std::vector<Point> img(n * k);
  for (std::size_t b = 0; b < k; ++b)
    for (Point x = 0; x < n; ++x) img[b * n + x] = static_cast<Point>(to[b] * n + (f[b] ? (*f[b])[x] : x));
  return Permutation::from_images(std::move(img));
}

Permutation factor_cycle(std::size_t n, std::size_t k) {
  std::vector<std::size_t> to(k);
  for (std::size_t b = 0; b < k; ++b) to[b] = (b + 1) % k;
  return block_map(n, to, std::vector<const Permutation*>(k, nullptr));
}

// T^k on k blocks, with `local[b]` replacing the factor on block b when set.
PermGroup product_group(const PermGroup& t, std::size_t k, const std::vector<const PermGroup*>& local = {}) {
  const std::size_t n = t.degree();
  std::vector<Permutation> gens;
  std::uint64_t order = 1;
  for (std::size_t b = 0; b < k; ++b) {
    const PermGroup& f = b < local.size() && local[b] ? *local[b] : t;
    for (const auto& x : f.generators()) gens.push_back(place(x, b, n, k));
    order = checked_mul(order, f.order());
  }
  PermGroup g(n * k, std::move(gens));
  g.set_known_order(order);
  return g;
}

struct Automorphism {
  std::string name;
  Permutation pi;  // normalizes M and every member's set
};

Instance realize(Instance inst, const PermGroup& m_base, const std::vector<PermGroup>& members,
                 const std::vector<Automorphism>& autos, const Limits& limits) {
  PermGroup h = members[0];
  for (std::size_t i = 1; i < members.size(); ++i) h = intersection(h, members[i], limits);
  const std::uint64_t index = m_base.order() / h.order();
  if (index > limits.max_coset_index && !limits.override_guard)
    throw LimitError(inst.example + " " + inst.simple + " k=" + std::to_string(inst.k) + " needs degree " +
                     std::to_string(index) + ", above the cap " + std::to_string(limits.max_coset_index));
  CosetSpace cs(m_base, h, limits);

  std::vector<Permutation> mg;
  for (const auto& x : m_base.generators()) mg.push_back(cs.image_of(x));
  inst.m = PermGroup(cs.index(), mg, "M");
  inst.m.set_known_order(m_base.order());
  inst.omega = 0;

  std::vector<Permutation> gg = mg;
  json adjoined = json::array();
  for (const auto& a : autos) {
    GroupMorphism phi = GroupMorphism::conjugation(m_base, a.pi);
    Permutation induced;
    try {
      induced = induced_coset_permutation(phi, cs);
    } catch (const InputError& e) {
      throw TheoremViolation("adjoined automorphism " + a.name + " does not normalize the point stabilizer",
                             {{"automorphism", a.name}});
    }
    gg.push_back(induced);
    adjoined.push_back(a.name);
  }
  // G is computed in the construction representation: it acts on the cosets
  // of Y = H<autos>, faithfully when the core of Y is trivial.
  std::vector<Permutation> base_gens = m_base.generators(), y_gens = h.generators();
  for (const auto& a : autos) {
    base_gens.push_back(a.pi);
    y_gens.push_back(a.pi);
  }
  PermGroup g_base(m_base.degree(), tidy_generators(std::move(base_gens)));
  PermGroup y(m_base.degree(), tidy_generators(std::move(y_gens)));
  if (intersection(m_base, y, limits).order() != h.order())
    throw TheoremViolation("adjoined automorphisms enlarge the point stabilizer in M", {{"y_order", y.order()}});
  if (!core(g_base, y, limits).is_trivial())
    throw TheoremViolation("constructed action is not faithful", json::object());
  inst.g = PermGroup(cs.index(), tidy_generators(std::move(gg)), "G");
  inst.g.set_known_order(g_base.order());

  std::vector<Partition> parts;
  json member_orders = json::array();
  for (const auto& k : members) {
    auto block = orbit(cs.image_of(k), inst.omega);
    parts.push_back(block_system_from_block(inst.m, block));
    member_orders.push_back(k.order());
  }
  inst.e = CartesianDecomposition(std::move(parts));

  auto props = decomposition_properties(inst.e, inst.g);
  if (!props.invariant)
    throw TheoremViolation("constructed decomposition is not invariant",
                           {{"generator", props.bad_generator}, {"partition", props.bad_partition}});

  // The plinth is recomputed, not assumed.
  auto mins = minimal_normal_subgroups(g_base, limits);
  bool unique = mins.size() == 1 && !mins[0].abelian && same_group(mins[0].group, m_base);
  if (!unique)
    throw TheoremViolation("M is not the unique minimal normal subgroup of the constructed group",
                           {{"minimal_normal_count", mins.size()}});

  inst.info = {{"degree", cs.index()},
               {"g_order", inst.g.order()},
               {"m_order", inst.m.order()},
               {"stabilizer_order", h.order()},
               {"member_orders", member_orders},
               {"adjoined", adjoined},
               {"unique_minimal_normal", true}};
  return inst;
}

}  // namespace

Instance build_full_fact_example(const std::string& simple, std::size_t k, const Limits& limits) {
  if (k == 0) throw InputError("k must be positive");
  require_row(4, simple);
  const AtlasEntry& e = two_actions(simple);
  const PermGroup& t = e.group;
  const PermGroup& a = e.subgroup("A");
  const PermGroup& b = e.subgroup("B");
  const std::size_t n = t.degree();

  PermGroup m = product_group(t, k);
  std::vector<PermGroup> members;
  for (const PermGroup* x : {&a, &b})
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<const PermGroup*> local(k, nullptr);
      local[i] = x;
      members.push_back(product_group(t, k, local));
    }
  std::vector<Automorphism> autos;
  if (k > 1) autos.push_back({"factor_cycle", factor_cycle(n, k)});
  if (auto it = e.morphisms.find("sigma"); it != e.morphisms.end() && it->second.realizer)
    autos.push_back({"sigma_on_factor_1", place(*it->second.realizer, 0, n, k)});

  Instance inst;
  inst.example = "fullex";
  inst.simple = simple;
  inst.k = k;
  return realize(std::move(inst), m, members, autos, limits);
}

Instance build_strip_example(const std::string& simple, std::size_t k, const Limits& limits) {
  if (k == 0 || k % 2 != 0) throw InputError("the strip example needs an even number of factors, got k=" +
                                             std::to_string(k));
  require_row(3, simple);
  const AtlasEntry& e = two_actions(simple);
  const PermGroup& t = e.group;
  const std::size_t n = t.degree();
  const Permutation& tau = *e.morphism("tau").realizer;

  PermGroup m = product_group(t, k);
  std::vector<Permutation> diag;
  for (std::size_t p = 0; p < k; p += 2)
    for (const auto& x : t.generators()) diag.push_back(place(x, p, n, k) * place(x, p + 1, n, k));
  PermGroup k1(n * k, diag, "K1");
  std::uint64_t k1_order = 1;
  for (std::size_t p = 0; p < k; p += 2) k1_order = checked_mul(k1_order, t.order());
  k1.set_known_order(k1_order);
  std::vector<const PermGroup*> local(k);
  for (std::size_t i = 0; i < k; ++i) local[i] = i % 2 ? &e.subgroup("B") : &e.subgroup("A");
  PermGroup k2 = product_group(t, k, local);

  std::vector<Automorphism> autos;
  {
    std::vector<std::size_t> to(k);
    std::vector<const Permutation*> f(k, nullptr);
    for (std::size_t b = 0; b < k; ++b) to[b] = b;
    to[0] = 1;
    to[1] = 0;
    f[0] = f[1] = &tau;
    autos.push_back({"tau_tau_swap", block_map(n, to, f)});
  }
  if (k > 2) {
    std::vector<std::size_t> to(k);
    for (std::size_t b = 0; b < k; ++b) to[b] = (b + 2) % k;
    autos.push_back({"pair_cycle", block_map(n, to, std::vector<const Permutation*>(k, nullptr))});
  }

  Instance inst;
  inst.example = "stex";
  inst.simple = simple;
  inst.k = k;
  return realize(std::move(inst), m, {k1, k2}, autos, limits);
}

Instance build_smf_example(const std::string& simple, std::size_t k, const Limits& limits) {
  if (k == 0) throw InputError("k must be positive");
  require_row(2, simple);
  const AtlasEntry& e = atlas_load(simple);
  if (e.subgroups.size() != 3)
    throw InputError("the atlas entry for " + simple + " does not designate three subgroups");
  const PermGroup& t = e.group;
  const std::size_t n = t.degree();
  PermGroup m = product_group(t, k);
  std::vector<PermGroup> members;
  for (const auto& [name, s] : e.subgroups) {
    std::vector<const PermGroup*> local(k, &s);
    members.push_back(product_group(t, k, local));
  }
  std::vector<Automorphism> autos;
  if (k > 1) autos.push_back({"factor_cycle", factor_cycle(n, k)});
  Instance inst;
  inst.example = "smf";
  inst.simple = simple;
  inst.k = k;
  return realize(std::move(inst), m, members, autos, limits);
}

Instance build_m10_example(const Limits& limits) {
  const AtlasEntry& e = two_actions("A6");
  Instance inst;
  inst.example = "m10";
  inst.simple = "A6";
  inst.k = 1;
  PermGroup m = e.group;
  return realize(std::move(inst), m, {e.subgroup("A"), e.subgroup("B")},
                 {{"tau_m10", *e.morphism("tau_m10").realizer}}, limits);
}

Instance build_example(const std::string& example, const std::string& simple, std::size_t k,
                       const Limits& limits) {
  if (example == "fullex") return build_full_fact_example(simple, k, limits);
  if (example == "stex") return build_strip_example(simple, k, limits);
  if (example == "smf") return build_smf_example(simple, k, limits);
  if (example == "m10") {
    if (simple != "A6" || k != 1) throw InputError("the m10 example is A6 with k=1");
    return build_m10_example(limits);
  }
  throw InputError("unknown example " + example + " (expected fullex, stex, smf or m10)");
}

bool SuiteResult::ok() const {
  for (const auto& i : items)
    if (!i.ok) return false;
  return true;
}

json SuiteResult::to_json() const {
  json items_j = json::array();
  for (const auto& i : items) items_j.push_back({{"name", i.name}, {"ok", i.ok}, {"detail", i.detail}});
  return {{"suite", suite}, {"ok", ok()}, {"items", items_j}};
}

namespace {

// N_{T x T}(H) for the strip H = {(h, phi(h))}, by search and by the closed
// form {(t, c phi(t)) : t in N_T(H1), c in C_T(phi(H1))}.
SuiteItem strip_normalizer_item(const std::string& name, const PermGroup& t, const GroupMorphism& phi,
                                const PermGroup& h1, const Limits& limits) {
  const std::size_t n = t.degree();
  PermGroup tt = product_group(t, 2);
  std::vector<Permutation> hg;
  for (const auto& x : h1.generators()) hg.push_back(place(x, 0, n, 2) * place(phi(x), 1, n, 2));
  PermGroup h(2 * n, hg);
  PermGroup brute = normalizer(tt, h, limits);

  PermGroup nt = normalizer(t, h1, limits);
  PermGroup ct = centralizer(t, phi.image(h1), limits);
  std::vector<Permutation> fg;
  for (const auto& x : nt.generators()) fg.push_back(place(x, 0, n, 2) * place(phi(x), 1, n, 2));
  for (const auto& c : ct.generators()) fg.push_back(place(c, 1, n, 2));
  PermGroup formula(2 * n, fg);
  const std::uint64_t expected = checked_mul(nt.order(), ct.order());
  bool ok = formula.order() == expected && same_group(formula, brute);
  return {name, ok,
          {{"h1_order", h1.order()}, {"normalizer_order", brute.order()}, {"formula_order", expected}}};
}

SuiteItem self_normalising_item(const std::string& name, const PermGroup& g, const PermGroup& h,
                                const Limits& limits, bool centralizer_trivial = false) {
  PermGroup nh = normalizer(g, h, limits);
  json detail = {{"subgroup_order", h.order()}, {"normalizer_order", nh.order()}};
  bool ok = nh.order() == h.order();
  if (centralizer_trivial) {
    std::uint64_t c = centralizer(g, h, limits).order();
    detail["centralizer_order"] = c;
    ok = ok && c == 1;
  }
  return {name, ok, detail};
}

}  // namespace

SuiteResult verify_normaliser_propositions(const Limits& limits) {
  SuiteResult r;
  r.suite = "normalisers";
  std::mt19937_64 rng(7);

  // Strip normalizers over A5 and A6, with the identity and (for A6) the
  // class-swapping automorphism.
  for (const std::string tn : {"A5", "A6"}) {
    const AtlasEntry& e = atlas_load(tn);
    const PermGroup& t = e.group;
    std::vector<std::pair<std::string, GroupMorphism>> maps;
    maps.emplace_back("identity", GroupMorphism::trusted(t, t, t.generators()));
    if (e.morphisms.count("outer")) maps.emplace_back("outer", e.morphism("outer").map);
    std::vector<std::pair<std::string, PermGroup>> h1s;
    h1s.emplace_back("point_stabilizer", point_stabilizer(t, 0));
    for (const auto& [sn, s] : e.subgroups) h1s.emplace_back(sn, s);
    for (std::uint64_t ord : {2, 3, 5}) {
      for (;;) {
        Permutation x = t.random_element(rng);
        if (x.order() % ord) continue;
        h1s.emplace_back("cyclic_" + std::to_string(ord),
                         PermGroup(t.degree(), {x.pow(static_cast<std::int64_t>(x.order() / ord))}));
        break;
      }
    }
    for (const auto& [mn, phi] : maps)
      for (const auto& [hn, h1] : h1s)
        r.items.push_back(strip_normalizer_item("strip_normalizer/" + tn + "/" + mn + "/" + hn, t, phi, h1, limits));
  }

  // Intersections of the factorisation subgroups are self-normalising with
  // trivial centralizer; the subgroups themselves and their products over two
  // factors are self-normalising.
  for (const std::string tn : {"A6", "M12"}) {
    const AtlasEntry& e = two_actions(tn);
    const PermGroup& t = e.group;
    const PermGroup& a = e.subgroup("A");
    const PermGroup& b = e.subgroup("B");
    const PermGroup& ab = e.subgroup("AnB");
    r.items.push_back(self_normalising_item("intersection/" + tn, t, ab, limits, true));
    r.items.push_back(self_normalising_item("part_A/" + tn, t, a, limits));
    r.items.push_back(self_normalising_item("part_B/" + tn, t, b, limits));
    if (tn != "A6") continue;
    PermGroup m = product_group(t, 2);
    for (const auto& [sn, x, y] : {std::tuple{"AxA", &a, &a}, std::tuple{"BxB", &b, &b},
                                   std::tuple{"AnBxAnB", &ab, &ab}, std::tuple{"AxB", &a, &b}})
      r.items.push_back(self_normalising_item(std::string("product/") + sn + "/" + tn, m,
                                              product_group(t, 2, {x, y}), limits));
    // K n D for D the diagonal and K = A x B.
    std::vector<Permutation> kd;
    for (const auto& g : ab.generators()) kd.push_back(place(g, 0, t.degree(), 2) * place(g, 1, t.degree(), 2));
    r.items.push_back(self_normalising_item("diagonal_meet/" + tn, m, PermGroup(2 * t.degree(), kd), limits));
  }

  // Normalizer of H with H1 x H2 <| H and abelian N(H1 x H2)/(H1 x H2).
  for (const std::string tn : {"A5", "A6"}) {
    const PermGroup& t = atlas_load(tn).group;
    const std::size_t n = t.degree();
    Permutation x;
    do x = t.random_element(rng);
    while (x.order() != 5);
    PermGroup h1(n, {x});
    PermGroup nh1 = normalizer(t, h1, limits);
    Permutation y;
    do y = nh1.random_element(rng);
    while (h1.contains(y));
    PermGroup g = product_group(t, 2);
    PermGroup base = product_group(t, 2, {&h1, &h1});
    PermGroup h(2 * n, {place(x, 0, n, 2), place(x, 1, n, 2), place(y, 0, n, 2) * place(y, 1, n, 2)});
    PermGroup nbase = normalizer(g, base, limits);
    PermGroup quotient_check = derived_subgroup(nbase);
    PermGroup proj(n, {x, y});
    bool hyp = is_normal(base, h) && is_subgroup(quotient_check, base) &&
               normalizer(t, proj, limits).order() == nh1.order();
    PermGroup nh = normalizer(g, h, limits);
    PermGroup formula = product_group(t, 2, {&nh1, &nh1});
    r.items.push_back({"product_normalizer/" + tn, hyp && same_group(nh, nbase) && same_group(nh, formula),
                       {{"hypotheses", hyp}, {"normalizer_order", nh.order()}, {"formula_order", formula.order()}}});
  }
  return r;
}

}  // namespace cartdec
