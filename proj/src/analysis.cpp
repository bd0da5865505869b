#include "cartdec/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cartdec/catalog.hpp"
#include "cartdec/coset.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/product.hpp"
#include "cartdec/search.hpp"

namespace cartdec {

using nlohmann::json;

// G and M acting on the disjoint union of the blocks of the partitions of E.
// A point of Omega is determined by its blocks, so both actions are faithful.
struct BlockModel {
  std::vector<std::size_t> offsets;  // partition j owns [offsets[j], offsets[j+1])
  PermGroup g, m;
  std::vector<Point> tuple;  // block of omega in each partition
  PermGroup g_omega, m_omega;
  std::vector<PermGroup> l;  // stabilizers of the tuple points in M
  std::vector<PermGroup> k;  // K_i
  DirectFactorisation d;
};

namespace {

Permutation block_image(const CartesianDecomposition& e, const std::vector<std::size_t>& offsets,
                        const std::vector<std::vector<Point>>& reps, const Permutation& x) {
  std::vector<Point> img(offsets.back());
  for (std::size_t j = 0; j < e.index(); ++j) {
    auto target = e.find(e[j].image(x));
    if (!target) throw InputError("element does not preserve the decomposition");
    for (std::size_t b = 0; b < reps[j].size(); ++b)
      img[offsets[j] + b] = static_cast<Point>(offsets[*target] + e[*target].block_of(x[reps[j][b]]));
  }
  return Permutation::from_images(std::move(img));
}

// Checks the hypotheses shared by all entry points and builds the model.
std::shared_ptr<BlockModel> build_model(const PermGroup& g, const PermGroup& m, Point omega,
                                        const CartesianDecomposition& e, const DecompositionProperties& props,
                                        const Limits& limits) {
  if (g.degree() != m.degree()) throw InputError("G and M have different degrees");
  if (e.degree() != g.degree()) throw InputError("decomposition and group have different degrees");
  if (omega >= g.degree()) throw InputError("base point out of range");
  if (!props.invariant)
    throw InputError("decomposition is not G-invariant: generator " + std::to_string(props.bad_generator) +
                     " maps partition " + std::to_string(props.bad_partition) + " outside E");
  if (orbit(m, omega).size() != m.degree()) throw InputError("M is not transitive");

  // Everything below runs in the block action; no chain is built on Omega.
  auto bm = std::make_shared<BlockModel>();
  std::vector<std::vector<Point>> reps(e.index());
  bm->offsets.push_back(0);
  for (std::size_t j = 0; j < e.index(); ++j) {
    for (const auto& b : e[j].blocks()) reps[j].push_back(b[0]);
    bm->offsets.push_back(bm->offsets.back() + reps[j].size());
    bm->tuple.push_back(static_cast<Point>(bm->offsets[j] + e[j].block_of(omega)));
  }
  const std::size_t nb = bm->offsets.back();
  std::vector<Permutation> gg, mg;
  for (const auto& x : g.generators()) gg.push_back(block_image(e, bm->offsets, reps, x));
  for (std::size_t i = 0; i < m.generators().size(); ++i) {
    try {
      mg.push_back(block_image(e, bm->offsets, reps, m.generators()[i]));
    } catch (const InputError&) {
      throw InputError("generator " + std::to_string(i) + " of M does not preserve the decomposition");
    }
  }
  bm->g = PermGroup(nb, tidy_generators(std::move(gg)), "G");
  if (auto o = g.known_order()) bm->g.set_known_order(*o);
  for (std::size_t i = 0; i < mg.size(); ++i)
    if (!bm->g.contains(mg[i])) throw InputError("generator " + std::to_string(i) + " of M is not in G");
  bm->m = PermGroup(nb, tidy_generators(std::move(mg)), "M");
  if (auto o = m.known_order()) bm->m.set_known_order(*o);
  for (std::size_t i = 0; i < bm->g.generators().size(); ++i)
    for (const auto& y : bm->m.generators())
      if (!bm->m.contains(conjugate(y, bm->g.generators()[i])))
        throw InputError("M is not normalized by G");
  if (is_abelian(bm->m)) throw UnsupportedInput("the plinth must be non-abelian");
  const std::size_t n = g.degree();

  bm->g_omega = setwise_stabilizer(bm->g, bm->tuple, limits);
  bm->m_omega = pointwise_stabilizer(bm->m, bm->tuple);
  if (bm->g_omega.order() * n != bm->g.order() || bm->m_omega.order() * n != bm->m.order())
    throw TheoremViolation("point stabilizers in the block action have the wrong order",
                           {{"g_omega", bm->g_omega.order()}, {"m_omega", bm->m_omega.order()}});
  for (Point t : bm->tuple) bm->l.push_back(point_stabilizer(bm->m, t));

  bm->d = DirectFactorisation::of(bm->m);
  // M is minimal normal when G permutes its simple factors transitively.
  std::vector<bool> reached(bm->d.k(), false);
  std::vector<std::size_t> queue{0};
  reached[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& x : bm->g.generators()) {
      PermGroup c = conjugate(bm->d.factor(queue[q]), x);
      for (std::size_t f = 0; f < bm->d.k(); ++f)
        if (!reached[f] && is_subgroup(c, bm->d.factor(f))) {
          reached[f] = true;
          queue.push_back(f);
        }
    }
  if (queue.size() != bm->d.k()) throw InputError("M is not a minimal normal subgroup of G");
  return bm;
}

std::vector<PermGroup> distinct_proper_projections(const DirectFactorisation& d, std::size_t factor,
                                                   const std::vector<PermGroup>& members) {
  std::vector<PermGroup> out;
  for (const auto& kj : members) {
    PermGroup p = d.projection_in_m(factor, kj);
    if (p.order() == d.factor_order()) continue;
    bool seen = false;
    for (const auto& q : out)
      if (q.order() == p.order() && same_group(p, q)) seen = true;
    if (!seen) out.push_back(std::move(p));
  }
  return out;
}

LabelReport classify(const BlockModel& bm, const std::vector<PermGroup>& members, const PermGroup& acting,
                     const Limits& limits) {
  const DirectFactorisation& d = bm.d;
  LabelReport r;
  r.degenerate = members.size() == 1;
  r.acting_order = acting.order();
  for (const auto& kj : members) r.member_orders.push_back(kj.order());
  r.all_subdirect = std::all_of(members.begin(), members.end(),
                                [&](const PermGroup& kj) { return is_subdirect(d, kj); });
  for (const auto& kj : members)
    for (const auto& s : strips_involved(d, kj)) r.strip_lengths.push_back(s.length());

  auto f0 = distinct_proper_projections(d, 0, members);
  for (const auto& f : f0) r.f_orders.push_back(f.order());

  if (d.k() >= 2) {
    auto f1 = distinct_proper_projections(d, 1, members);
    json cc = {{"factor", 1}, {"size", f1.size()}, {"sizes_equal", f1.size() == f0.size()}};
    std::string status = f1.empty() && f0.empty() ? "conjugate" : "not_conjugate";
    if (!f1.empty() && f1.size() == f0.size()) {
      for (const auto& f : f0) {
        auto res = conjugacy(acting, f1[0], f, limits);
        if (res.status == ConjugacyResult::Status::conjugate) {
          status = "conjugate";
          break;
        }
        if (res.status == ConjugacyResult::Status::undecided) status = "undecided";
      }
    }
    cc["status"] = status;
    r.cross_check = cc;
    if (f1.size() != f0.size() || status == "not_conjugate")
      throw TheoremViolation("F differs between the first two factors", cc);
  }

  if (r.all_subdirect) {
    r.label = ClassLabel::CD_S;
  } else if (f0.empty()) {
    throw TheoremViolation("no proper projection at the first factor although a member is not subdirect",
                           {{"member_orders", r.member_orders}});
  } else if (f0.size() == 1) {
    r.label = r.strip_lengths.empty() ? ClassLabel::CD_1 : ClassLabel::CD_1S;
  } else if (f0.size() == 2) {
    auto res = conjugacy(acting, f0[0], f0[1], limits);
    r.conjugacy_evidence = res.evidence;
    switch (res.status) {
      case ConjugacyResult::Status::conjugate:
        r.label = ClassLabel::CD_2sim;
        if (res.element) r.conjugacy_evidence += "; element " + res.element->cycle_string();
        break;
      case ConjugacyResult::Status::not_conjugate:
        r.label = ClassLabel::CD_2nsim;
        break;
      case ConjugacyResult::Status::undecided:
        r.label = ClassLabel::UNDECIDED;
        r.undecided_reason = "conjugacy search guard: " + res.evidence;
        break;
    }
  } else if (f0.size() == 3) {
    r.label = ClassLabel::CD_3;
  } else {
    throw TheoremViolation("more than three distinct proper projections", {{"f_orders", r.f_orders}});
  }
  return r;
}

std::size_t integer_log(std::size_t value, std::size_t base) {
  if (base < 2) return 0;
  std::size_t e = 0, acc = 1;
  while (acc < value) {
    acc *= base;
    ++e;
  }
  return acc == value ? e : 0;
}

void check(AnalysisReport& r, const std::string& name, bool ok, const json& witness = json::object()) {
  r.checks[name] = ok;
  if (!ok) throw TheoremViolation("quotient check failed: " + name, witness);
}

PermGroup generated_by(const PermGroup& a, const PermGroup& b) {
  std::vector<Permutation> gs = a.generators();
  gs.insert(gs.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), tidy_generators(std::move(gs)));
}

}  // namespace

PermGroup find_plinth(const PermGroup& g, const CartesianDecomposition& e, const Limits& limits) {
  if (e.degree() != g.degree()) throw InputError("decomposition and group have different degrees");
  auto props = decomposition_properties(e, g);
  if (!props.invariant)
    throw InputError("decomposition is not G-invariant: generator " + std::to_string(props.bad_generator) +
                     " maps partition " + std::to_string(props.bad_partition) + " outside E");
  const std::size_t n = g.degree(), l = e.index();
  std::vector<std::size_t> offsets{0}, radix{1};
  std::vector<std::vector<Point>> reps(l);
  for (std::size_t j = 0; j < l; ++j) {
    for (const auto& b : e[j].blocks()) reps[j].push_back(b[0]);
    offsets.push_back(offsets.back() + reps[j].size());
    radix.push_back(radix.back() * reps[j].size());
  }
  // Point of Omega with given blocks, indexed in mixed radix.
  std::vector<Point> at(n);
  for (Point p = 0; p < n; ++p) {
    std::size_t key = 0;
    for (std::size_t j = 0; j < l; ++j) key += e[j].block_of(p) * radix[j];
    at[key] = p;
  }
  auto pull_back = [&](const Permutation& xb) {
    std::vector<Point> img(n);
    for (Point p = 0; p < n; ++p) {
      std::size_t key = 0;
      for (std::size_t j = 0; j < l; ++j) {
        Point q = xb[static_cast<Point>(offsets[j] + e[j].block_of(p))];
        std::size_t jj = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), q) - offsets.begin()) - 1;
        key += (q - offsets[jj]) * radix[jj];
      }
      img[p] = at[key];
    }
    return Permutation::from_images(std::move(img));
  };
  std::vector<Permutation> gb;
  for (const auto& x : g.generators()) gb.push_back(block_image(e, offsets, reps, x));
  PermGroup gbg(offsets.back(), tidy_generators(std::move(gb)));
  if (auto o = g.known_order()) gbg.set_known_order(*o);
  bool abelian_only = false;
  for (const auto& mn : minimal_normal_subgroups(gbg, limits)) {
    std::vector<Permutation> gens;
    for (const auto& x : mn.group.generators()) gens.push_back(pull_back(x));
    PermGroup m(n, std::move(gens), "M");
    if (orbit(m, 0).size() != n) continue;
    if (mn.abelian) {
      abelian_only = true;
      continue;
    }
    m.set_known_order(mn.group.order());
    return m;
  }
  if (abelian_only) throw UnsupportedInput("the only plinths are abelian");
  throw InputError("G is not innately transitive");
}

std::string to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::CD_1: return "CD_1";
    case ClassLabel::CD_S: return "CD_S";
    case ClassLabel::CD_1S: return "CD_1S";
    case ClassLabel::CD_2sim: return "CD_2sim";
    case ClassLabel::CD_2nsim: return "CD_2nsim";
    case ClassLabel::CD_3: return "CD_3";
    case ClassLabel::UNDECIDED: return "UNDECIDED";
  }
  return "?";
}

json LabelReport::to_json() const {
  json j = {{"label", to_string(label)},
            {"degenerate", degenerate},
            {"member_orders", member_orders},
            {"all_subdirect", all_subdirect},
            {"f_orders", f_orders},
            {"strip_lengths", strip_lengths},
            {"acting_order", acting_order}};
  if (!undecided_reason.empty()) j["undecided_reason"] = undecided_reason;
  if (!conjugacy_evidence.empty()) j["conjugacy_evidence"] = conjugacy_evidence;
  if (!cross_check.is_null()) j["cross_check"] = cross_check;
  return j;
}

AnalysisReport quotient_analysis(const PermGroup& g, const PermGroup& m, Point omega,
                                 const CartesianDecomposition& e, const Limits& limits) {
  auto props = decomposition_properties(e, g);
  auto bm = build_model(g, m, omega, e, props, limits);

  AnalysisReport r;
  r.checks = json::object();
  r.degree = g.degree();
  r.index = e.index();
  r.g_order = bm->g.order();
  r.m_order = bm->m.order();
  r.k = bm->d.k();
  r.t_order = bm->d.factor_order();
  r.omega = omega;
  r.orbits = props.orbits;
  r.s = props.orbits.size();
  r.homogeneous = props.homogeneous;
  r.m = props.m;

  std::vector<Partition> quotient;
  for (const auto& xi : r.orbits) {
    std::vector<Partition> ps;
    std::vector<Point> pts;
    for (auto j : xi) {
      ps.push_back(e[j]);
      pts.push_back(bm->tuple[j]);
    }
    Partition oi = infimum(ps);
    quotient.push_back(oi);
    r.quotient_block_counts.push_back(oi.block_count());
    PermGroup ki = pointwise_stabilizer(bm->m, pts);
    r.k_orders.push_back(ki.order());
    bm->k.push_back(ki);
  }

  for (std::size_t i = 0; i < r.s; ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    bool invariant = true;
    for (const auto& x : g.generators())
      if (!(quotient[i].image(x) == quotient[i])) invariant = false;
    check(r, "omega_invariant" + tag, invariant);
    check(r, "k_is_block_stabilizer" + tag, r.m_order == r.k_orders[i] * r.quotient_block_counts[i],
          {{"k_order", r.k_orders[i]}, {"blocks", r.quotient_block_counts[i]}});
    bool normalized = true;
    for (const auto& x : bm->g_omega.generators())
      if (!same_group(conjugate(bm->k[i], x), bm->k[i])) normalized = false;
    check(r, "k_normalized_by_g_omega" + tag, normalized);
    std::vector<Point> support;
    for (auto j : r.orbits[i])
      for (std::size_t p = bm->offsets[j]; p < bm->offsets[j + 1]; ++p) support.push_back(static_cast<Point>(p));
    check(r, "m_faithful" + tag, pointwise_stabilizer(bm->m, support).is_trivial());
  }

  r.quotient_degenerate = r.s == 1;
  if (r.quotient_degenerate) {
    r.notes.push_back("G is transitive on E; the quotient is the index-1 decomposition into points");
    check(r, "quotient_cartesian", quotient[0].is_singletons());
  } else {
    auto cc = check_cartesian(quotient);
    check(r, "quotient_cartesian", cc.ok, {{"reason", cc.reason}, {"selection", cc.selection}});
  }
  CartesianSystem sys{bm->m, bm->tuple[0], bm->m_omega, bm->k};
  auto v = verify_cartesian_system(sys, limits);
  check(r, "quotient_system", v.ok, {{"reason", v.reason}, {"witness", v.witness}});

  if (r.homogeneous)
    for (std::size_t i = 0; i < r.s; ++i) {
      std::size_t l = integer_log(r.quotient_block_counts[i], r.m);
      check(r, "ell_integral[" + std::to_string(i) + "]", l == r.orbits[i].size(),
            {{"blocks", r.quotient_block_counts[i]}, {"m", r.m}, {"orbit_size", r.orbits[i].size()}});
      r.ell.push_back(l);
    }

  for (std::size_t i = 0; i < r.s; ++i) {
    std::vector<PermGroup> members;
    if (r.orbits[i].size() == 1) {
      members.push_back(bm->k[i]);
    } else {
      for (auto j : r.orbits[i]) members.push_back(bm->l[j]);
    }
    // G_delta = G_omega K_i; its kernel on Omega_i centralizes M, so
    // conjugacy of subgroups of M may be decided in G_delta itself.
    r.labels.push_back(classify(*bm, members, generated_by(bm->g_omega, bm->k[i]), limits));
  }
  r.model = bm;
  return r;
}

LabelReport six_class_classify(const PermGroup& g, const PermGroup& m, Point omega,
                               const CartesianDecomposition& e, const Limits& limits) {
  auto props = decomposition_properties(e, g);
  if (props.invariant && !props.transitive) throw InputError("G is not transitive on the decomposition");
  auto bm = build_model(g, m, omega, e, props, limits);
  return classify(*bm, bm->l, bm->g_omega, limits);
}

namespace {

json verdict(bool applies, bool ok, json detail = json::object()) {
  detail["applies"] = applies;
  detail["ok"] = ok;
  return detail;
}

[[noreturn]] void violated(const std::string& clause, const AnalysisReport& r, json extra = json::object()) {
  extra["clause"] = clause;
  json labels = json::array();
  for (const auto& l : r.labels) labels.push_back(to_string(l.label));
  extra["labels"] = labels;
  extra["s"] = r.s;
  throw TheoremViolation("theorem clause " + clause + " fails", extra);
}

std::vector<std::string> f_rows(const BlockModel& bm) {
  auto f = distinct_proper_projections(bm.d, 0, bm.l);
  std::vector<std::uint64_t> orders;
  for (const auto& x : f) orders.push_back(x.order());
  std::vector<std::string> out;
  for (const auto* row : Catalog::builtin().match(2, bm.d.factor_order(), orders)) out.push_back(row->key());
  return out;
}

}  // namespace

AnalysisReport theorem_main_report(const PermGroup& g, const PermGroup& m, Point omega,
                                   const CartesianDecomposition& e, const Limits& limits) {
  AnalysisReport r = quotient_analysis(g, m, omega, e, limits);
  const BlockModel& bm = *r.model;
  auto count = [&](ClassLabel l) {
    return std::count_if(r.labels.begin(), r.labels.end(), [&](const LabelReport& x) { return x.label == l; });
  };
  const bool undecided = count(ClassLabel::UNDECIDED) > 0;
  json v = json::object();

  v["s_at_most_3"] = verdict(true, r.s <= 3, {{"s", r.s}});
  if (r.s > 3) violated("s<=3", r);
  if (r.s == 1) r.notes.push_back("E is transitive; the clauses for intransitive decompositions do not apply");

  // (i)
  {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < r.s; ++i)
      if (r.labels[i].label == ClassLabel::CD_S) at = i;
    json d = json::object();
    bool ok = true;
    if (at && r.s > 1) {
      ok = r.s == 2;
      if (!ok) violated("main(i)", r);
      std::size_t other = 1 - *at;
      ok = r.labels[other].label == ClassLabel::CD_1;
      if (!ok) violated("main(i)", r, {{"other_label", to_string(r.labels[other].label)}});
      auto cert = is_full_strip_factorisation(bm.d, bm.k[*at], bm.k[other], limits);
      d["certificate"] = cert.to_json();
      if (!cert.holds) violated("main(i)", r, {{"reason", cert.reason}});
      r.certificate = cert;
    }
    v["main_i"] = verdict(at && r.s > 1, ok, d);
  }
  // (ii)
  {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < r.s; ++i)
      if (r.labels[i].label == ClassLabel::CD_2nsim) at = i;
    json d = json::object();
    if (at && r.s > 1) {
      if (r.s != 2) violated("main(ii)", r);
      std::size_t other = 1 - *at;
      if (r.labels[other].label != ClassLabel::CD_1)
        violated("main(ii)", r, {{"other_label", to_string(r.labels[other].label)}});
      auto rows = f_rows(bm);
      d["f_rows"] = rows;
      if (rows.empty()) violated("main(ii)", r, {{"reason", "F matches no table 2 row"}});
      r.notes.push_back("main(ii): the partner label is checked on its own quotient partition");
    }
    v["main_ii"] = verdict(at && r.s > 1, true, d);
  }
  // (iii)
  if (r.s > 1) {
    bool ok = count(ClassLabel::CD_1S) + count(ClassLabel::CD_2sim) + count(ClassLabel::CD_3) == 0;
    if (!ok) violated("main(iii)", r);
    v["main_iii"] = verdict(true, true);
  } else {
    v["main_iii"] = verdict(false, true);
  }
  // (iv)
  {
    json d = json::object();
    bool applies = r.homogeneous && r.s > 1;
    if (applies) {
      if (r.s != 2) violated("main(iv)", r);
      if (count(ClassLabel::CD_1) != 2 && !undecided) violated("main(iv)", r);
      auto cert = is_full_factorisation(bm.d, bm.k[0], bm.k[1], limits);
      d["certificate"] = cert.to_json();
      if (!cert.holds) violated("main(iv)", r, {{"reason", cert.reason}});
      r.certificate = cert;
    }
    v["main_iv"] = verdict(applies, true, d);
  }
  // (v)
  {
    json d = json::object();
    bool applies = r.s == 3;
    if (applies) {
      if (count(ClassLabel::CD_1) != 3 && !undecided) violated("main(v)", r);
      auto cert = is_strong_multiple_factorisation(bm.d, bm.k, limits);
      d["certificate"] = cert.to_json();
      if (!cert.holds) violated("main(v)", r, {{"reason", cert.reason}});
      if (cert.matched_rows.empty()) violated("main(v)", r, {{"reason", "no table 2 row matches"}});
      r.certificate = cert;
    }
    v["main_v"] = verdict(applies, true, d);
  }
  if (r.homogeneous) {
    bool ok = r.s <= 2;
    v["theorem_A"] = verdict(true, ok, {{"orbits", r.s}});
    if (!ok) violated("theorem A", r);
  } else {
    v["theorem_A"] = verdict(false, true);
  }
  // Informational certificate for s = 2 when no clause produced one.
  if (!r.certificate && r.s == 2) r.certificate = is_full_factorisation(bm.d, bm.k[0], bm.k[1], limits);
  if (undecided) r.notes.push_back("some labels are undecided; clauses depending on them were not enforced");
  r.verdicts = v;
  return r;
}

TheoremACheck theorem_A_check(const PermGroup& g, const CartesianDecomposition& e) {
  auto props = decomposition_properties(e, g);
  if (!props.invariant)
    throw InputError("decomposition is not G-invariant: generator " + std::to_string(props.bad_generator) +
                     " maps partition " + std::to_string(props.bad_partition) + " outside E");
  if (!props.homogeneous) throw InputError("decomposition is not homogeneous");
  TheoremACheck c{props.orbits.size(), props.orbits.size() <= 2};
  if (!c.ok) throw TheoremViolation("homogeneous decomposition with more than two orbits", {{"orbits", c.orbits}});
  return c;
}

Witnessed verify_centralizer_claims(AnalysisReport& report, const Limits& limits) {
  if (!report.model) throw InputError("report has no analysis data");
  const BlockModel& bm = *report.model;
  std::string row;
  bool strip_case = false;
  if (report.certificate && report.certificate->holds)
    for (const auto& key : report.certificate->matched_rows) {
      bool strip = report.certificate->kind == FactorisationCertificate::Kind::full_strip &&
                   key.starts_with("table3/row");
      bool homog = report.certificate->kind == FactorisationCertificate::Kind::full && key.starts_with("table4/row");
      if (!strip && !homog) continue;
      char r = key.back();
      if (r < '1' || r > '3') continue;
      row = key;
      strip_case = strip;
      break;
    }
  if (row.empty()) {
    report.centralizer = {{"skipped", "no applicable catalog row"}};
    return Witnessed::fail("skipped: no applicable catalog row", {{"skipped", true}});
  }
  PermGroup n = normalizer(bm.m, bm.m_omega, limits);
  const std::uint64_t c = n.order() / bm.m_omega.order();
  json j = {{"row", row}, {"centralizer_order", c}};
  if (c != 1) {
    report.centralizer = j;
    throw TheoremViolation("centralizer of M in Sym(Omega) is not trivial", j);
  }
  auto mins = minimal_normal_subgroups(bm.g, limits);
  bool unique = mins.size() == 1 && same_group(mins[0].group, bm.m);
  j["unique_minimal_normal"] = unique;
  j["quasiprimitive"] = unique;
  if (strip_case) {
    bool pa = unique && !bm.m_omega.is_trivial() && !is_subdirect(bm.d, bm.m_omega);
    j["type_pa"] = pa;
    if (!pa) {
      report.centralizer = j;
      throw TheoremViolation("strip case is not quasiprimitive of type Pa", j);
    }
  }
  if (!unique) {
    report.centralizer = j;
    throw TheoremViolation("M is not the unique minimal normal subgroup", j);
  }
  report.centralizer = j;
  return {};
}

json AnalysisReport::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["degree"] = degree;
  j["index"] = index;
  j["g_order"] = g_order;
  j["m_order"] = m_order;
  j["t_order"] = t_order;
  j["k"] = k;
  j["omega"] = omega;
  j["orbits"] = orbits;
  j["s"] = s;
  j["homogeneous"] = homogeneous;
  if (homogeneous) {
    j["m"] = m;
    j["ell"] = ell;
  }
  j["quotient_block_counts"] = quotient_block_counts;
  j["k_orders"] = k_orders;
  j["quotient_degenerate"] = quotient_degenerate;
  j["checks"] = checks;
  j["labels"] = json::array();
  for (const auto& l : labels) j["labels"].push_back(l.to_json());
  if (certificate) j["certificate"] = certificate->to_json();
  if (!verdicts.is_null()) j["verdicts"] = verdicts;
  if (!centralizer.is_null()) j["centralizer"] = centralizer;
  j["notes"] = notes;
  return j;
}

std::string AnalysisReport::to_text() const {
  std::ostringstream o;
  o << "degree " << degree << ", |G| = " << g_order << ", |M| = " << m_order << " = " << t_order << "^" << k
    << "\n";
  o << "E has index " << index << (homogeneous ? " (homogeneous, m = " + std::to_string(m) + ")" : "") << ", "
    << s << " G-orbit" << (s == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < s; ++i) {
    o << "  Xi_" << i + 1 << " = {";
    for (std::size_t a = 0; a < orbits[i].size(); ++a) o << (a ? ", " : "") << orbits[i][a];
    o << "}: |Omega_" << i + 1 << "| = " << quotient_block_counts[i] << ", |K_" << i + 1 << "| = " << k_orders[i];
    if (i < labels.size()) {
      o << ", label " << to_string(labels[i].label);
      if (labels[i].degenerate) o << " (one member)";
    }
    o << "\n";
  }
  if (certificate) {
    o << "certificate: " << to_string(certificate->kind) << (certificate->holds ? " holds" : " fails");
    if (!certificate->reason.empty()) o << " (" << certificate->reason << ")";
    for (const auto& row : certificate->matched_rows) o << " " << row;
    o << "\n";
  }
  if (verdicts.is_object())
    for (const auto& [name, val] : verdicts.items())
      if (val.value("applies", false)) o << "  " << name << ": " << (val.value("ok", false) ? "ok" : "FAILED") << "\n";
  if (centralizer.is_object()) {
    if (centralizer.contains("centralizer_order"))
      o << "centralizer of M in Sym(Omega): order " << centralizer["centralizer_order"].get<std::uint64_t>()
        << (centralizer.value("type_pa", false) ? ", quasiprimitive of type Pa" : "") << "\n";
    else
      o << "centralizer check skipped: " << centralizer.value("skipped", std::string()) << "\n";
  }
  for (const auto& n : notes) o << "note: " << n << "\n";
  return o.str();
}

}  // namespace cartdec
