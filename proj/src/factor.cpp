#include "cartdec/factor.hpp"

#include <algorithm>

#include "cartdec/catalog.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/normal.hpp"
#include "cartdec/primes.hpp"
#include "cartdec/search.hpp"

namespace cartdec {
namespace {

using Kind = FactorisationCertificate::Kind;

bool product_is(std::uint64_t a, std::uint64_t b, std::uint64_t meet, std::uint64_t m) {
  // |A||B|/|A n B| = |M| without overflow: |A|/|A n B| is exact.
  return a % meet == 0 && checked_mul(a / meet, b) == m;
}

// Fills projection orders and prime sets; returns the first (i, j) whose
// projection is not proper, if any.
std::optional<std::pair<std::size_t, std::size_t>> fill_projections(FactorisationCertificate& c,
                                                                    const DirectFactorisation& d,
                                                                    const std::vector<PermGroup>& parts) {
  std::optional<std::pair<std::size_t, std::size_t>> bad;
  c.t_order = d.factor_order();
  c.k = d.k();
  c.t_primes = prime_divisors(c.t_order);
  c.projection_orders.assign(d.k(), {});
  c.projection_primes.assign(d.k(), {});
  for (std::size_t i = 0; i < d.k(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) {
      std::uint64_t o = d.projection(i, parts[j]).order();
      c.projection_orders[i].push_back(o);
      c.projection_primes[i].push_back(prime_divisors(o));
      if (o == c.t_order && !bad) bad = {i, j};
    }
  return bad;
}

bool derived_projections_contained(const DirectFactorisation& d, const PermGroup& kj) {
  for (std::size_t i = 0; i < d.k(); ++i) {
    PermGroup der = derived_subgroup(d.projection_in_m(i, kj));
    for (const auto& x : der.generators())
      if (!kj.contains(x)) return false;
  }
  return true;
}

std::string pair_label(std::size_t i, std::size_t j) {
  return "sigma_" + std::to_string(i) + "(K_" + std::to_string(j) + ")";
}

// alpha^-1(sigma_j(K)) inside sigma_i(M), where alpha : T_i -> T_j is the
// isomorphism carried by the strip x with support {i, j}.
PermGroup pull_back(const DirectFactorisation& d, const PermGroup& x, std::size_t i, std::size_t j,
                    const PermGroup& k, const Limits& limits) {
  const std::size_t li = d.length(i), lj = d.length(j);
  std::size_t pair[2] = {i, j};
  PermGroup diag = d.projection(pair, x);
  const PermGroup ti = d.projection(i, d.group());
  const PermGroup sj = d.projection(j, k);
  std::vector<Permutation> gens;
  for (const auto& t : ti.generators()) gens.push_back(shifted(t, 0, li + lj));
  for (const auto& s : sj.generators()) gens.push_back(shifted(s, li, li + lj));
  PermGroup box(li + lj, std::move(gens));
  PermGroup meet = intersection(diag, box, limits);
  std::vector<Permutation> out;
  for (const auto& y : meet.generators()) out.push_back(restricted(y, 0, li));
  PermGroup res(li, tidy_generators(std::move(out)));
  res.set_known_order(meet.order());
  return res;
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::plain: return "plain";
    case Kind::full: return "full";
    case Kind::strong_multiple: return "strong-multiple";
    case Kind::full_strip: return "full-strip";
  }
  return "?";
}

std::map<std::uint64_t, std::uint64_t> element_order_profile(const PermGroup& g, std::uint64_t cap) {
  if (g.order() > cap)
    throw LimitError("element-order profile of a group of order " + std::to_string(g.order()));
  std::map<std::uint64_t, std::uint64_t> out;
  g.chain().for_each_element([&](const Permutation& x) {
    ++out[x.order()];
    return true;
  });
  return out;
}

nlohmann::json FactorisationCertificate::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["holds"] = holds;
  j["reason"] = reason;
  j["nontrivial"] = nontrivial;
  j["m_order"] = m_order;
  j["part_orders"] = part_orders;
  j["intersection_orders"] = intersection_orders;
  if (kind != Kind::plain) {
    j["t_order"] = t_order;
    j["k"] = k;
    j["projection_orders"] = projection_orders;
    j["t_primes"] = t_primes;
    j["projection_primes"] = projection_primes;
  }
  if (derived_contained) j["derived_projections_contained"] = *derived_contained;
  if (kind == Kind::full_strip) {
    j["strip_lengths"] = strip_lengths;
    if (isomorphism_certified) j["isomorphism_certified"] = *isomorphism_certified;
    j["isomorphism_evidence"] = isomorphism_evidence;
    if (strip_factorisation) j["strip_factorisation"] = *strip_factorisation;
  }
  if (!caveat.empty()) j["caveat"] = caveat;
  j["matched_rows"] = matched_rows;
  return j;
}

FactorisationCertificate is_factorisation(const PermGroup& m, const PermGroup& a, const PermGroup& b,
                                          const Limits& limits) {
  FactorisationCertificate c;
  c.kind = Kind::plain;
  c.m_order = m.order();
  c.part_orders = {a.order(), b.order()};
  for (const auto* h : {&a, &b})
    for (const auto& x : h->generators())
      if (!m.contains(x)) {
        c.reason = "a part is not a subgroup of M";
        return c;
      }
  std::uint64_t meet = intersection(a, b, limits).order();
  c.intersection_orders = {meet};
  c.nontrivial = a.order() < c.m_order && b.order() < c.m_order;
  c.holds = product_is(a.order(), b.order(), meet, c.m_order);
  if (!c.holds) c.reason = "|A||B|/|A n B| != |M|";
  if (c.holds) c.matched_rows = match_table(c);
  return c;
}

FactorisationCertificate is_full_factorisation(const DirectFactorisation& d, const PermGroup& k1,
                                               const PermGroup& k2, const Limits& limits) {
  FactorisationCertificate c = is_factorisation(d.group(), k1, k2, limits);
  c.kind = Kind::full;
  c.matched_rows.clear();
  std::vector<PermGroup> parts{k1, k2};
  auto bad = fill_projections(c, d, parts);
  if (!c.holds) return c;
  c.holds = false;
  if (bad) {
    c.reason = pair_label(bad->first, bad->second) + " is not proper";
    return c;
  }
  for (std::size_t i = 0; i < d.k(); ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (c.projection_primes[i][j] != c.t_primes) {
        c.reason = "primes of |" + pair_label(i, j) + "| differ from those of |T|";
        return c;
      }
  c.holds = true;
  c.derived_contained = derived_projections_contained(d, k1) && derived_projections_contained(d, k2);
  c.matched_rows = match_table(c);
  return c;
}

FactorisationCertificate is_strong_multiple_factorisation(const DirectFactorisation& d,
                                                          const std::vector<PermGroup>& parts,
                                                          const Limits& limits) {
  FactorisationCertificate c;
  c.kind = Kind::strong_multiple;
  c.m_order = d.group().order();
  for (const auto& p : parts) c.part_orders.push_back(p.order());
  if (parts.size() != 3) {
    c.reason = "requires three parts";
    return c;
  }
  auto bad = fill_projections(c, d, parts);
  c.nontrivial = !bad;
  if (bad) {
    c.reason = pair_label(bad->first, bad->second) + " is not proper";
    return c;
  }
  for (std::size_t j1 = 0; j1 < 3; ++j1) {
    std::size_t j2 = (j1 + 1) % 3, j3 = (j1 + 2) % 3;
    PermGroup meet = intersection(parts[j2], parts[j3], limits);
    c.intersection_orders.push_back(meet.order());
    std::uint64_t both = intersection(parts[j1], meet, limits).order();
    if (!product_is(parts[j1].order(), meet.order(), both, c.m_order)) {
      c.reason = "K_" + std::to_string(j1) + "(K_" + std::to_string(j2) + " n K_" + std::to_string(j3) +
                 ") != M";
      return c;
    }
  }
  c.holds = true;
  c.derived_contained = std::all_of(parts.begin(), parts.end(),
                                    [&](const PermGroup& p) { return derived_projections_contained(d, p); });
  c.matched_rows = match_table(c);
  return c;
}

FactorisationCertificate is_full_strip_factorisation(const DirectFactorisation& d, const PermGroup& dstrips,
                                                     const PermGroup& k, const Limits& limits) {
  FactorisationCertificate c;
  c.kind = Kind::full_strip;
  c.m_order = d.group().order();
  c.part_orders = {dstrips.order(), k.order()};
  std::vector<PermGroup> parts{dstrips, k};
  fill_projections(c, d, parts);
  c.nontrivial = dstrips.order() < c.m_order && k.order() < c.m_order;
  if (!c.nontrivial) {
    c.reason = "D and K must be proper";
    return c;
  }
  // (i)
  std::uint64_t meet = intersection(dstrips, k, limits).order();
  c.intersection_orders = {meet};
  if (!product_is(dstrips.order(), k.order(), meet, c.m_order)) {
    c.reason = "M != DK";
    return c;
  }
  // (ii): every factor is either covered by a nontrivial full strip of D or
  // projects trivially, and the strips multiply to D.
  auto strips = strips_involved(d, dstrips);
  std::vector<bool> covered(d.k(), false);
  std::uint64_t prod = 1;
  for (const auto& s : strips) {
    for (auto i : s.support) covered[i] = true;
    prod = checked_mul(prod, s.component.order());
    c.strip_lengths.push_back(s.length());
  }
  for (std::size_t i = 0; i < d.k(); ++i)
    if (!covered[i] && c.projection_orders[i][0] != 1) {
      c.reason = "D is not a direct product of nontrivial full strips (factor " + std::to_string(i) + ")";
      return c;
    }
  if (strips.empty() || prod != dstrips.order()) {
    c.reason = "D is not a direct product of nontrivial full strips";
    return c;
  }
  // (iii)
  for (std::size_t i = 0; i < d.k(); ++i) {
    if (c.projection_orders[i][1] == c.t_order) {
      c.reason = pair_label(i, 1) + " is not proper";
      return c;
    }
    if (c.projection_orders[i][1] != c.projection_orders[0][1]) {
      c.reason = "projections of K have different orders";
      return c;
    }
  }
  c.holds = true;

  for (const auto& s : strips)
    if (s.length() != 2)
      throw TheoremViolation("full strip factorisation with a strip of length " + std::to_string(s.length()),
                             {{"support", s.support}, {"strip_lengths", c.strip_lengths}});

  // Isomorphism of the sigma_i(K) and the factorisation across each strip.
  bool all_conj = true, all_fact = true;
  std::vector<std::string> evidence;
  for (const auto& s : strips) {
    std::size_t i = s.support[0], j = s.support[1];
    PermGroup ti = d.projection(i, d.group());
    PermGroup si = d.projection(i, k);
    PermGroup pulled = pull_back(d, s.component, i, j, k, limits);
    std::uint64_t both = intersection(si, pulled, limits).order();
    if (!product_is(si.order(), pulled.order(), both, c.t_order)) all_fact = false;
    auto conj = conjugacy(ti, si, pulled, limits);
    if (conj.status == ConjugacyResult::Status::conjugate) {
      evidence.push_back("{" + std::to_string(i) + "," + std::to_string(j) + "}: conjugate in T_" +
                         std::to_string(i));
    } else {
      all_conj = false;
      std::string how = conj.status == ConjugacyResult::Status::not_conjugate ? "not conjugate" : "undecided";
      try {
        bool same = element_order_profile(si) == element_order_profile(pulled);
        evidence.push_back("{" + std::to_string(i) + "," + std::to_string(j) + "}: " + how +
                           " in T_" + std::to_string(i) + "; element-order profiles " +
                           (same ? "agree" : "differ"));
        if (!same) {
          c.holds = false;
          c.reason = "projections of K are not isomorphic";
        }
      } catch (const LimitError&) {
        evidence.push_back("{" + std::to_string(i) + "," + std::to_string(j) + "}: " + how +
                           "; profile skipped");
      }
    }
  }
  c.isomorphism_certified = all_conj;
  c.strip_factorisation = all_fact;
  for (std::size_t a = 0; a < evidence.size(); ++a)
    c.isomorphism_evidence += (a ? "; " : "") + evidence[a];
  if (!all_conj)
    c.caveat = "isomorphism of the projections of K rests on equal orders and element-order profiles";
  if (c.holds && !all_fact)
    throw TheoremViolation("projections of K do not factorise T across a strip",
                           {{"strip_lengths", c.strip_lengths}});
  if (c.holds) c.matched_rows = match_table(c);
  return c;
}

std::vector<std::string> match_table(const FactorisationCertificate& c) {
  std::vector<std::string> out;
  if (!c.holds) return out;
  const Catalog& cat = Catalog::builtin();
  auto add = [&](int table, std::uint64_t t, std::vector<std::uint64_t> orders) {
    for (const auto* r : cat.match(table, t, orders)) out.push_back(r->key());
  };
  switch (c.kind) {
    case Kind::plain:
      add(1, c.m_order, c.part_orders);
      if (c.part_orders[0] == c.part_orders[1]) add(3, c.m_order, c.part_orders);
      break;
    case Kind::full: {
      std::vector<std::uint64_t> p = c.projection_orders[0];
      add(1, c.t_order, p);
      if (p[0] == p[1]) add(3, c.t_order, p);
      add(4, c.t_order, p);
      break;
    }
    case Kind::strong_multiple:
      add(2, c.t_order, c.projection_orders[0]);
      break;
    case Kind::full_strip: {
      std::uint64_t p = c.projection_orders[0][1];
      add(3, c.t_order, {p, p});
      break;
    }
  }
  return out;
}

}  // namespace cartdec
