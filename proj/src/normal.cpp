#include "cartdec/normal.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "cartdec/primes.hpp"
#include "cartdec/search.hpp"

namespace cartdec {

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& xs,
                         std::optional<std::uint64_t> stop_at) {
  std::vector<Permutation> gens = tidy_generators(xs);
  PermGroup n(g.degree(), gens);
  if (gens.empty()) return n;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (const auto& s : g.generators()) {
      Permutation c = conjugate(gens[k], s);
      if (n.contains(c)) continue;
      gens.push_back(c);
      n = PermGroup(g.degree(), gens);
      if (stop_at && n.order() >= *stop_at) return n;
    }
  }
  return n;
}

bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
  return true;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, comms);
}

PermGroup restrict_to_orbit(const PermGroup& g, const std::vector<Point>& orb) {
  std::vector<Point> pos(g.degree(), UINT32_MAX);
  for (std::size_t k = 0; k < orb.size(); ++k) pos[orb[k]] = static_cast<Point>(k);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(orb.size());
    for (std::size_t k = 0; k < orb.size(); ++k) {
      Point q = pos[s[orb[k]]];
      if (q == UINT32_MAX) throw InputError("restriction to a set that is not an orbit");
      img[k] = q;
    }
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermGroup(orb.size(), std::move(gens));
}

PermGroup smallest_nontrivial_constituent(const PermGroup& g) {
  std::vector<Point> best;
  for (auto& o : orbits(g))
    if (o.size() > 1 && (best.empty() || o.size() < best.size())) best = std::move(o);
  if (best.empty()) return g;
  return restrict_to_orbit(g, best);
}

SimplicityCertificate certify_simple(const PermGroup& t_in) {
  SimplicityCertificate c;
  const std::uint64_t order = t_in.order();
  if (order == 1) {
    c.method = "trivial group";
    c.exact = true;
    return c;
  }
  if (is_abelian(t_in)) {
    c.simple = is_prime(order);
    c.exact = true;
    c.method = "abelian; simple iff prime order";
    return c;
  }
  // Faithful on any orbit where it acts nontrivially only if simple; a
  // non-faithful constituent is itself a witness of a proper normal subgroup.
  PermGroup t = smallest_nontrivial_constituent(t_in);
  if (t.order() != order) {
    c.method = "kernel on an orbit is a proper normal subgroup";
    c.exact = true;
    return c;
  }
  auto check = [&](const Permutation& y) {
    PermGroup n = normal_closure(t, {y}, order);
    return n.order() == order;
  };
  if (order * t.degree() <= 20000000ull) {
    c.exact = true;
    c.method = "normal closure of every class of prime-order elements";
    std::vector<Permutation> elements;
    elements.reserve(order);
    t.chain().for_each_element([&](const Permutation& x) {
      elements.push_back(x);
      return true;
    });
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& x : elements) {
      if (x.is_identity() || seen.count(x) || !is_prime(x.order())) continue;
      std::vector<Permutation> cls{x};
      seen.insert(x);
      for (std::size_t k = 0; k < cls.size(); ++k)
        for (const auto& s : t.generators()) {
          Permutation y = conjugate(cls[k], s);
          if (seen.insert(y).second) cls.push_back(std::move(y));
        }
      if (!check(x)) {
        c.witness = x;
        return c;
      }
    }
    c.simple = true;
    return c;
  }
  c.method = "normal closure of prime-order powers of 200 random elements";
  std::mt19937_64 rng(0x51391eull);
  for (int k = 0; k < 200; ++k) {
    Permutation x = t.random_element(rng);
    if (x.is_identity()) continue;
    std::uint64_t o = x.order();
    for (std::uint64_t p : prime_divisors(o)) {
      Permutation y = x.pow(static_cast<std::int64_t>(o / p));
      if (!check(y)) {
        c.witness = y;
        return c;
      }
    }
  }
  c.simple = true;
  return c;
}

namespace {

// Descends to a minimal normal subgroup of `ambient` inside the normal
// subgroup c, using normal closures of prime-order powers of random elements.
PermGroup descend(const PermGroup& ambient, PermGroup c, std::mt19937_64& rng) {
  int fails = 0;
  while (fails < 24 && c.order() > 1) {
    Permutation x = c.random_element(rng);
    if (x.is_identity()) {
      ++fails;
      continue;
    }
    bool improved = false;
    const std::uint64_t o = x.order();
    for (std::uint64_t p : prime_divisors(o)) {
      Permutation y = x.pow(static_cast<std::int64_t>(o / p));
      PermGroup d = normal_closure(ambient, {y}, c.order());
      if (d.order() < c.order()) {
        c = d;
        improved = true;
        break;
      }
    }
    fails = improved ? 0 : fails + 1;
  }
  return c;
}

bool contains_group(const std::vector<PermGroup>& list, const PermGroup& h) {
  for (const auto& x : list)
    if (x.order() == h.order() && is_subgroup(h, x)) return true;
  return false;
}

}  // namespace

std::vector<PermGroup> simple_factors(const PermGroup& m, const PermGroup& over) {
  std::mt19937_64 rng(0xfac70125ull);
  const std::uint64_t total = m.order();
  std::vector<PermGroup> found;
  std::uint64_t prod = 1;
  auto add = [&](const PermGroup& t) {
    if (contains_group(found, t)) return;
    found.push_back(t);
    prod = checked_mul(prod, t.order());
  };
  for (int attempt = 0; attempt < 64 && prod < total; ++attempt) {
    PermGroup t = descend(m, m, rng);
    for (;;) {
      SimplicityCertificate cert = certify_simple(t);
      if (cert.simple) break;
      if (!cert.witness) throw UnsupportedInput("could not split a non-simple factor candidate");
      t = descend(m, normal_closure(m, {*cert.witness}), rng);
    }
    add(t);
    // Conjugates under the overgroup are factors as well.
    for (std::size_t k = 0; k < found.size() && prod < total; ++k)
      for (const auto& s : over.generators()) add(conjugate(found[k], s));
  }
  if (prod != total)
    throw UnsupportedInput("direct factor decomposition failed: factor orders multiply to " +
                           std::to_string(prod) + ", not " + std::to_string(total));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i + 1; j < found.size(); ++j)
      for (const auto& a : found[i].generators())
        for (const auto& b : found[j].generators())
          if (!(a * b == b * a)) throw UnsupportedInput("candidate direct factors do not commute");
  return found;
}

MinimalNormalSubgroup find_minimal_normal(const PermGroup& g, const PermGroup& inside,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PermGroup n = descend(g, inside, rng);
  for (;;) {
    MinimalNormalSubgroup r;
    r.group = n;
    if (is_abelian(n)) {
      r.abelian = true;
      // Minimal iff every nonidentity element has normal closure n.
      if (n.order() <= 65536) {
        r.exact = true;
        std::optional<Permutation> bad;
        n.chain().for_each_element([&](const Permutation& x) {
          if (!x.is_identity() && normal_closure(g, {x}, n.order()).order() < n.order()) {
            bad = x;
            return false;
          }
          return true;
        });
        if (bad) {
          n = descend(g, normal_closure(g, {*bad}), rng);
          continue;
        }
      }
      return r;
    }
    r.factors = simple_factors(n, g);
    // The factors are simple and the conjugation orbit covers them, so n is
    // minimal normal exactly when g permutes them transitively.
    std::vector<PermGroup> orbit{r.factors[0]};
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& s : g.generators()) {
        PermGroup c = conjugate(orbit[k], s);
        if (!contains_group(orbit, c)) orbit.push_back(c);
      }
    if (orbit.size() != r.factors.size()) {
      std::vector<Permutation> gens;
      for (const auto& t : orbit)
        gens.insert(gens.end(), t.generators().begin(), t.generators().end());
      n = PermGroup(g.degree(), gens);
      continue;
    }
    r.exact = certify_simple(r.factors[0]).exact;
    return r;
  }
}

std::vector<MinimalNormalSubgroup> minimal_normal_subgroups(const PermGroup& g,
                                                            const Limits& limits) {
  if (g.is_trivial()) throw InputError("minimal normal subgroups of the trivial group");
  std::vector<MinimalNormalSubgroup> out;
  PermGroup c = g;
  std::uint64_t seed = 1;
  for (;;) {
    MinimalNormalSubgroup n = find_minimal_normal(g, c, seed++);
    bool fresh = true;
    for (const auto& x : out)
      if (x.group.order() == n.group.order() && is_subgroup(n.group, x.group)) fresh = false;
    if (!fresh) break;
    out.push_back(n);
    if (n.group.order() == g.order()) break;
    // Distinct minimal normal subgroups commute elementwise.
    c = intersection(c, centralizer(g, n.group, limits), limits);
    if (c.is_trivial()) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.group.order() < b.group.order();
  });
  return out;
}

std::vector<MinimalNormalSubgroup> plinths(const PermGroup& g, const Limits& limits) {
  std::vector<MinimalNormalSubgroup> out;
  for (auto& n : minimal_normal_subgroups(g, limits))
    if (is_transitive(n.group)) out.push_back(std::move(n));
  return out;
}

}  // namespace cartdec
