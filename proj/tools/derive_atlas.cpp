// Regenerates data/atlas/*.json from first principles. Every object is found
// by an explicit search and checked before it is written; the library checks
// the files again when they are loaded.
//
//   derive_atlas <output-dir>

#include <algorithm>
#include <bit>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <random>

#include "cartdec/coset.hpp"
#include "cartdec/errors.hpp"
#include "cartdec/io.hpp"
#include "cartdec/search.hpp"

using namespace cartdec;
using nlohmann::json;

namespace {

std::mt19937_64 rng(20240611);

void require(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "derive_atlas: check failed: " << what << "\n";
    std::exit(1);
  }
}

json perms(const std::vector<Permutation>& gs) {
  json j = json::array();
  for (const auto& g : gs) j.push_back(io::permutation_to_json(g));
  return j;
}

// A generating set of at most three elements drawn from h.
std::vector<Permutation> small_generators(const PermGroup& h) {
  const std::uint64_t target = h.order();
  if (target == 1) return {};
  for (std::size_t count = 2; count <= 3; ++count)
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<Permutation> gs;
      for (std::size_t i = 0; i < count; ++i) gs.push_back(h.random_element(rng));
      PermGroup t(h.degree(), gs);
      if (t.order() == target) return t.generators();
    }
  return h.generators();
}

PermGroup with_small_generators(const PermGroup& h) {
  PermGroup out(h.degree(), small_generators(h));
  require(out.order() == h.order(), "generator reduction");
  return out;
}

json subgroup_json(const PermGroup& h) {
  return {{"order", h.order()}, {"generators", perms(h.generators())}};
}

json entry(const std::string& name, const PermGroup& g, const std::string& note) {
  return {{"name", name},
          {"degree", g.degree()},
          {"order", g.order()},
          {"generators", perms(g.generators())},
          {"subgroups", json::object()},
          {"morphisms", json::object()},
          {"note", note}};
}

void add_realized(json& e, const std::string& name, const PermGroup& g, const Permutation& pi) {
  std::vector<Permutation> imgs;
  for (const auto& x : g.generators()) imgs.push_back(conjugate(x, pi));
  auto phi = GroupMorphism::from_images(g, g, imgs);
  require(phi.injective(), name + " is injective");
  e["morphisms"][name] = {{"generator_images", perms(imgs)}, {"realizer", io::permutation_to_json(pi)}};
}

void write(const std::filesystem::path& dir, const std::string& file, const json& j) {
  io::write_file((dir / file).string(), j.dump(1) + "\n");
  std::cout << "wrote " << file << "\n";
}

Permutation element_of_order(const PermGroup& g, std::uint64_t n) {
  for (;;) {
    Permutation x = g.random_element(rng);
    std::uint64_t o = x.order();
    if (o % n == 0) return x.pow(static_cast<std::int64_t>(o / n));
  }
}

// Restriction of g to [offset, offset+len), which g must preserve.
PermGroup restricted_group(const PermGroup& g, std::size_t offset, std::size_t len) {
  std::vector<Permutation> gs;
  for (const auto& x : g.generators()) gs.push_back(restricted(x, offset, len));
  PermGroup out(len, std::move(gs));
  return out;
}

// Both stabilizers act on the first orbit with different orbit lengths.
bool inequivalent_by_orbits(const PermGroup& g, Point p, Point q, std::size_t n) {
  auto profile = [&](Point x) {
    PermGroup s = point_stabilizer(g, x);
    std::vector<std::size_t> lens;
    for (const auto& o : orbits(s))
      if (o[0] < n) lens.push_back(o.size());
    std::sort(lens.begin(), lens.end());
    return lens;
  };
  return profile(p) != profile(q);
}

// ---------------------------------------------------------------- A5, A6

void derive_alternating(const std::filesystem::path& dir) {
  PermGroup a5(5, {Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  require(a5.order() == 60, "|A5| = 60");
  write(dir, "A5.json", entry("A5", a5, "Natural action on 5 points."));

  PermGroup a6(6, {Permutation::from_cycles(6, {{0, 1, 2}}), Permutation::from_cycles(6, {{1, 2, 3, 4, 5}})});
  require(a6.order() == 360, "|A6| = 360");
  PermGroup stab = with_small_generators(point_stabilizer(a6, 0));

  // A transitive A5: random 2-generated subgroups of order 60.
  PermGroup trans;
  for (;;) {
    PermGroup t(6, {a6.random_element(rng), a6.random_element(rng)});
    if (t.order() == 60 && is_transitive(t)) {
      trans = t;
      break;
    }
  }
  require(intersection(stab, trans).order() == 10, "|A5 n A5'| = 10");

  // The action on the six conjugates of the transitive A5 is the image of the
  // natural action under an automorphism that swaps the two classes.
  CosetSpace conj(a6, trans);
  std::vector<Permutation> outer;
  for (const auto& x : a6.generators()) outer.push_back(conj.image_of(x));
  auto alpha = GroupMorphism::from_images(a6, a6, outer);
  require(alpha.injective(), "outer automorphism injective");
  require(is_transitive(alpha.image(stab)), "outer automorphism swaps the A5 classes");

  json e = entry("A6", a6, "Natural action. A5' is a transitive A5 found by random 2-generation. The "
                           "outer automorphism is the action on the conjugates of A5'.");
  e["subgroups"]["A5"] = subgroup_json(stab);
  e["subgroups"]["A5'"] = subgroup_json(trans);
  e["morphisms"]["outer"] = {{"generator_images", perms(outer)}};
  write(dir, "A6.json", e);

  // Two actions on 12 points.
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < a6.generators().size(); ++i) {
    std::vector<Point> img(12);
    for (Point p = 0; p < 6; ++p) {
      img[p] = a6.generators()[i][p];
      img[6 + p] = 6 + outer[i][p];
    }
    gens.push_back(Permutation::from_images(img));
  }
  PermGroup two(12, gens);
  require(two.order() == 360, "two-action A6 order");
  require(inequivalent_by_orbits(two, 0, 6, 6), "two actions inequivalent");
  PermGroup a = with_small_generators(point_stabilizer(two, 0));
  PermGroup b = with_small_generators(point_stabilizer(two, 6));

  // Normalizing permutations: pi = (f on the first orbit, h on the second),
  // possibly swapping the orbits, with f(0) = h(0) = 0.
  std::vector<Point> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Point>> fix0;
  do {
    if (perm[0] == 0) fix0.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto build = [](const std::vector<Point>& f, const std::vector<Point>& h, bool swap) {
    std::vector<Point> img(12);
    for (Point p = 0; p < 6; ++p) {
      img[p] = swap ? 6 + f[p] : f[p];
      img[6 + p] = swap ? h[p] : 6 + h[p];
    }
    return Permutation::from_images(img);
  };
  auto normalizes = [&](const Permutation& pi) {
    for (const auto& x : two.generators())
      if (!two.contains(conjugate(x, pi))) return false;
    return true;
  };
  auto coset_has_involution = [&](const Permutation& pi) {
    bool found = false;
    two.chain().for_each_element([&](const Permutation& x) {
      Permutation y = x * pi;
      if (!y.is_identity() && y.pow(2).is_identity()) found = true;
      return !found;
    });
    return found;
  };
  std::optional<Permutation> sigma, tau, tau_m10;
  for (const auto& f : fix0)
    for (const auto& h : fix0) {
      if (!sigma) {
        Permutation pi = build(f, h, false);
        if (!two.contains(pi) && normalizes(pi)) sigma = pi;
      }
      if (!tau || !tau_m10) {
        Permutation pi = build(f, h, true);
        if (normalizes(pi)) {
          if (coset_has_involution(pi)) {
            if (!tau) tau = pi;
          } else if (!tau_m10) {
            tau_m10 = pi;
          }
        }
      }
    }
  require(sigma && tau && tau_m10, "normalizing permutations found");
  require(same_group(conjugate(a, *tau), b) && same_group(conjugate(b, *tau), a), "tau swaps A and B");
  require(same_group(conjugate(a, *tau_m10), b), "tau_m10 swaps A and B");
  require(same_group(conjugate(a, *sigma), a) && same_group(conjugate(b, *sigma), b), "sigma fixes A and B");

  json t = entry("A6-two-actions", two,
                 "A6 on 12 points: the natural action on 0..5 and the outer-twisted action on 6..11. "
                 "A and B are the stabilizers of 0 and 6. tau and tau_m10 swap the orbits with 0 <-> 6; "
                 "the coset of tau contains involutions and that of tau_m10 does not. sigma preserves "
                 "the orbits, fixes 0 and 6, and lies outside A6. All found by exhaustive search over "
                 "pairs of permutations fixing 0.");
  t["subgroups"]["A"] = subgroup_json(a);
  t["subgroups"]["B"] = subgroup_json(b);
  t["subgroups"]["AnB"] = subgroup_json(with_small_generators(intersection(a, b)));
  add_realized(t, "tau", two, *tau);
  add_realized(t, "tau_m10", two, *tau_m10);
  add_realized(t, "sigma", two, *sigma);
  write(dir, "A6-two-actions.json", t);
}

// ---------------------------------------------------------------- M11, M12

Permutation cyc1(std::vector<std::vector<Point>> c) {
  for (auto& v : c)
    for (auto& x : v) --x;
  return Permutation::from_cycles(24, c);
}

void derive_mathieu(const std::filesystem::path& dir) {
  PermGroup m24(24, {cyc1({{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23}}),
                     cyc1({{3, 17, 10, 7, 9}, {4, 13, 14, 19, 5}, {8, 18, 11, 12, 23}, {15, 20, 22, 21, 16}}),
                     cyc1({{1, 24}, {2, 23}, {3, 12}, {4, 16}, {5, 18}, {6, 10}, {7, 20}, {8, 14}, {9, 21},
                           {11, 17}, {13, 22}, {15, 19}})});
  require(m24.order() == 244823040ull, "|M24|");

  // An octad: the fixed points of an involution fixing 8 points.
  std::uint32_t octad = 0;
  while (!octad) {
    Permutation x = element_of_order(m24, 2);
    std::uint32_t fixed = 0;
    for (Point p = 0; p < 24; ++p)
      if (x[p] == p) fixed |= 1u << p;
    if (std::popcount(fixed) == 8) octad = fixed;
  }
  auto act = [](std::uint32_t mask, const Permutation& g) {
    std::uint32_t out = 0;
    for (Point p = 0; p < 24; ++p)
      if (mask >> p & 1) out |= 1u << g[p];
    return out;
  };
  std::vector<std::uint32_t> octads;
  orbit_stabilizer<std::uint32_t, std::hash<std::uint32_t>>(m24, octad, act, 1000, &octads);
  require(octads.size() == 759, "759 octads");
  // Two octads meeting in two points differ in a dodecad.
  std::uint32_t dodecad = 0;
  for (auto o : octads)
    if (std::popcount(o & octad) == 2) {
      dodecad = o ^ octad;
      break;
    }
  require(std::popcount(dodecad) == 12, "dodecad");

  // Relabel so the dodecad is 0..11 and its complement 12..23.
  std::vector<Point> relabel(24);
  Point in = 0, out = 12;
  for (Point p = 0; p < 24; ++p) relabel[p] = (dodecad >> p & 1) ? in++ : out++;
  Permutation r = Permutation::from_images(relabel);
  PermGroup m24r = conjugate(m24, r);
  m24r.set_known_order(244823040ull);
  std::vector<Point> d(12);
  std::iota(d.begin(), d.end(), 0);
  PermGroup m12 = with_small_generators(setwise_stabilizer(m24r, d));
  require(m12.order() == 95040, "|M12|");
  require(orbits(m12).size() == 2, "M12 has two orbits");

  const std::uint32_t dmask = 0xfff, full = 0xffffff;
  auto pair_act = [&](std::uint32_t mask, const Permutation& g) {
    std::uint32_t img = act(mask, g);
    return std::min(img, full & ~img);
  };
  PermGroup m12_2 = orbit_stabilizer<std::uint32_t, std::hash<std::uint32_t>>(m24r, dmask, pair_act, 5000);
  require(m12_2.order() == 2 * 95040, "|M12:2|");

  // tau maps 0 -> 12 -> 0: h u with u : 0 -> 12 and h in the stabilizer of 0
  // taking 12 to 0^(u^-1).
  const Point p = 0, q = 12;
  Point base[2] = {p, q};
  auto chain = m12_2.chain_with_base(base);
  require(chain->in_orbit(0, q), "M12:2 moves 0 to 12");
  Permutation u = chain->transversal(0, q);
  Point target = u.inverse()[p];
  require(chain->in_orbit(1, target), "two-point transporter exists");
  Permutation tau = chain->transversal(1, target) * u;
  require(tau[p] == q && tau[q] == p, "tau swaps 0 and 12");

  PermGroup a = with_small_generators(point_stabilizer(m12, p));
  PermGroup b = with_small_generators(point_stabilizer(m12, q));
  require(inequivalent_by_orbits(m12, p, q, 12), "M12 actions inequivalent");
  PermGroup ab = intersection(a, b);
  require(ab.order() == 660, "|M11 n M11'| = 660");

  // A PSL2(11) transitive on the dodecad: <involution, element of order 3>.
  PermGroup l2;
  for (;;) {
    PermGroup t(24, {element_of_order(m12, 2), element_of_order(m12, 3)});
    if (t.order() == 660 && orbit(t, 0).size() == 12) {
      l2 = t;
      break;
    }
  }
  require(intersection(a, l2).order() == 55, "|M11 n PSL2(11)| = 55");

  json t = entry("M12-two-actions", m12,
                 "M12 as the setwise stabilizer of a dodecad of M24, relabelled so the dodecad is 0..11. "
                 "The octad is the fixed set of an involution fixing 8 points; the dodecad is the "
                 "symmetric difference of two octads meeting in 2 points. A and B are the stabilizers "
                 "of 0 and 12. tau lies in the stabilizer of {dodecad, complement} and swaps 0 and 12. "
                 "PSL2(11) is a random <involution, order-3 element> of order 660 transitive on 0..11.");
  t["subgroups"]["A"] = subgroup_json(a);
  t["subgroups"]["B"] = subgroup_json(b);
  t["subgroups"]["AnB"] = subgroup_json(with_small_generators(ab));
  t["subgroups"]["PSL2(11)"] = subgroup_json(l2);
  add_realized(t, "tau", m12, tau);
  write(dir, "M12-two-actions.json", t);

  PermGroup m12d = restricted_group(m12, 0, 12);
  require(m12d.order() == 95040, "M12 on the dodecad");
  json e = entry("M12", m12d,
                 "M12 on a dodecad of M24. M11 fixes 0; M11' is the stabilizer of a point off the "
                 "dodecad and is transitive here; PSL2(11) is transitive.");
  e["subgroups"]["M11"] = subgroup_json(restricted_group(a, 0, 12));
  e["subgroups"]["M11'"] = subgroup_json(restricted_group(b, 0, 12));
  e["subgroups"]["PSL2(11)"] = subgroup_json(restricted_group(l2, 0, 12));
  write(dir, "M12.json", e);

  PermGroup m11 = restricted_group(restricted_group(a, 0, 12), 1, 11);
  require(m11.order() == 7920, "|M11|");
  write(dir, "M11.json", entry("M11", m11, "Stabilizer of a point in M12 on a dodecad, on the other 11 points."));

  PermGroup l2d = restricted_group(l2, 0, 12);
  require(l2d.order() == 660, "|PSL2(11)|");
  write(dir, "PSL2-11.json", entry("PSL2(11)", l2d, "The transitive PSL2(11) of M12, on the dodecad."));
}

// ---------------------------------------------------------------- S6 wr S2

void derive_wreath(const std::filesystem::path& dir) {
  auto lift = [](const Permutation& p, int coord) {
    std::vector<Point> im(36);
    for (Point x = 0; x < 6; ++x)
      for (Point y = 0; y < 6; ++y) im[6 * x + y] = coord == 0 ? 6 * p[x] + y : 6 * x + p[y];
    return Permutation::from_images(im);
  };
  std::vector<Point> sw(36);
  for (Point x = 0; x < 6; ++x)
    for (Point y = 0; y < 6; ++y) sw[6 * x + y] = 6 * y + x;
  PermGroup w(36, {lift(Permutation::from_cycles(6, {{0, 1}}), 0),
                   lift(Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}}), 0), Permutation::from_images(sw)});
  require(w.order() == 1036800, "|S6 wr S2|");
  write(dir, "S6wrS2-36.json",
        entry("S6wrS2-36", w, "Product action on 6x6 points, point (x, y) numbered 6x + y."));
}

// ---------------------------------------------------------------- Sp6(2)

int symp(unsigned x, unsigned y) {
  unsigned swapped = ((y & 0x15u) << 1) | ((y & 0x2au) >> 1);
  return std::popcount(x & swapped) & 1;
}
int q0(unsigned x) { return std::popcount(x & (x >> 1) & 0x15u) & 1; }

void derive_sp6(const std::filesystem::path& dir) {
  // Points are the nonzero vectors of GF(2)^6; vector v is point v - 1.
  auto transvection = [](unsigned v) {
    std::vector<Point> img(63);
    for (unsigned x = 1; x < 64; ++x) img[x - 1] = (symp(x, v) ? x ^ v : x) - 1;
    return Permutation::from_images(img);
  };
  std::vector<Permutation> all;
  for (unsigned v = 1; v < 64; ++v) all.push_back(transvection(v));
  PermGroup sp(63, all);
  require(sp.order() == 1451520, "|Sp6(2)|");
  sp = with_small_generators(sp);

  // Quadratic forms polarizing to the symplectic form: Q_a(x) = q0(x) + B(a, x),
  // stored as a bit mask over the points.
  auto form = [](unsigned a) {
    std::uint64_t m = 0;
    for (unsigned x = 1; x < 64; ++x)
      if ((q0(x) ^ symp(a, x)) & 1) m |= 1ull << (x - 1);
    return m;
  };
  auto act = [](std::uint64_t mask, const Permutation& g) {
    std::uint64_t out = 0;
    for (Point p = 0; p < 63; ++p)
      if (mask >> p & 1) out |= 1ull << g[p];
    return out;
  };
  auto stab = [&](unsigned a, std::size_t expect) {
    std::vector<std::uint64_t> orb;
    PermGroup s = orbit_stabilizer<std::uint64_t, std::hash<std::uint64_t>>(sp, form(a), act, 100, &orb);
    require(orb.size() == expect, "form orbit size");
    return with_small_generators(s);
  };
  unsigned minus_a = 0;
  for (unsigned a = 1; a < 64 && !minus_a; ++a)
    if (q0(a)) minus_a = a;
  PermGroup om = stab(minus_a, 28);
  require(om.order() == 51840, "|O6-(2)|");
  PermGroup op;
  for (unsigned a = 0; a < 64; ++a) {
    if (q0(a)) continue;
    PermGroup c = stab(a, 36);
    if (intersection(om, c).order() == 1440) {
      op = c;
      break;
    }
  }
  require(op.order() == 40320, "|O6+(2)| with |O6- n O6+| = 1440");

  PermGroup g2;
  for (;;) {
    PermGroup t(63, {element_of_order(sp, 7), sp.random_element(rng)});
    if (t.order() == 12096) {
      g2 = t;
      break;
    }
  }
  // A conjugate meeting the other two so that the three subgroups factorise.
  CosetSpace cosets(sp, g2);
  require(cosets.index() == 120, "120 conjugates of G2(2)");
  PermGroup chosen;
  for (std::size_t i = 0; i < cosets.index(); ++i) {
    PermGroup c = conjugate(g2, cosets.representative(i));
    c.set_known_order(12096);
    if (intersection(c, om).order() != 432 || intersection(c, op).order() != 336) continue;
    if (intersection(intersection(c, om), op).order() != 12) continue;
    chosen = c;
    break;
  }
  require(chosen.order() == 12096, "G2(2) conjugate found");
  chosen = with_small_generators(chosen);

  json e = entry("Sp6(2)", sp,
                 "Sp6(2) on the 63 nonzero vectors of GF(2)^6, generated by symplectic transvections. "
                 "O6-(2) and O6+(2) stabilize quadratic forms polarizing to the symplectic form (orbits "
                 "of size 28 and 36), chosen with intersection of order 1440. G2(2) is a random "
                 "<order-7 element, element> of order 12096, replaced by the conjugate meeting the "
                 "other two in orders 432, 336 and 12.");
  e["subgroups"]["G2(2)"] = subgroup_json(chosen);
  e["subgroups"]["O6-(2)"] = subgroup_json(om);
  e["subgroups"]["O6+(2)"] = subgroup_json(op);
  write(dir, "Sp6-2.json", e);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: derive_atlas <output-dir>\n";
    return 2;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  try {
    derive_alternating(dir);
    derive_mathieu(dir);
    derive_wreath(dir);
    derive_sp6(dir);
  } catch (const Error& e) {
    std::cerr << "derive_atlas: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
