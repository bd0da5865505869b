#include "cartdec/product.hpp"

#include <algorithm>
#include <numeric>

#include "cartdec/blocks.hpp"
#include "cartdec/normal.hpp"

namespace cartdec {
namespace {

std::vector<Point> moved_points(const PermGroup& g) {
  std::vector<bool> moved(g.degree(), false);
  for (const auto& x : g.generators())
    for (Point p = 0; p < g.degree(); ++p)
      if (x[p] != p) moved[p] = true;
  std::vector<Point> out;
  for (Point p = 0; p < g.degree(); ++p)
    if (moved[p]) out.push_back(p);
  return out;
}

void check_indices(std::span<const std::size_t> idx, std::size_t k) {
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= k) throw InputError("factor index " + std::to_string(idx[a]) + " out of range");
    if (a && idx[a] <= idx[a - 1]) throw InputError("factor index set must be strictly increasing");
  }
}

}  // namespace

DirectFactorisation DirectFactorisation::of(const PermGroup& m) {
  if (m.is_trivial()) throw InputError("direct factors of the trivial group");
  if (is_abelian(m)) throw UnsupportedInput("abelian plinth: no non-abelian simple direct factors");
  return from_factors(m, simple_factors(m, m));
}

DirectFactorisation DirectFactorisation::from_factors(const PermGroup& m,
                                                      std::vector<PermGroup> factors) {
  if (factors.empty()) throw InputError("no direct factors given");
  std::uint64_t prod = 1;
  for (const auto& t : factors) {
    if (t.degree() != m.degree()) throw InputError("factor degree differs from the group");
    if (!is_normal(t, m)) throw UnsupportedInput("a proposed direct factor is not normal");
    prod = checked_mul(prod, t.order());
  }
  if (prod != m.order())
    throw UnsupportedInput("factor orders multiply to " + std::to_string(prod) + ", not |M| = " +
                           std::to_string(m.order()));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].order() != factors[0].order())
      throw UnsupportedInput("direct factors of different orders");
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      for (const auto& a : factors[i].generators())
        for (const auto& b : factors[j].generators())
          if (!(a * b == b * a)) throw UnsupportedInput("direct factors do not commute");
  }
  if (!certify_simple(factors[0]).simple) throw UnsupportedInput("direct factor is not simple");
  std::sort(factors.begin(), factors.end(), [](const PermGroup& a, const PermGroup& b) {
    return moved_points(a) < moved_points(b);
  });
  DirectFactorisation d;
  d.m_ = m;
  d.factors_ = std::move(factors);
  d.build_prep();
  return d;
}

void DirectFactorisation::build_prep() {
  const std::size_t k = factors_.size();
  const std::uint64_t t_order = factors_[0].order();
  Limits lim;
  lim.override_guard = true;
  for (std::size_t i = 0; i < k; ++i) {
    const PermGroup& t = factors_[i];
    // Smallest orbit with a nontrivial (hence faithful) action.
    std::vector<Point> orb;
    for (auto& o : orbits(t))
      if (o.size() > 1 && (orb.empty() || o.size() < orb.size())) orb = std::move(o);
    const Point p = orb[0];
    PermGroup local = restrict_to_orbit(t, orb);
    std::vector<Point> block{0};
    std::size_t best = orb.size();
    for (const auto& sys : all_block_systems(local))
      if (sys.block_count() < best) {
        best = sys.block_count();
        block = sys.block(sys.block_of(0));
      }
    Point b0[1] = {p};
    auto chain = t.chain_with_base(b0);
    std::vector<Permutation> gens = chain->level_generators(1);
    for (Point q : block)
      if (q != 0) gens.push_back(chain->transversal(0, orb[q]));
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) gens.insert(gens.end(), factors_[j].generators().begin(), factors_[j].generators().end());
    PermGroup h(m_.degree(), tidy_generators(std::move(gens)));
    std::uint64_t x_order = t_order / orb.size() * block.size();
    h.set_known_order(checked_mul(m_.order() / t_order, x_order));
    spaces_.push_back(std::make_shared<CosetSpace>(m_, h, lim));
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    offsets_.push_back(total);
    total += spaces_[i]->index();
  }
  std::vector<Permutation> gens;
  for (const auto& x : m_.generators()) gens.push_back(to_prep(x));
  prep_ = PermGroup(total, std::move(gens));
  prep_.set_known_order(m_.order());
  back_ = std::make_shared<GroupMorphism>(GroupMorphism::trusted(prep_, m_, m_.generators()));
}

Permutation DirectFactorisation::to_prep(const Permutation& x) const {
  std::vector<Point> img(offsets_.back() + spaces_.back()->index());
  for (std::size_t i = 0; i < spaces_.size(); ++i) {
    Permutation y = spaces_[i]->image_of(x);
    for (Point p = 0; p < y.degree(); ++p) img[offsets_[i] + p] = static_cast<Point>(offsets_[i] + y[p]);
  }
  return Permutation::from_images(std::move(img));
}

Permutation DirectFactorisation::from_prep(const Permutation& y) const { return (*back_)(y); }

PermGroup DirectFactorisation::to_prep(const PermGroup& k) const {
  std::vector<Permutation> gens;
  for (const auto& x : k.generators()) gens.push_back(to_prep(x));
  PermGroup out(prep_.degree(), std::move(gens));
  if (auto o = k.known_order()) out.set_known_order(*o);
  return out;
}

PermGroup DirectFactorisation::projection(std::span<const std::size_t> idx, const PermGroup& k) const {
  check_indices(idx, factors_.size());
  if (idx.empty()) return PermGroup::trivial(1);
  std::size_t total = 0;
  for (auto i : idx) total += length(i);
  std::vector<Permutation> gens;
  for (const auto& x : k.generators()) {
    Permutation y = to_prep(x);
    std::vector<Point> img(total);
    std::size_t at = 0;
    for (auto i : idx) {
      for (std::size_t p = 0; p < length(i); ++p)
        img[at + p] = static_cast<Point>(at + y[static_cast<Point>(offsets_[i] + p)] - offsets_[i]);
      at += length(i);
    }
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return PermGroup(total, std::move(gens));
}

PermGroup DirectFactorisation::projection(std::size_t i, const PermGroup& k) const {
  std::size_t idx[1] = {i};
  return projection(idx, k);
}

PermGroup DirectFactorisation::projection_in_m(std::size_t i, const PermGroup& k) const {
  if (i >= factors_.size()) throw InputError("factor index out of range");
  std::vector<Permutation> gens;
  for (const auto& x : k.generators()) {
    Permutation y = to_prep(x);
    std::vector<Point> img(prep_.degree());
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t p = offsets_[i]; p < offsets_[i] + length(i); ++p) img[p] = y[static_cast<Point>(p)];
    gens.push_back(from_prep(Permutation::from_images(std::move(img))));
  }
  PermGroup out(m_.degree(), tidy_generators(std::move(gens)));
  out.set_known_order(projection(i, k).order());
  return out;
}

PermGroup DirectFactorisation::restrict_to(std::span<const std::size_t> idx, const PermGroup& k) const {
  check_indices(idx, factors_.size());
  std::vector<bool> keep(factors_.size(), false);
  for (auto i : idx) keep[i] = true;
  std::vector<Point> fixed;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!keep[i])
      for (std::size_t p = 0; p < length(i); ++p) fixed.push_back(static_cast<Point>(offsets_[i] + p));
  PermGroup kp = to_prep(k);
  kp.set_known_order(k.order());
  PermGroup sub = pointwise_stabilizer(kp, fixed);
  std::vector<Permutation> gens;
  for (const auto& y : sub.generators()) gens.push_back(from_prep(y));
  PermGroup out(m_.degree(), std::move(gens));
  out.set_known_order(sub.order());
  return out;
}

bool is_subdirect(const DirectFactorisation& d, const PermGroup& k) {
  for (std::size_t i = 0; i < d.k(); ++i)
    if (d.projection(i, k).order() != d.factor_order()) return false;
  return true;
}

namespace {

// Classes of indices in `idx` whose pairwise joint projection is a diagonal.
std::vector<std::vector<std::size_t>> diagonal_classes(const DirectFactorisation& d,
                                                       const PermGroup& k,
                                                       const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> cls(idx.size());
  std::iota(cls.begin(), cls.end(), 0);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (cls[a] != a) continue;
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (cls[b] != b) continue;
      std::size_t pair[2] = {idx[a], idx[b]};
      if (d.projection(pair, k).order() == d.factor_order()) cls[b] = a;
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (cls[a] != a) continue;
    std::vector<std::size_t> c;
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (cls[b] == a) c.push_back(idx[b]);
    out.push_back(std::move(c));
  }
  return out;
}

bool full_strip(const DirectFactorisation& d, const PermGroup& x, const std::vector<std::size_t>& supp) {
  if (x.order() != d.factor_order()) return false;
  for (auto i : supp)
    if (d.projection(i, x).order() != d.factor_order()) return false;
  return true;
}

}  // namespace

std::vector<Strip> scott_decompose(const DirectFactorisation& d, const PermGroup& h) {
  if (!is_subdirect(d, h)) throw InputError("Scott decomposition needs a subdirect subgroup");
  std::vector<std::size_t> all(d.k());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Strip> out;
  std::uint64_t prod = 1;
  for (auto& supp : diagonal_classes(d, h, all)) {
    PermGroup x = d.restrict_to(supp, h);
    if (!full_strip(d, x, supp))
      throw TheoremViolation("subdirect subgroup is not a product of full strips",
                             {{"support", supp}, {"component_order", x.order()}});
    prod = checked_mul(prod, x.order());
    out.push_back({std::move(supp), std::move(x)});
  }
  if (prod != h.order())
    throw TheoremViolation("strip components do not multiply to the subgroup order",
                           {{"product", prod}, {"order", h.order()}});
  return out;
}

std::vector<Strip> strips_involved(const DirectFactorisation& d, const PermGroup& k) {
  std::vector<std::size_t> full;
  for (std::size_t i = 0; i < d.k(); ++i)
    if (d.projection(i, k).order() == d.factor_order()) full.push_back(i);
  std::vector<Strip> out;
  for (auto& supp : diagonal_classes(d, k, full)) {
    if (supp.size() < 2) continue;
    PermGroup x = d.restrict_to(supp, k);
    if (!full_strip(d, x, supp)) continue;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < d.k(); ++i)
      if (!std::binary_search(supp.begin(), supp.end(), i)) rest.push_back(i);
    std::uint64_t rest_order = rest.empty() ? 1 : d.projection(rest, k).order();
    if (checked_mul(x.order(), rest_order) != k.order()) continue;
    out.push_back({std::move(supp), std::move(x)});
  }
  return out;
}

}  // namespace cartdec
