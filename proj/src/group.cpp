#include "cartdec/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_set>

namespace cartdec {

void Limits::check_search(std::size_t degree, std::uint64_t order, const std::string& what) const {
  if (override_guard) return;
  if (degree > max_search_degree)
    throw LimitError(what + ": degree " + std::to_string(degree) + " exceeds search cap " +
                     std::to_string(max_search_degree));
  if (order > max_search_order)
    throw LimitError(what + ": parent order " + std::to_string(order) + " exceeds search cap " +
                     std::to_string(max_search_order));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw LimitError("group order exceeds 64 bits");
  return r;
}

// ---------------------------------------------------------------- chain

namespace {
constexpr std::size_t kCacheWords = std::size_t{1} << 22;
constexpr std::size_t kPassCacheWords = std::size_t{1} << 24;
}  // namespace

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& l : levels_) b.push_back(l.base);
  return b;
}

std::uint64_t StabilizerChain::order() const { return order_from(0); }

std::uint64_t StabilizerChain::order_from(std::size_t level) const {
  std::uint64_t o = 1;
  for (std::size_t i = level; i < levels_.size(); ++i) o = checked_mul(o, levels_[i].orbit.size());
  return o;
}

void StabilizerChain::add_level(Point base) {
  Level l;
  l.base = base;
  l.edge.assign(degree_, kAbsent);
  l.edge[base] = kRoot;
  l.orbit.push_back(base);
  levels_.push_back(std::move(l));
}

Point StabilizerChain::parent(std::size_t i, Point p) const {
  const Level& l = levels_[i];
  return strong_inv_[l.gens[static_cast<std::size_t>(l.edge[p])]][p];
}

void StabilizerChain::extend_orbit(std::size_t i, std::size_t local_gen) {
  Level& l = levels_[i];
  l.cached.clear();
  const Permutation& s = strong_[l.gens[local_gen]];
  const std::size_t old = l.orbit.size();
  for (std::size_t k = 0; k < old; ++k) {
    Point p = s[l.orbit[k]];
    if (l.edge[p] == kAbsent) {
      l.edge[p] = static_cast<std::int32_t>(local_gen);
      l.orbit.push_back(p);
    }
  }
  for (std::size_t k = old; k < l.orbit.size(); ++k) {
    for (std::size_t g = 0; g < l.gens.size(); ++g) {
      Point p = strong_[l.gens[g]][l.orbit[k]];
      if (l.edge[p] == kAbsent) {
        l.edge[p] = static_cast<std::int32_t>(g);
        l.orbit.push_back(p);
      }
    }
  }
}

void StabilizerChain::recompute_orbit(std::size_t i) {
  Level& l = levels_[i];
  l.cached.clear();
  for (Point p : l.orbit) l.edge[p] = kAbsent;
  l.orbit.assign(1, l.base);
  l.edge[l.base] = kRoot;
  for (std::size_t k = 0; k < l.orbit.size(); ++k)
    for (std::size_t g = 0; g < l.gens.size(); ++g) {
      Point p = strong_[l.gens[g]][l.orbit[k]];
      if (l.edge[p] == kAbsent) {
        l.edge[p] = static_cast<std::int32_t>(g);
        l.orbit.push_back(p);
      }
    }
}

void StabilizerChain::add_strong(const Permutation& h, std::size_t upto, std::size_t window) {
  if (upto == levels_.size()) {
    Point b = static_cast<Point>(degree_);
    for (std::size_t p = 0; p < std::min(degree_, window); ++p)
      if (h[static_cast<Point>(p)] != p) {
        b = static_cast<Point>(p);
        break;
      }
    if (b == degree_)
      throw InputError("group element fixes every point of the base window; action not faithful there");
    add_level(b);
  }
  strong_.push_back(h);
  strong_inv_.push_back(h.inverse());
  const std::size_t idx = strong_.size() - 1;
  for (std::size_t l = 0; l <= upto; ++l) {
    levels_[l].gens.push_back(idx);
    extend_orbit(l, levels_[l].gens.size() - 1);
  }
}

Permutation StabilizerChain::transversal(std::size_t i, Point p) const {
  const Level& l = levels_[i];
  if (l.edge[p] == kAbsent) throw InputError("point not in basic orbit");
  if (!l.cached.empty()) return l.cached[l.position[p]];
  std::vector<std::size_t> path;
  while (l.edge[p] != kRoot) {
    path.push_back(l.gens[static_cast<std::size_t>(l.edge[p])]);
    p = parent(i, p);
  }
  Permutation u(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = u * strong_[*it];
  return u;
}

std::vector<Permutation> StabilizerChain::level_generators(std::size_t i) const {
  std::vector<Permutation> out;
  if (i >= levels_.size()) return out;
  for (std::size_t idx : levels_[i].gens) out.push_back(strong_[idx]);
  return out;
}

StabilizerChain::Sift StabilizerChain::sift(Permutation g, std::size_t from) const {
  if (g.degree() != degree_) throw InputError("degree mismatch in sift");
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& l = levels_[i];
    Point b = g[l.base];
    if (l.edge[b] == kAbsent) return {std::move(g), i};
    if (!l.cached.empty()) {
      g = g * l.cached[l.position[b]].inverse();
    } else {
      while (l.edge[b] != kRoot) {
        std::size_t s = l.gens[static_cast<std::size_t>(l.edge[b])];
        g = g * strong_inv_[s];
        b = strong_inv_[s][b];
      }
    }
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw InputError("degree mismatch in membership test");
  Sift s = sift(g);
  return s.level == levels_.size() && s.residue.is_identity();
}

Permutation StabilizerChain::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const auto& orb = levels_[i].orbit;
    Point p = orb[std::uniform_int_distribution<std::size_t>(0, orb.size() - 1)(rng)];
    g = g * transversal(i, p);
  }
  return g;
}

void StabilizerChain::for_each_element(const std::function<bool(const Permutation&)>& fn) const {
  std::vector<std::vector<Permutation>> trans(levels_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i)
    for (Point p : levels_[i].orbit) trans[i].push_back(transversal(i, p));
  bool go = true;
  std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t i,
                                                                 const Permutation& acc) {
    if (!go) return;
    if (i == 0) {
      go = fn(acc);
      return;
    }
    for (const auto& u : trans[i - 1]) {
      rec(i - 1, acc * u);
      if (!go) return;
    }
  };
  rec(levels_.size(), Permutation(degree_));
}

void StabilizerChain::finalize_cache() {
  for (auto& l : levels_) {
    if (l.orbit.size() * degree_ > kCacheWords) continue;
    l.position.assign(degree_, UINT32_MAX);
    std::vector<Permutation> cached(l.orbit.size());
    for (std::size_t k = 0; k < l.orbit.size(); ++k) l.position[l.orbit[k]] = static_cast<std::uint32_t>(k);
    cached[0] = Permutation(degree_);
    for (std::size_t k = 1; k < l.orbit.size(); ++k) {
      Point p = l.orbit[k];
      std::size_t s = l.gens[static_cast<std::size_t>(l.edge[p])];
      Point q = strong_inv_[s][p];
      cached[k] = cached[l.position[q]] * strong_[s];
    }
    l.cached = std::move(cached);
  }
}

void StabilizerChain::sift_random(const std::function<Permutation(std::mt19937_64&)>& draw,
                                  std::mt19937_64& rng, std::size_t window,
                                  std::optional<std::uint64_t> target, std::size_t patience) {
  std::size_t quiet = 0;
  while (quiet < patience) {
    if (target) {
      std::uint64_t o = order();
      if (o > *target)
        throw InputError("generators produce order " + std::to_string(o) + " above the claimed " +
                         std::to_string(*target));
      if (o == *target) {
        // A claim below the true order stops the chain early; further random
        // elements then fail to sift with probability at least 1/2 each.
        bool grew = false;
        for (int i = 0; i < 20 && !grew; ++i) {
          Sift s = sift(draw(rng));
          if (!s.residue.is_identity()) {
            add_strong(s.residue, s.level, window);
            grew = true;
          }
        }
        if (!grew) return;
        continue;
      }
    }
    Sift s = sift(draw(rng));
    if (!s.residue.is_identity()) {
      add_strong(s.residue, s.level, window);
      quiet = 0;
    } else {
      ++quiet;
    }
  }
}

bool StabilizerChain::schreier_pass(std::size_t window) {
  bool changed = false;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    const std::size_t li = static_cast<std::size_t>(i);
    bool restarted = false;
    const std::size_t osize = levels_[li].orbit.size();
    std::vector<Permutation> u;
    std::vector<std::uint32_t> pos;
    const bool cache = osize * degree_ <= kPassCacheWords;
    if (cache) {
      u.resize(osize);
      pos.assign(degree_, UINT32_MAX);
      for (std::size_t k = 0; k < osize; ++k) pos[levels_[li].orbit[k]] = static_cast<std::uint32_t>(k);
      u[0] = Permutation(degree_);
      for (std::size_t k = 1; k < osize; ++k) {
        Point p = levels_[li].orbit[k];
        std::size_t s = levels_[li].gens[static_cast<std::size_t>(levels_[li].edge[p])];
        u[k] = u[pos[strong_inv_[s][p]]] * strong_[s];
      }
    }
    auto trans = [&](Point p) { return cache ? u[pos[p]] : transversal(li, p); };
    for (std::size_t k = 0; k < osize && !restarted; ++k) {
      const Point p = levels_[li].orbit[k];
      const Permutation up = trans(p);
      const std::size_t ngens = levels_[li].gens.size();
      for (std::size_t lg = 0; lg < ngens; ++lg) {
        const Permutation& s = strong_[levels_[li].gens[lg]];
        Point q = s[p];
        if (levels_[li].edge[q] == static_cast<std::int32_t>(lg) && parent(li, q) == p) continue;
        Sift r = sift(up * s * trans(q).inverse(), li + 1);
        if (!r.residue.is_identity()) {
          add_strong(r.residue, r.level, window);
          changed = true;
          i = static_cast<std::ptrdiff_t>(r.level);
          restarted = true;
          break;
        }
      }
    }
    if (!restarted) --i;
  }
  return changed;
}

StabilizerChain StabilizerChain::build(std::size_t degree, const std::vector<Permutation>& gens,
                                       const Options& opts) {
  StabilizerChain c;
  c.degree_ = degree;
  std::vector<bool> used(degree, false);
  for (Point b : opts.base_prefix) {
    if (b >= degree || used[b]) throw InputError("invalid base prefix");
    used[b] = true;
    c.add_level(b);
  }
  for (const auto& g : gens) {
    if (g.degree() != degree) throw InputError("generator degree mismatch");
    Sift s = c.sift(g);
    if (!s.residue.is_identity()) c.add_strong(s.residue, s.level, opts.window);
  }
  if (!c.strong_.empty()) {
    std::mt19937_64 rng(opts.seed);
    std::function<Permutation(std::mt19937_64&)> draw = opts.sampler;
    std::shared_ptr<RandomSource> src;
    if (!draw) {
      src = std::make_shared<RandomSource>(degree, gens, opts.seed);
      draw = [src](std::mt19937_64&) { return src->next(); };
    }
    c.sift_random(draw, rng, opts.window, opts.known_order, opts.known_order ? 400 : 30);
    if (!(opts.known_order && c.order() == *opts.known_order)) c.schreier_pass(opts.window);
  }
  if (opts.known_order && c.order() != *opts.known_order)
    throw InputError("generated group has order " + std::to_string(c.order()) +
                     ", not the claimed " + std::to_string(*opts.known_order));
  c.finalize_cache();
  return c;
}

std::optional<StabilizerChain> StabilizerChain::try_build_to_order(
    std::size_t degree, const std::vector<Permutation>& gens, std::uint64_t target,
    const Options& opts, std::size_t patience) {
  StabilizerChain c;
  c.degree_ = degree;
  for (Point b : opts.base_prefix) c.add_level(b);
  for (const auto& g : gens) {
    Sift s = c.sift(g);
    if (!s.residue.is_identity()) c.add_strong(s.residue, s.level, opts.window);
  }
  if (!c.strong_.empty()) {
    std::mt19937_64 rng(opts.seed);
    auto src = std::make_shared<RandomSource>(degree, gens, opts.seed);
    auto draw = opts.sampler ? opts.sampler
                             : std::function<Permutation(std::mt19937_64&)>(
                                   [src](std::mt19937_64&) { return src->next(); });
    c.sift_random(draw, rng, opts.window, target, patience);
  }
  if (c.order() != target) return std::nullopt;
  c.finalize_cache();
  return c;
}

// ---------------------------------------------------------------- random

RandomSource::RandomSource(std::size_t degree, const std::vector<Permutation>& gens,
                           std::uint64_t seed)
    : acc_(degree), rng_(seed) {
  for (const auto& g : gens)
    if (!g.is_identity()) state_.push_back(g);
  if (state_.empty()) return;
  const std::size_t base = state_.size();
  while (state_.size() < std::max<std::size_t>(10, base)) state_.push_back(state_[state_.size() % base]);
  for (int i = 0; i < 60; ++i) next();
}

Permutation RandomSource::next() {
  if (state_.empty()) return acc_;
  std::uniform_int_distribution<std::size_t> pick(0, state_.size() - 1);
  std::size_t a = pick(rng_), b = pick(rng_);
  while (b == a) b = pick(rng_);
  const bool inv = rng_() & 1;
  if (rng_() & 1)
    state_[a] = state_[a] * (inv ? state_[b].inverse() : state_[b]);
  else
    state_[a] = (inv ? state_[b].inverse() : state_[b]) * state_[a];
  acc_ = acc_ * state_[a];
  return acc_;
}

// ---------------------------------------------------------------- group

struct PermGroup::Shared {
  std::recursive_mutex mutex;
  std::shared_ptr<const StabilizerChain> chain;
  std::map<std::pair<std::vector<Point>, std::size_t>, std::shared_ptr<const StabilizerChain>>
      by_base;
  std::optional<std::uint64_t> known;
};

PermGroup::PermGroup() : shared_(std::make_shared<Shared>()) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens, std::string name)
    : degree_(degree), name_(std::move(name)), shared_(std::make_shared<Shared>()) {
  for (auto& g : gens) {
    if (g.degree() != degree)
      throw InputError("generator of degree " + std::to_string(g.degree()) +
                       " in a group of degree " + std::to_string(degree));
  }
  gens_ = tidy_generators(std::move(gens));
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

void PermGroup::set_known_order(std::uint64_t order) const {
  std::lock_guard lock(shared_->mutex);
  if (shared_->chain && shared_->chain->order() != order)
    throw InputError("claimed order " + std::to_string(order) + " contradicts computed order " +
                     std::to_string(shared_->chain->order()));
  shared_->known = order;
}

std::optional<std::uint64_t> PermGroup::known_order() const {
  std::lock_guard lock(shared_->mutex);
  if (shared_->chain) return shared_->chain->order();
  return shared_->known;
}

const StabilizerChain& PermGroup::chain() const {
  std::lock_guard lock(shared_->mutex);
  if (!shared_->chain) {
    StabilizerChain::Options opts;
    opts.known_order = shared_->known;
    shared_->chain = std::make_shared<const StabilizerChain>(
        StabilizerChain::build(degree_, gens_, opts));
  }
  return *shared_->chain;
}

void PermGroup::adopt_chain(std::shared_ptr<const StabilizerChain> chain) const {
  std::lock_guard lock(shared_->mutex);
  if (!shared_->chain) shared_->chain = std::move(chain);
}

std::shared_ptr<const StabilizerChain> PermGroup::chain_with_base(std::span<const Point> prefix,
                                                                  std::size_t window) const {
  std::lock_guard lock(shared_->mutex);
  std::vector<Point> key(prefix.begin(), prefix.end());
  auto it = shared_->by_base.find({key, window});
  if (it != shared_->by_base.end()) return it->second;
  StabilizerChain::Options opts;
  opts.base_prefix = key;
  opts.window = window;
  if (shared_->chain) {
    opts.known_order = shared_->chain->order();
    auto base = shared_->chain;
    opts.sampler = [base](std::mt19937_64& rng) { return base->random_element(rng); };
  } else {
    opts.known_order = shared_->known;
  }
  auto built = std::make_shared<const StabilizerChain>(StabilizerChain::build(degree_, gens_, opts));
  if (!shared_->known) shared_->known = built->order();
  if (shared_->by_base.size() > 32) shared_->by_base.clear();
  shared_->by_base.emplace(std::make_pair(key, window), built);
  return built;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_)
    throw InputError("membership test with a permutation of degree " + std::to_string(g.degree()) +
                     " in a group of degree " + std::to_string(degree_));
  if (gens_.empty()) return g.is_identity();
  return chain().contains(g);
}

bool PermGroup::is_trivial() const { return gens_.empty(); }

std::vector<Permutation> tidy_generators(std::vector<Permutation> gens) {
  std::vector<Permutation> out;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (auto& g : gens) {
    if (g.is_identity() || !seen.insert(g).second) continue;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Point> orbit(const PermGroup& g, Point p) {
  if (p >= g.degree())
    throw InputError("point " + std::to_string(p) + " out of range for degree " +
                     std::to_string(g.degree()));
  std::vector<Point> orb{p};
  std::vector<bool> seen(g.degree(), false);
  seen[p] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (const auto& s : g.generators()) {
      Point q = s[orb[k]];
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<Point>> orbits(const PermGroup& g) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(g.degree(), false);
  for (Point p = 0; p < g.degree(); ++p) {
    if (seen[p]) continue;
    auto o = orbit(g, p);
    for (Point q : o) seen[q] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool is_transitive(const PermGroup& g) {
  return g.degree() <= 1 || orbit(g, 0).size() == g.degree();
}

bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  if (h.degree() != g.degree()) return false;
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return is_subgroup(a, b) && (a.order() == b.order());
}

bool is_normal(const PermGroup& n, const PermGroup& g) {
  for (const auto& x : n.generators())
    for (const auto& s : g.generators())
      if (!n.contains(conjugate(x, s))) return false;
  return true;
}

PermGroup join(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in join");
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), std::move(gens));
}

PermGroup conjugate(const PermGroup& h, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& x : h.generators()) gens.push_back(conjugate(x, g));
  PermGroup out(h.degree(), std::move(gens));
  if (auto o = h.known_order()) out.set_known_order(*o);
  return out;
}

PermGroup point_stabilizer(const PermGroup& g, Point p) {
  Point pts[1] = {p};
  return pointwise_stabilizer(g, pts);
}

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points) {
  for (Point p : points)
    if (p >= g.degree()) throw InputError("point out of range");
  if (g.is_trivial()) return PermGroup::trivial(g.degree());
  auto c = g.chain_with_base(points);
  PermGroup out(g.degree(), c->level_generators(points.size()));
  out.set_known_order(c->order_from(points.size()));
  return out;
}

PermGroup stabilizer_from_schreier(const PermGroup& g, std::size_t orbit_size,
                                   const std::function<Permutation(std::mt19937_64&)>& schreier_gen,
                                   const std::function<std::vector<Permutation>()>& all_schreier) {
  const std::uint64_t go = g.order();
  if (go % orbit_size != 0) throw InputError("orbit length does not divide the group order");
  const std::uint64_t target = go / orbit_size;
  if (target == 1) return PermGroup::trivial(g.degree());
  std::mt19937_64 rng(0x57ab11e5ull);
  std::vector<Permutation> gens;
  for (int round = 0; round < 6; ++round) {
    for (int k = 0; k < 6; ++k) {
      Permutation y = schreier_gen(rng);
      if (!y.is_identity()) gens.push_back(std::move(y));
    }
    gens = tidy_generators(std::move(gens));
    if (gens.empty()) continue;
    auto c = StabilizerChain::try_build_to_order(g.degree(), gens, target, {}, 80);
    if (c) {
      PermGroup out(g.degree(), gens);
      out.adopt_chain(std::make_shared<const StabilizerChain>(std::move(*c)));
      return out;
    }
  }
  PermGroup out(g.degree(), all_schreier());
  out.set_known_order(target);
  return out;
}

}  // namespace cartdec
