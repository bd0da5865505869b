#include "cartdec/permutation.hpp"

#include <numeric>
#include <sstream>

#include "cartdec/errors.hpp"

namespace cartdec {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point p : images) {
    if (p >= images.size() || seen[p])
      throw InputError("image sequence is not a bijection of {0.." +
                       std::to_string(images.size()) + "-1}");
    seen[p] = true;
  }
  return Permutation(std::move(images), 0);
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree || used[c[i]]) throw InputError("malformed cycle notation");
      used[c[i]] = true;
      p.images_[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  std::vector<Point> out(images_.size());
  kernels::active().compose(images_.data(), rhs.images_.data(), out.data(), images_.size());
  return Permutation(std::move(out), 0);
}

Permutation& Permutation::operator*=(const Permutation& rhs) {
  *this = *this * rhs;
  return *this;
}

Permutation Permutation::inverse() const {
  std::vector<Point> out(images_.size());
  kernels::active().invert(images_.data(), out.data(), images_.size());
  return Permutation(std::move(out), 0);
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation acc(degree());
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Permutation::is_identity() const {
  return kernels::active().is_identity(images_.data(), images_.size());
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point p = static_cast<Point>(i); !seen[p]; p = images_[p]) {
      seen[p] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

std::size_t Permutation::support_size() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] != i;
  return c;
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    for (Point p = static_cast<Point>(i); !seen[p]; p = images_[p]) {
      if (p != i) os << ' ';
      os << p;
      seen[p] = true;
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

bool Permutation::operator==(const Permutation& o) const {
  return images_.size() == o.images_.size() &&
         kernels::active().equal(images_.data(), o.images_.data(), images_.size());
}

Permutation conjugate(const Permutation& x, const Permutation& g) { return g.inverse() * x * g; }

Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

Permutation shifted(const Permutation& p, std::size_t offset, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < p.degree(); ++i)
    img[offset + i] = static_cast<Point>(offset + p[static_cast<Point>(i)]);
  return Permutation::from_images(std::move(img));
}

Permutation restricted(const Permutation& p, std::size_t offset, std::size_t len) {
  std::vector<Point> img(len);
  for (std::size_t i = 0; i < len; ++i) {
    Point q = p[static_cast<Point>(offset + i)];
    if (q < offset || q >= offset + len) throw InputError("restriction to a non-invariant range");
    img[i] = static_cast<Point>(q - offset);
  }
  return Permutation::from_images(std::move(img));
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  // FNV-1a over the image words.
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cartdec
