#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cartdec/kernels.hpp"

namespace cartdec {

using Point = kernels::Point;

// A bijection of {0..degree-1} stored as its image sequence. Products are
// read left to right: x^(a*b) = (x^a)^b.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);

  // Throws InputError unless `images` is a bijection.
  static Permutation from_images(std::vector<Point> images);
  // Cycles are 0-based; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point p) const { return images_[p]; }
  std::span<const Point> images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation& operator*=(const Permutation& rhs);
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  bool is_identity() const;
  std::uint64_t order() const;
  // Smallest moved point, or degree() for the identity.
  Point first_moved() const;
  std::size_t support_size() const;
  std::string cycle_string() const;

  bool operator==(const Permutation& o) const;
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

 private:
  explicit Permutation(std::vector<Point> images, int) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

// g^-1 x g
Permutation conjugate(const Permutation& x, const Permutation& g);
// Commutator x^-1 y^-1 x y.
Permutation commutator(const Permutation& x, const Permutation& y);
// The permutation of degree `degree` acting as `p` on [offset, offset+p.degree()).
Permutation shifted(const Permutation& p, std::size_t offset, std::size_t degree);
// Restriction to [offset, offset+len); the range must be invariant.
Permutation restricted(const Permutation& p, std::size_t offset, std::size_t len);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

}  // namespace cartdec
