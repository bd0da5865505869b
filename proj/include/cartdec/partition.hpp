#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cartdec/group.hpp"

namespace cartdec {

// A partition of {0..degree-1}. Stored as canonical block labels: blocks are
// numbered in order of their least element, so equal partitions compare equal.
class Partition {
 public:
  Partition() = default;
  static Partition from_blocks(std::size_t degree, const std::vector<std::vector<Point>>& blocks);
  // Arbitrary labels; only the induced equivalence matters.
  static Partition from_labels(std::span<const std::uint64_t> labels);
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition singletons(std::size_t degree);
  static Partition whole(std::size_t degree);

  std::size_t degree() const { return labels_.size(); }
  std::size_t block_count() const { return count_; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  std::uint32_t block_of(Point p) const { return labels_[p]; }
  std::vector<std::vector<Point>> blocks() const;
  std::vector<Point> block(std::uint32_t b) const;
  // Common block size, or 0 when sizes differ.
  std::size_t uniform_block_size() const;

  Partition image(const Permutation& g) const;
  bool refines(const Partition& coarser) const;
  bool is_singletons() const { return count_ == labels_.size(); }
  bool is_whole() const { return count_ <= 1; }

  bool operator==(const Partition& o) const { return labels_ == o.labels_; }
  bool operator<(const Partition& o) const;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t count_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

// Blocks are the nonempty intersections of one block from each input.
Partition infimum(std::span<const Partition> parts);
// Finest common coarsening.
Partition join(const Partition& a, const Partition& b);

struct CartesianCheck {
  bool ok = false;
  bool degenerate = false;  // index 1, the singleton partition
  std::string reason;
  std::vector<std::uint32_t> selection;  // violating choice of one block per partition
  std::size_t meets = 0;                 // size of its intersection
  explicit operator bool() const { return ok; }
};

CartesianCheck check_cartesian(std::span<const Partition> parts);

class CartesianDecomposition {
 public:
  CartesianDecomposition() = default;
  // Throws InputError with the witness when the axiom fails.
  explicit CartesianDecomposition(std::vector<Partition> parts);

  std::size_t degree() const { return parts_.empty() ? 0 : parts_[0].degree(); }
  std::size_t index() const { return parts_.size(); }
  const std::vector<Partition>& partitions() const { return parts_; }
  const Partition& operator[](std::size_t i) const { return parts_[i]; }
  bool degenerate() const { return parts_.size() == 1 && parts_[0].is_singletons(); }
  // Position of p in the list, if present.
  std::optional<std::size_t> find(const Partition& p) const;
  // Sorted canonically; used for deduplication.
  CartesianDecomposition canonical() const;

  bool operator==(const CartesianDecomposition& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Partition> parts_;
};

struct DecompositionProperties {
  bool invariant = false;
  // When not invariant: generator and partition that leave E.
  std::size_t bad_generator = 0;
  std::size_t bad_partition = 0;
  // Action of each generator on partition indices (when invariant).
  std::vector<std::vector<std::size_t>> action;
  std::vector<std::vector<std::size_t>> orbits;
  bool transitive = false;
  bool homogeneous = false;
  std::size_t m = 0;
};

DecompositionProperties decomposition_properties(const CartesianDecomposition& e,
                                                 const PermGroup& g);

}  // namespace cartdec
