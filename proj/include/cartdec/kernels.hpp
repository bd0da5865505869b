#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cartdec::kernels {

using Point = std::uint32_t;

enum class Isa { scalar, avx2 };

// Flat array kernels behind permutation and partition arithmetic. Every entry
// has a scalar reference implementation; faster variants must agree with it
// bit for bit.
struct KernelSet {
  // out[i] = b[a[i]]  (apply a, then b)
  void (*compose)(const Point* a, const Point* b, Point* out, std::size_t n);
  // out[a[i]] = i
  void (*invert)(const Point* a, Point* out, std::size_t n);
  bool (*equal)(const Point* a, const Point* b, std::size_t n);
  bool (*is_identity)(const Point* a, std::size_t n);
  // out[i] = a[i] * radix + b[i]
  void (*combine_labels)(const Point* a, const Point* b, Point radix, std::uint64_t* out,
                         std::size_t n);
};

const KernelSet& scalar_kernels();
// Null when the variant was not compiled in or the CPU lacks it.
const KernelSet* avx2_kernels();

const KernelSet& active();
Isa active_isa();
std::string_view isa_name(Isa isa);
// Forces a variant (tests use this); returns false if it is unavailable.
bool select(Isa isa);

}  // namespace cartdec::kernels
