#include "cartdec/kernels.hpp"

namespace cartdec::kernels {
namespace {

void compose_scalar(const Point* a, const Point* b, Point* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = b[a[i]];
}

void invert_scalar(const Point* a, Point* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[a[i]] = static_cast<Point>(i);
}

bool equal_scalar(const Point* a, const Point* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool is_identity_scalar(const Point* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != i) return false;
  return true;
}

void combine_labels_scalar(const Point* a, const Point* b, Point radix, std::uint64_t* out,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint64_t>(a[i]) * radix + b[i];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{compose_scalar, invert_scalar, equal_scalar, is_identity_scalar,
                             combine_labels_scalar};
  return set;
}

}  // namespace cartdec::kernels
