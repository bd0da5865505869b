#include "cartdec/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CARTDEC_HAVE_AVX2_TU 1
#endif

namespace cartdec::kernels {

#ifdef CARTDEC_HAVE_AVX2_TU
namespace {

__attribute__((target("avx2"))) void compose_avx2(const Point* a, const Point* b, Point* out,
                                                  std::size_t n) {
  std::size_t i = 0;
  const int* base = reinterpret_cast<const int*>(b);
  for (; i + 8 <= n; i += 8) {
    __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i v = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = b[a[i]];
}

// AVX2 has no scatter; the scalar loop is already memory bound.
void invert_avx2(const Point* a, Point* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[a[i]] = static_cast<Point>(i);
}

__attribute__((target("avx2"))) bool equal_avx2(const Point* a, const Point* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi32(x, y)) != -1) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

__attribute__((target("avx2"))) bool is_identity_avx2(const Point* a, std::size_t n) {
  std::size_t i = 0;
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi32(x, iota)) != -1) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (a[i] != i) return false;
  return true;
}

__attribute__((target("avx2"))) void combine_labels_avx2(const Point* a, const Point* b,
                                                         Point radix, std::uint64_t* out,
                                                         std::size_t n) {
  std::size_t i = 0;
  const __m256i r = _mm256_set1_epi64x(radix);
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    __m256i y = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    __m256i v = _mm256_add_epi64(_mm256_mul_epu32(x, r), y);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
  }
  for (; i < n; ++i) out[i] = static_cast<std::uint64_t>(a[i]) * radix + b[i];
}

}  // namespace

const KernelSet* avx2_kernels() {
  static const KernelSet set{compose_avx2, invert_avx2, equal_avx2, is_identity_avx2,
                             combine_labels_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &set : nullptr;
}

#else

const KernelSet* avx2_kernels() { return nullptr; }

#endif

}  // namespace cartdec::kernels
