#include "cartdec/kernels.hpp"

#include <atomic>

namespace cartdec::kernels {
namespace {

Isa detect() { return avx2_kernels() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const KernelSet& active() {
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return *avx2_kernels();
  return scalar_kernels();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool select(Isa isa) {
  if (isa == Isa::avx2 && !avx2_kernels()) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

}  // namespace cartdec::kernels
