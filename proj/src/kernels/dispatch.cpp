#include <atomic>
#include <cstdlib>
#include <cstring>

#include "besilab/kernels.hpp"

namespace besilab::kernels {

namespace {

// 0 = automatic, 1 = scalar, 2 = avx2
std::atomic<int> g_forced{0};

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool cpu_has_avx2() {
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
}

Isa active_isa() {
  int f = g_forced.load();
  if (f == 1) return Isa::scalar;
  if (f == 2 && cpu_has_avx2()) return Isa::avx2;
  if (const char* env = std::getenv("BESICOVITCH_LAB_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

void force_isa(std::optional<Isa> isa) {
  g_forced.store(!isa ? 0 : (*isa == Isa::scalar ? 1 : 2));
}

std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& w, Isa isa) {
  if (isa == Isa::avx2 && cpu_has_avx2()) return avx2::masked_product_sum(s0, row, w);
  return scalar::masked_product_sum(s0, row, w);
}

std::uint64_t sign_mismatch_count(const QuadraticProbe& probe, double r, const double* const x[4],
                                  std::size_t n, Isa isa) {
  if (isa == Isa::avx2 && cpu_has_avx2()) return avx2::sign_mismatch_count(probe, r, x, n);
  return scalar::sign_mismatch_count(probe, r, x, n);
}

}  // namespace besilab::kernels
