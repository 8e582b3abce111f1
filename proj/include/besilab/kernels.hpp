#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "besilab/domains.hpp"

// Hot inner loops with a scalar reference and an AVX2 variant chosen at runtime.
// Both variants use the same operation order (four interleaved partial sums, no FMA),
// so their results are bit-identical.
namespace besilab::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);
bool cpu_has_avx2();
// Best supported ISA unless BESICOVITCH_LAB_SIMD=scalar or force_isa() says otherwise.
Isa active_isa();
void force_isa(std::optional<Isa> isa);

struct ProductRow {
  const double* s;
  const double* b_re;
  const double* b_im;
  const double* c_re;
  const double* c_im;
  std::size_t n;
};

// Fraction of a grid cell on the positive side of a hyperplane, as a function of the signed
// value s at the cell centre. For an axis box with widths a_i along which s changes, the
// fraction is  norm * sum_k sign_k * max(0, s + offset_k)^dim  inside (-half_total, half_total).
struct CellFraction {
  int dim = 0;  // 0: plain step with 1/2 at zero
  int terms = 0;
  double half_total = 0.0;
  double norm = 0.0;
  double offset[16] = {};
  double sign[16] = {};

  static CellFraction from_widths(const double* widths, int count);
  double operator()(double s) const;
};

// sum_q w(s0 + s[q]) * b[q] * c[q], w the cell fraction.
std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& w, Isa isa);
inline std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& w) {
  return masked_product_sum(s0, row, w, active_isa());
}

struct QuadraticProbe {
  Mat4 a{};
  Vec4 g{};
  double f0 = 0.0;
};

// Number of samples x where [f0 + g.x / r + x^T A x / r^2 < 0] differs from [g.x < 0].
std::uint64_t sign_mismatch_count(const QuadraticProbe& probe, double r, const double* const x[4],
                                  std::size_t n, Isa isa);
inline std::uint64_t sign_mismatch_count(const QuadraticProbe& probe, double r,
                                         const double* const x[4], std::size_t n) {
  return sign_mismatch_count(probe, r, x, n, active_isa());
}

namespace scalar {
std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& w);
std::uint64_t sign_mismatch_count(const QuadraticProbe& probe, double r, const double* const x[4],
                                  std::size_t n);
}  // namespace scalar

namespace avx2 {
std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& w);
std::uint64_t sign_mismatch_count(const QuadraticProbe& probe, double r, const double* const x[4],
                                  std::size_t n);
}  // namespace avx2

}  // namespace besilab::kernels
