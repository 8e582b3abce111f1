#include <immintrin.h>

#include "besilab/kernels.hpp"

// Only these functions are compiled for AVX2; dispatch.cpp calls them after a CPU check.

namespace besilab::kernels::avx2 {

__attribute__((target("avx2"))) std::complex<double> masked_product_sum(double s0, const ProductRow& row,
                                                                       const CellFraction& frac) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d vs0 = _mm256_set1_pd(s0);
  const __m256d hi = _mm256_set1_pd(frac.half_total);
  const __m256d lo = _mm256_set1_pd(-frac.half_total);
  const __m256d vnorm = _mm256_set1_pd(frac.norm);
  __m256d acc_re = zero, acc_im = zero;
  const std::size_t body = row.n & ~std::size_t{3};
  for (std::size_t q = 0; q < body; q += 4) {
    __m256d s = _mm256_add_pd(vs0, _mm256_loadu_pd(row.s + q));
    __m256d w;
    if (frac.dim == 0) {
      w = _mm256_or_pd(_mm256_and_pd(_mm256_cmp_pd(s, zero, _CMP_GT_OQ), one),
                       _mm256_and_pd(_mm256_cmp_pd(s, zero, _CMP_EQ_OQ), half));
    } else {
      __m256d above = _mm256_cmp_pd(s, hi, _CMP_GE_OQ);
      __m256d below = _mm256_cmp_pd(s, lo, _CMP_LE_OQ);
      w = _mm256_and_pd(above, one);
      __m256d mid = _mm256_andnot_pd(_mm256_or_pd(above, below), _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
      if (_mm256_movemask_pd(mid) != 0) {
        __m256d acc = zero;
        for (int k = 0; k < frac.terms; ++k) {
          __m256d t = _mm256_max_pd(_mm256_add_pd(s, _mm256_set1_pd(frac.offset[k])), zero);
          __m256d p = t;
          for (int i = 1; i < frac.dim; ++i) p = _mm256_mul_pd(p, t);
          acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(frac.sign[k]), p));
        }
        w = _mm256_blendv_pd(w, _mm256_mul_pd(vnorm, acc), mid);
      }
    }
    __m256d br = _mm256_loadu_pd(row.b_re + q), bi = _mm256_loadu_pd(row.b_im + q);
    __m256d cr = _mm256_loadu_pd(row.c_re + q), ci = _mm256_loadu_pd(row.c_im + q);
    __m256d pr = _mm256_sub_pd(_mm256_mul_pd(br, cr), _mm256_mul_pd(bi, ci));
    __m256d pi = _mm256_add_pd(_mm256_mul_pd(br, ci), _mm256_mul_pd(bi, cr));
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(w, pr));
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(w, pi));
  }
  alignas(32) double re[4], im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sr = (re[0] + re[1]) + (re[2] + re[3]);
  double si = (im[0] + im[1]) + (im[2] + im[3]);
  for (std::size_t k = body; k < row.n; ++k) {
    double w = frac(s0 + row.s[k]);
    sr += w * (row.b_re[k] * row.c_re[k] - row.b_im[k] * row.c_im[k]);
    si += w * (row.b_re[k] * row.c_im[k] + row.b_im[k] * row.c_re[k]);
  }
  return {sr, si};
}

__attribute__((target("avx2"))) std::uint64_t sign_mismatch_count(const QuadraticProbe& p, double r,
                                                                 const double* const x[4], std::size_t n) {
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vir = _mm256_set1_pd(inv_r), vir2 = _mm256_set1_pd(inv_r2);
  const __m256d f0 = _mm256_set1_pd(p.f0);
  __m256d g[4], a[16];
  for (int i = 0; i < 4; ++i) g[i] = _mm256_set1_pd(p.g[i]);
  for (int i = 0; i < 16; ++i) a[i] = _mm256_set1_pd(p.a[i]);

  std::uint64_t count = 0;
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t k = 0; k < body; k += 4) {
    __m256d xs[4] = {_mm256_loadu_pd(x[0] + k), _mm256_loadu_pd(x[1] + k), _mm256_loadu_pd(x[2] + k),
                     _mm256_loadu_pd(x[3] + k)};
    __m256d gx = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(g[0], xs[0]), _mm256_mul_pd(g[1], xs[1])),
                      _mm256_mul_pd(g[2], xs[2])),
        _mm256_mul_pd(g[3], xs[3]));
    __m256d quad = zero;
    for (int i = 0; i < 4; ++i) {
      __m256d row = _mm256_add_pd(
          _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(a[i * 4 + 0], xs[0]), _mm256_mul_pd(a[i * 4 + 1], xs[1])),
                        _mm256_mul_pd(a[i * 4 + 2], xs[2])),
          _mm256_mul_pd(a[i * 4 + 3], xs[3]));
      quad = _mm256_add_pd(quad, _mm256_mul_pd(xs[i], row));
    }
    __m256d full = _mm256_add_pd(_mm256_add_pd(f0, _mm256_mul_pd(gx, vir)), _mm256_mul_pd(quad, vir2));
    __m256d in_d = _mm256_cmp_pd(full, zero, _CMP_LT_OQ);
    __m256d in_h = _mm256_cmp_pd(gx, zero, _CMP_LT_OQ);
    int bits = _mm256_movemask_pd(_mm256_xor_pd(in_d, in_h));
    count += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  if (body < n) {
    const double* tail[4] = {x[0] + body, x[1] + body, x[2] + body, x[3] + body};
    count += scalar::sign_mismatch_count(p, r, tail, n - body);
  }
  return count;
}

}  // namespace besilab::kernels::avx2
