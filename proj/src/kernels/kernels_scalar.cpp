#include <algorithm>

#include "besilab/kernels.hpp"

namespace besilab::kernels {

CellFraction CellFraction::from_widths(const double* widths, int count) {
  CellFraction f;
  double amax = 0.0;
  for (int i = 0; i < count; ++i) amax = std::max(amax, std::abs(widths[i]));
  double a[4];
  for (int i = 0; i < count && i < 4; ++i)
    if (std::abs(widths[i]) > 1e-6 * amax) a[f.dim++] = std::abs(widths[i]);
  if (f.dim == 0) return f;
  double prod = 1.0, fact = 1.0;
  for (int i = 0; i < f.dim; ++i) {
    prod *= a[i];
    fact *= i + 1;
    f.half_total += 0.5 * a[i];
  }
  f.norm = 1.0 / (fact * prod);
  f.terms = 1 << f.dim;
  for (int k = 0; k < f.terms; ++k) {
    double off = 0.0;
    int flips = 0;
    for (int i = 0; i < f.dim; ++i) {
      bool low = (k >> i) & 1;
      off += low ? -0.5 * a[i] : 0.5 * a[i];
      flips += low;
    }
    f.offset[k] = off;
    f.sign[k] = (flips % 2) ? -1.0 : 1.0;
  }
  return f;
}

double CellFraction::operator()(double s) const {
  if (dim == 0) return s > 0.0 ? 1.0 : (s == 0.0 ? 0.5 : 0.0);
  if (s >= half_total) return 1.0;
  if (s <= -half_total) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < terms; ++k) {
    double t = std::max(s + offset[k], 0.0);
    double p = t;
    for (int i = 1; i < dim; ++i) p = p * t;
    acc = acc + sign[k] * p;
  }
  return norm * acc;
}

namespace scalar {

std::complex<double> masked_product_sum(double s0, const ProductRow& row, const CellFraction& frac) {
  double re[4] = {0, 0, 0, 0}, im[4] = {0, 0, 0, 0};
  const std::size_t body = row.n & ~std::size_t{3};
  for (std::size_t q = 0; q < body; q += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      std::size_t k = q + l;
      double w = frac(s0 + row.s[k]);
      double pr = row.b_re[k] * row.c_re[k] - row.b_im[k] * row.c_im[k];
      double pi = row.b_re[k] * row.c_im[k] + row.b_im[k] * row.c_re[k];
      re[l] += w * pr;
      im[l] += w * pi;
    }
  }
  double sr = (re[0] + re[1]) + (re[2] + re[3]);
  double si = (im[0] + im[1]) + (im[2] + im[3]);
  for (std::size_t k = body; k < row.n; ++k) {
    double w = frac(s0 + row.s[k]);
    sr += w * (row.b_re[k] * row.c_re[k] - row.b_im[k] * row.c_im[k]);
    si += w * (row.b_re[k] * row.c_im[k] + row.b_im[k] * row.c_re[k]);
  }
  return {sr, si};
}

std::uint64_t sign_mismatch_count(const QuadraticProbe& p, double r, const double* const x[4],
                                  std::size_t n) {
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x0 = x[0][k], x1 = x[1][k], x2 = x[2][k], x3 = x[3][k];
    double gx = ((p.g[0] * x0 + p.g[1] * x1) + p.g[2] * x2) + p.g[3] * x3;
    double quad = 0.0;
    const double xs[4] = {x0, x1, x2, x3};
    for (int i = 0; i < 4; ++i) {
      double row = ((p.a[i * 4 + 0] * x0 + p.a[i * 4 + 1] * x1) + p.a[i * 4 + 2] * x2) + p.a[i * 4 + 3] * x3;
      quad = quad + xs[i] * row;
    }
    double full = (p.f0 + gx * inv_r) + quad * inv_r2;
    count += (full < 0.0) != (gx < 0.0);
  }
  return count;
}

}  // namespace scalar
}  // namespace besilab::kernels
