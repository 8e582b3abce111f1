#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "besilab/errors.hpp"

namespace besilab {

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T, class F>
void kronrod15(F& f, double a, double b, T& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T k = fc * kWgk[7];
  T g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    T s = f(c - dx) + f(c + dx);
    k += s * kWgk[j];
    if (j % 2 == 1) g += s * kWg[j / 2];
  }
  value = k * h;
  err = magnitude<T>((k - g) * h);
}

}  // namespace detail

// Globally adaptive 15-point Gauss-Kronrod over [points[0], points.back()], splitting first at
// every given point. Stops when the summed |K15 - G7| estimate is <= tol.
template <class T, class F>
QuadResult<T> gauss_kronrod(F&& f, std::span<const double> points, double tol, std::size_t max_evals) {
  struct Piece {
    double a, b;
    T value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  QuadResult<T> res;
  if (points.size() < 2) return res;
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature tolerance must be positive");
  std::priority_queue<Piece> heap;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double a = points[i], b = points[i + 1];
    if (!(b > a)) continue;
    Piece p{a, b, T{}, 0.0};
    detail::kronrod15<T>(f, a, b, p.value, p.err);
    res.evaluations += 15;
    total_err += p.err;
    heap.push(p);
  }
  while (total_err > tol && !heap.empty()) {
    if (res.evaluations + 30 > max_evals)
      throw Error(ErrorKind::tolerance_unachievable,
                  "quadrature budget exhausted with error estimate " + std::to_string(total_err));
    Piece p = heap.top();
    heap.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      // Interval cannot be split further in floating point.
      heap.push({p.a, p.b, p.value, 0.0});
      total_err -= p.err;
      res.abs_error += p.err;
      continue;
    }
    Piece l{p.a, m, T{}, 0.0}, r{m, p.b, T{}, 0.0};
    detail::kronrod15<T>(f, l.a, l.b, l.value, l.err);
    detail::kronrod15<T>(f, r.a, r.b, r.value, r.err);
    res.evaluations += 30;
    total_err += l.err + r.err - p.err;
    heap.push(l);
    heap.push(r);
  }
  // Sum in interval order so the result does not depend on heap internals.
  std::vector<Piece> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const Piece& p : all) {
    res.value += p.value;
    res.abs_error += p.err;
  }
  return res;
}

template <class T, class F>
QuadResult<T> gauss_kronrod(F&& f, double a, double b, double tol, std::size_t max_evals) {
  const double pts[2] = {a, b};
  return gauss_kronrod<T>(f, std::span<const double>(pts, 2), tol, max_evals);
}

}  // namespace besilab
