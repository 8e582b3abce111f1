#include <algorithm>
#include <cmath>
#include <limits>

#include "besilab/errors.hpp"
#include "besilab/forms.hpp"
#include "besilab/quadrature.hpp"

namespace besilab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// {t : x - t w in P} for convex P.
void line_clip(Vec2 x, Vec2 w, const ConvexPolygon& p, double& lo, double& hi) {
  lo = -kInf;
  hi = kInf;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Vec2 q = p[k];
    Vec2 e = p[(k + 1) % p.size()] - q;
    double f0 = cross(e, x - q);
    double f1 = -cross(e, w);
    if (f1 == 0.0) {
      if (f0 < 0.0) {
        lo = kInf;
        hi = -kInf;
        return;
      }
      continue;
    }
    double s = -f0 / f1;
    if (f1 > 0.0) {
      lo = std::max(lo, s);
    } else {
      hi = std::min(hi, s);
    }
  }
}

// Antiderivative of ln|y|.
double ylogy(double y) { return y == 0.0 ? 0.0 : y * std::log(std::abs(y)) - y; }

double safe_log_abs(double c) { return std::log(std::max(std::abs(c), 1e-300)); }

// Integral over tau of | ln|b| - ln|a| | with a = max(tau - d, A), b = min(tau + d, B),
// restricted to a < b. Every piece has a and b constant or of slope one, so each piece
// integrates in closed form once it is split where the sign of ln|b/a| can change.
double inner_tau_integral(double A, double B, double d) {
  if (!(A < B)) return 0.0;
  const double lo = A - d, hi = B + d;
  double cuts[] = {lo, hi, A + d, B - d, d, -d, 0.0, d - B, -A - d};
  std::vector<double> c;
  for (double x : cuts)
    if (x >= lo && x <= hi) c.push_back(x);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    double l = c[i], r = c[i + 1];
    double m = 0.5 * (l + r);
    bool a_const = m - d < A;
    bool b_const = m + d > B;
    double am = a_const ? A : m - d;
    double bm = b_const ? B : m + d;
    if (!(am < bm)) continue;
    double ib = b_const ? (r - l) * safe_log_abs(B) : ylogy(r + d) - ylogy(l + d);
    double ia = a_const ? (r - l) * safe_log_abs(A) : ylogy(r - d) - ylogy(l - d);
    double sign = std::abs(bm) >= std::abs(am) ? 1.0 : -1.0;
    total += sign * (ib - ia);
  }
  return total;
}

}  // namespace

double s_w_value(Vec2 x, const ConvexPolygon& r1, const ConvexPolygon& r2, Vec2 w1, Vec2 w2) {
  if (w1 == w2) throw Error(ErrorKind::invalid_argument, "w1 and w2 must differ");
  if (r1.empty() || r2.empty()) return 0.0;
  double lo1, hi1, lo2, hi2;
  line_clip(x, w1, r1, lo1, hi1);
  line_clip(x, w2, r2, lo2, hi2);
  double a = std::max(lo1, lo2), b = std::min(hi1, hi2);
  if (!(a < b)) return 0.0;
  if (a == 0.0 || b == 0.0)
    throw Error(ErrorKind::unbounded_value, "t-interval ends at t = 0; S_w is unbounded here");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorKind::unbounded_value, "t-interval is unbounded");
  return std::log(std::abs(b) / std::abs(a));
}

FormValue s_w_l1_norm(const OrientedRect& rect, Vec2 w1, Vec2 w2, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  Vec2 dw = w1 - w2;
  double gamma = norm(dw);
  if (!(gamma > 0.0)) throw Error(ErrorKind::invalid_argument, "w1 and w2 must differ");
  const Vec2 u = rect.direction();
  if (std::abs(cross(u, dw / gamma)) > 1e-9)
    throw Error(ErrorKind::invalid_argument, "rectangle must be parallel to w1 - w2");
  const Vec2 n = perp(u);
  const double half_len = 0.5 * rect.length();
  const double eps = rect.width();
  const double alpha[2] = {dot(w1, u), dot(w2, u)};
  const double beta = 0.5 * (dot(w1, n) + dot(w2, n));
  const bool flat = std::abs(beta) <= 1e-14 * std::max(norm(w1), norm(w2));
  const double delta = flat ? 0.0 : 0.5 * eps / std::abs(beta);

  // t-range allowed by the along-R conditions at axial position X: [A(X), B(X)].
  auto bounds = [&](double X, double& A, double& B) {
    A = -kInf;
    B = kInf;
    for (double a : alpha) {
      if (a == 0.0) {
        if (std::abs(X) > half_len) {
          A = kInf;
          B = -kInf;
        }
        continue;
      }
      double t1 = (X - half_len) / a, t2 = (X + half_len) / a;
      A = std::max(A, std::min(t1, t2));
      B = std::min(B, std::max(t1, t2));
    }
  };

  double amax = std::max(std::abs(alpha[0]), std::abs(alpha[1]));
  double x_ext = half_len + amax * (2.0 * half_len / gamma) + 1e-9;

  // X values where A or B switch linear branch, then where they hit the levels that shape
  // the inner integral.
  std::vector<double> xs{-x_ext, x_ext};
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0})
      if (alpha[0] != alpha[1]) {
        // (X + s1 h)/a0 = (X + s2 h)/a1
        double den = alpha[1] - alpha[0];
        double x = (alpha[0] * s2 * half_len - alpha[1] * s1 * half_len) / den;
        if (std::abs(x) < x_ext) xs.push_back(x);
      }
  for (double s : {-1.0, 1.0})
    if (std::abs(s * half_len) < x_ext) xs.push_back(s * half_len);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> pts = xs;
  const double levels[] = {0.0, delta, -delta, 2 * delta, -2 * delta};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double xl = xs[i], xr = xs[i + 1];
    double al, bl, ar, br;
    // Evaluate just inside the piece; A and B are affine on it.
    double pad = 1e-12 * (xr - xl);
    bounds(xl + pad, al, bl);
    bounds(xr - pad, ar, br);
    if (!std::isfinite(al) || !std::isfinite(ar) || !std::isfinite(bl) || !std::isfinite(br)) continue;
    auto root = [&](double fl, double fr, double level) {
      if ((fl - level) * (fr - level) < 0.0) pts.push_back(xl + (xr - xl) * (level - fl) / (fr - fl));
    };
    for (double lv : levels) {
      root(al, ar, lv);
      root(bl, br, lv);
      root(al + bl, ar + br, lv);
    }
    root(bl - al, br - ar, 0.0);
    root(bl - al, br - ar, 2 * delta);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto integrand = [&](double X) {
    double A, B;
    bounds(X, A, B);
    if (!(A < B)) return 0.0;
    if (flat) return eps * std::abs(std::log(std::max(std::abs(B), 1e-300) / std::max(std::abs(A), 1e-300)));
    return std::abs(beta) * inner_tau_integral(A, B, delta);
  };
  auto res = gauss_kronrod<double>(integrand, std::span<const double>(pts), tol, kFormEvalBudget);
  return {res.value, res.abs_error, res.evaluations};
}

}  // namespace besilab
