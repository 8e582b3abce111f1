#include <algorithm>
#include <cmath>
#include <limits>

#include "besilab/errors.hpp"
#include "besilab/forms.hpp"
#include "besilab/quadrature.hpp"

namespace besilab {

namespace {

struct Triple {
  const ConvexPolygon* a[3];
  Vec2 v[3];
};

double proj_min(const ConvexPolygon& p, Vec2 u) {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec2& q : p.vertices()) m = std::min(m, dot(u, q));
  return m;
}

double proj_max(const ConvexPolygon& p, Vec2 u) {
  double m = -std::numeric_limits<double>::infinity();
  for (const Vec2& q : p.vertices()) m = std::max(m, dot(u, q));
  return m;
}

// Necessary condition for g(t) > 0: every pair of translates must meet, which confines t
// to an interval along each pairwise velocity.
void support_bracket(const Triple& tr, double& lo, double& hi) {
  lo = -std::numeric_limits<double>::infinity();
  hi = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      Vec2 u = tr.v[a] - tr.v[b];
      double uu = dot(u, u);
      if (uu < 1e-28) {
        if (intersect_convex(*tr.a[a], *tr.a[b]).empty()) {
          lo = 1.0;
          hi = -1.0;
          return;
        }
        continue;
      }
      lo = std::max(lo, (proj_min(*tr.a[b], u) - proj_max(*tr.a[a], u)) / uu);
      hi = std::min(hi, (proj_max(*tr.a[b], u) - proj_min(*tr.a[a], u)) / uu);
    }
  }
}

// Times at which a vertex of one translate crosses an edge of another, or three edges
// (one per translate) become concurrent. Between them the intersection keeps its
// combinatorial type, so g is quadratic there.
std::vector<double> events(const Triple& tr, double lo, double hi) {
  std::vector<double> out;
  auto keep = [&](double t) {
    if (std::isfinite(t) && t > lo && t < hi) out.push_back(t);
  };
  struct Edge {
    Vec2 n;
    double c0, c1;  // n.x = c0 + t c1
    Vec2 start, along;
    Vec2 vel;
    double len;

    // Whether x lies on the edge at time t, up to a small relative slack.
    bool covers(Vec2 x, double t) const {
      double s = dot(x - (start + t * vel), along);
      double slack = 1e-9 * (1.0 + len);
      return s >= -slack && s <= len + slack;
    }
  };
  std::vector<Edge> edges[3];
  for (int a = 0; a < 3; ++a) {
    const ConvexPolygon& p = *tr.a[a];
    for (std::size_t k = 0; k < p.size(); ++k) {
      Vec2 e = p[(k + 1) % p.size()] - p[k];
      double len = norm(e);
      Vec2 n = perp(e) / len;
      edges[a].push_back({n, dot(n, p[k]), dot(n, tr.v[a]), p[k], e / len, tr.v[a], len});
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      for (const Vec2& p : tr.a[a]->vertices()) {
        for (const Edge& l : edges[b]) {
          double den = dot(l.n, tr.v[a]) - l.c1;
          if (std::abs(den) < 1e-14) continue;
          double t = (l.c0 - dot(l.n, p)) / den;
          if (l.covers(p + t * tr.v[a], t)) keep(t);
        }
      }
    }
  }
  for (const Edge& la : edges[0]) {
    for (const Edge& lb : edges[1]) {
      double kab = cross(la.n, lb.n);
      if (std::abs(kab) < 1e-14) continue;
      for (const Edge& lc : edges[2]) {
        double kac = cross(la.n, lc.n), kbc = cross(lb.n, lc.n);
        double alpha = la.c0 * kbc - lb.c0 * kac + lc.c0 * kab;
        double beta = la.c1 * kbc - lb.c1 * kac + lc.c1 * kab;
        if (std::abs(beta) < 1e-14) continue;
        double t = -alpha / beta;
        // Meeting point of the first two lines at time t.
        double ra = la.c0 + t * la.c1, rb = lb.c0 + t * lb.c1;
        Vec2 x{(ra * lb.n.y - rb * la.n.y) / kab, (la.n.x * rb - lb.n.x * ra) / kab};
        if (la.covers(x, t) && lb.covers(x, t) && lc.covers(x, t)) keep(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-13; }),
            out.end());
  return out;
}

void check_inputs(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3, const GammaVec& v) {
  if (a1.empty() || a2.empty() || a3.empty())
    throw Error(ErrorKind::invalid_argument, "sliding form needs three non-empty polygons");
  if (!v.in_gamma(1e-9)) throw Error(ErrorKind::invalid_argument, "v must satisfy v1 + v2 + v3 = 0");
  if (!(v.norm() > 0.0)) throw Error(ErrorKind::zero_vector, "v must be nonzero");
}

}  // namespace

double area_at(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3, const GammaVec& v,
               double t) {
  // Work in the frame moving with A1.
  ConvexPolygon b2 = a2.translated(t * (v.v2 - v.v1));
  ConvexPolygon p = intersect_convex(a1, b2);
  if (p.empty()) return 0.0;
  p = intersect_convex(p, a3.translated(t * (v.v3 - v.v1)));
  return p.empty() ? 0.0 : p.area();
}

AreaProfile area_profile(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3,
                         const GammaVec& v, double resolution) {
  check_inputs(a1, a2, a3, v);
  if (!(resolution > 0.0 && resolution < 1.0))
    throw Error(ErrorKind::invalid_argument, "profile resolution must be in (0, 1)");
  Triple tr{{&a1, &a2, &a3}, {v.v1, v.v2, v.v3}};
  AreaProfile prof;
  support_bracket(tr, prof.t_min, prof.t_max);
  if (prof.empty()) return prof;
  prof.breakpoints = events(tr, prof.t_min, prof.t_max);

  std::vector<double> ts = prof.breakpoints;
  ts.push_back(prof.t_min);
  ts.push_back(prof.t_max);
  for (int k = 1; k < 64; ++k) ts.push_back(prof.t_min + (prof.t_max - prof.t_min) * k / 64.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<double> gs(ts.size());
  double gmax = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    gs[i] = area_at(a1, a2, a3, v, ts[i]);
    gmax = std::max(gmax, gs[i]);
  }
  const double min_gap = 1e-12 * std::max(1.0, prof.t_max - prof.t_min);
  for (bool again = true; again && ts.size() < 2'000'000;) {
    again = false;
    std::vector<double> nt, ng;
    nt.reserve(ts.size() * 2);
    ng.reserve(ts.size() * 2);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      nt.push_back(ts[i]);
      ng.push_back(gs[i]);
      if (std::abs(gs[i + 1] - gs[i]) > resolution * gmax && ts[i + 1] - ts[i] > min_gap) {
        double m = 0.5 * (ts[i] + ts[i + 1]);
        double gm = area_at(a1, a2, a3, v, m);
        gmax = std::max(gmax, gm);
        nt.push_back(m);
        ng.push_back(gm);
        again = true;
      }
    }
    nt.push_back(ts.back());
    ng.push_back(gs.back());
    ts.swap(nt);
    gs.swap(ng);
  }
  prof.t = std::move(ts);
  prof.g = std::move(gs);
  return prof;
}

FormValue lambda_tilde_indicator_detailed(const ConvexPolygon& a1, const ConvexPolygon& a2,
                                          const ConvexPolygon& a3, const GammaVec& v, double tol) {
  check_inputs(a1, a2, a3, v);
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  Triple tr{{&a1, &a2, &a3}, {v.v1, v.v2, v.v3}};
  double lo, hi;
  support_bracket(tr, lo, hi);
  FormValue out;
  if (lo > hi) return out;

  std::vector<double> pts{0.0};
  const double top = std::max(std::abs(lo), std::abs(hi));
  auto add = [&](double t) {
    double a = std::abs(t);
    if (a > 0.0 && a < top) pts.push_back(a);
  };
  add(lo);
  add(hi);
  for (double t : events(tr, lo, hi)) add(t);
  pts.push_back(top);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto g = [&](double t) { return (t < lo || t > hi) ? 0.0 : area_at(a1, a2, a3, v, t); };
  auto h = [&](double t) { return (g(t) - g(-t)) / t; };
  auto res = gauss_kronrod<double>(h, std::span<const double>(pts), tol, kFormEvalBudget);
  out.value = res.value;
  out.abs_error = res.abs_error;
  out.evaluations = res.evaluations;
  return out;
}

double lambda_tilde_indicator(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3,
                              const GammaVec& v, double tol) {
  return lambda_tilde_indicator_detailed(a1, a2, a3, v, tol).value;
}

}  // namespace besilab
