#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "besilab/errors.hpp"
#include "besilab/geometry.hpp"

namespace besilab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::tolerance_unachievable: return "tolerance unachievable";
    case ErrorKind::construction_failure: return "construction failure";
    case ErrorKind::direction_mismatch: return "direction mismatch";
    case ErrorKind::degenerate_gradient: return "degenerate gradient";
    case ErrorKind::non_curve: return "slice is not a curve";
    case ErrorKind::zero_curvature: return "zero curvature";
    case ErrorKind::zero_vector: return "zero vector";
    case ErrorKind::unbounded_value: return "unbounded value";
    case ErrorKind::truncation: return "truncation error";
    case ErrorKind::covering_failure: return "covering failure";
    case ErrorKind::disjointness_failure: return "disjointness failure";
    case ErrorKind::strip_intersection_empty: return "strip intersection empty";
    case ErrorKind::homogeneity_violated: return "homogeneity violated";
    case ErrorKind::unsupported_kind: return "unsupported kind";
    case ErrorKind::config: return "configuration error";
  }
  return "error";
}

Vec2 rotate(Vec2 a, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

namespace {

double signed_area(const std::vector<Vec2>& v) {
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  const Vec2 o = v[0];
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += cross(v[i] - o, v[i + 1] - o);
  return 0.5 * s;
}

constexpr double kMinArea = 1e-15;
constexpr double kDupDist = 1e-14;

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  for (const Vec2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorKind::invalid_argument, "polygon vertex is not finite");
  }
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());

  bool changed = true;
  while (changed && vertices.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < vertices.size() && vertices.size() >= 3; ++i) {
      std::size_t n = vertices.size();
      const Vec2 prev = vertices[(i + n - 1) % n];
      const Vec2 cur = vertices[i];
      const Vec2 next = vertices[(i + 1) % n];
      bool drop = norm(cur - prev) < kDupDist;
      if (!drop) {
        Vec2 e = next - prev;
        double len = norm(e);
        drop = len < kDupDist || std::abs(cross(e, cur - prev)) / len < kDupDist;
      }
      if (drop) {
        vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  if (vertices.size() < 3 || signed_area(vertices) < kMinArea) return;
  v_ = std::move(vertices);
}

double ConvexPolygon::area() const { return signed_area(v_); }

Vec2 ConvexPolygon::centroid() const {
  if (v_.empty()) return {};
  const Vec2 o = v_[0];
  double a = 0.0;
  Vec2 c{};
  for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
    Vec2 p = v_[i] - o, q = v_[i + 1] - o;
    double w = cross(p, q);
    a += w;
    c = c + (w / 3.0) * (p + q);
  }
  return o + c / a;
}

BBox ConvexPolygon::bbox() const {
  BBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2& p : v_) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

bool ConvexPolygon::contains(Vec2 p) const {
  if (v_.empty()) return false;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    Vec2 a = v_[i], b = v_[(i + 1) % v_.size()];
    Vec2 e = b - a;
    if (cross(e, p - a) / norm(e) < -kGeomTol) return false;
  }
  return true;
}

bool ConvexPolygon::strictly_contains(Vec2 p) const {
  if (v_.empty()) return false;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    Vec2 a = v_[i], b = v_[(i + 1) % v_.size()];
    Vec2 e = b - a;
    if (cross(e, p - a) / norm(e) <= kGeomTol) return false;
  }
  return true;
}

ConvexPolygon ConvexPolygon::translated(Vec2 t) const {
  ConvexPolygon out;
  out.v_.reserve(v_.size());
  for (const Vec2& p : v_) out.v_.push_back(p + t);
  return out;
}

ConvexPolygon ConvexPolygon::rotated(double theta, Vec2 pivot) const {
  ConvexPolygon out;
  out.v_.reserve(v_.size());
  for (const Vec2& p : v_) out.v_.push_back(pivot + rotate(p - pivot, theta));
  return out;
}

ConvexPolygon ConvexPolygon::axis_square(Vec2 c, double side) {
  double h = 0.5 * side;
  return ConvexPolygon({{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}});
}

OrientedRect::OrientedRect(Vec2 center, Vec2 direction, double length, double width)
    : center_(center), length_(length), width_(width) {
  double n = norm(direction);
  if (!(std::abs(n - 1.0) <= 1e-12))
    throw Error(ErrorKind::invalid_argument, "rectangle direction must be a unit vector");
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length) || !std::isfinite(width))
    throw Error(ErrorKind::invalid_argument, "rectangle sides must be positive");
  dir_ = direction / n;
}

ConvexPolygon OrientedRect::polygon() const {
  Vec2 a = (0.5 * length_) * dir_;
  Vec2 b = (0.5 * width_) * perp(dir_);
  return ConvexPolygon({center_ - a - b, center_ + a - b, center_ + a + b, center_ - a + b});
}

OrientedRect OrientedRect::translated(Vec2 t) const {
  return OrientedRect(center_ + t, dir_, length_, width_);
}

OrientedRect OrientedRect::rotated_about_center(double theta) const {
  Vec2 d = rotate(dir_, theta);
  return OrientedRect(center_, d / norm(d), length_, width_);
}

std::vector<ConvexPolygon> polygons_of(std::span<const OrientedRect> rects) {
  std::vector<ConvexPolygon> out;
  out.reserve(rects.size());
  for (const auto& r : rects) out.push_back(r.polygon());
  return out;
}

ConvexPolygon intersect_convex(const ConvexPolygon& p, const ConvexPolygon& q) {
  if (p.empty() || q.empty()) return {};
  if (!p.bbox().overlaps(q.bbox(), kGeomTol)) return {};

  std::vector<Vec2> cur(p.vertices().begin(), p.vertices().end());
  std::vector<Vec2> next;
  next.reserve(cur.size() + q.size());
  std::vector<double> f;
  for (std::size_t k = 0; k < q.size() && !cur.empty(); ++k) {
    Vec2 a = q[k], b = q[(k + 1) % q.size()];
    Vec2 e = b - a;
    double inv = 1.0 / norm(e);
    f.resize(cur.size());
    bool all_in = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      f[i] = cross(e, cur[i] - a) * inv;
      all_in = all_in && f[i] >= -kGeomTol;
    }
    if (all_in) continue;
    next.clear();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::size_t j = (i + 1) % cur.size();
      bool in_i = f[i] >= -kGeomTol, in_j = f[j] >= -kGeomTol;
      if (in_i) next.push_back(cur[i]);
      if (in_i != in_j) {
        double s = f[i] / (f[i] - f[j]);
        next.push_back(cur[i] + s * (cur[j] - cur[i]));
      }
    }
    cur.swap(next);
  }
  return ConvexPolygon(std::move(cur));
}

namespace {

bool separated_along(const ConvexPolygon& a, const ConvexPolygon& b, const ConvexPolygon& edges_of) {
  for (std::size_t k = 0; k < edges_of.size(); ++k) {
    Vec2 e = edges_of[(k + 1) % edges_of.size()] - edges_of[k];
    Vec2 n = perp(e) / norm(e);
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    double bmin = amin, bmax = -amin;
    for (const Vec2& p : a.vertices()) {
      double s = dot(n, p);
      amin = std::min(amin, s);
      amax = std::max(amax, s);
    }
    for (const Vec2& p : b.vertices()) {
      double s = dot(n, p);
      bmin = std::min(bmin, s);
      bmax = std::max(bmax, s);
    }
    if (amax <= bmin + kGeomTol || bmax <= amin + kGeomTol) return true;
  }
  return false;
}

}  // namespace

bool interiors_disjoint(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return true;
  return separated_along(a, b, a) || separated_along(a, b, b);
}

DisjointnessResult pairwise_disjoint(std::span<const ConvexPolygon> polys) {
  std::vector<BBox> boxes;
  boxes.reserve(polys.size());
  for (const auto& p : polys) boxes.push_back(p.bbox());
  std::vector<std::size_t> order(polys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].xmin < boxes[b].xmin || (boxes[a].xmin == boxes[b].xmin && a < b);
  });

  DisjointnessResult res;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t i = order[oi];
    if (polys[i].empty()) continue;
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      std::size_t j = order[oj];
      if (boxes[j].xmin > boxes[i].xmax) break;
      if (polys[j].empty() || !boxes[i].overlaps(boxes[j])) continue;
      if (interiors_disjoint(polys[i], polys[j])) continue;
      std::size_t a = std::min(i, j), b = std::max(i, j);
      if (res.disjoint || a < res.first || (a == res.first && b < res.second)) {
        res = {false, a, b};
      }
    }
  }
  return res;
}

}  // namespace besilab
