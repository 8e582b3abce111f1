#include <algorithm>
#include <cmath>

#include "besilab/domains.hpp"
#include "besilab/errors.hpp"
#include "besilab/svg.hpp"

namespace besilab {

double GammaVec::norm() const { return std::sqrt(dot(*this)); }

double GammaVec::dot(const GammaVec& o) const {
  return besilab::dot(v1, o.v1) + besilab::dot(v2, o.v2) + besilab::dot(v3, o.v3);
}

bool GammaVec::in_gamma(double tol) const {
  return besilab::norm(v1 + v2 + v3) <= tol * std::max(1.0, norm());
}

GammaVec gamma_normal_from_gradient(const Vec4& g) {
  Vec2 g1{g[0], g[1]}, g2{g[2], g[3]};
  return {(2.0 * g1 - g2) / 3.0, (2.0 * g2 - g1) / 3.0, -(g1 + g2) / 3.0};
}

GammaVec gamma_normal(const LevelSetDomain& domain, const Vec4& x) {
  double f = domain.value(x);
  if (!(std::abs(f) < 1e-8))
    throw Error(ErrorKind::invalid_argument, "point is not on the boundary (|F| = " + std::to_string(std::abs(f)) + ")");
  Vec4 g = domain.gradient(x);
  double gn = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
  if (!(gn >= 1e-8)) throw Error(ErrorKind::degenerate_gradient, "|grad F| < 1e-8 at boundary point");
  return gamma_normal_from_gradient(g);
}

Vec2 slice_w(const GammaVec& v, int j0) {
  switch (j0) {
    case 1: return v.v2 - v.v3;
    case 2: return v.v3 - v.v1;
    case 3: return v.v1 - v.v2;
  }
  throw Error(ErrorKind::invalid_argument, "slice index must be 1, 2 or 3");
}

namespace {

std::array<double, 6> flat(const GammaVec& v) { return {v.v1.x, v.v1.y, v.v2.x, v.v2.y, v.v3.x, v.v3.y}; }

double dist(const std::array<double, 6>& a, const std::array<double, 6>& b) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

// Badoiu-Clarkson iteration; the returned radius encloses every point exactly.
Ball6 enclosing_ball(const std::vector<GammaVec>& points) {
  if (points.empty()) return {};
  std::vector<std::array<double, 6>> p;
  p.reserve(points.size());
  for (const auto& v : points) p.push_back(flat(v));
  auto c = p[0];
  constexpr int iters = 2000;
  for (int it = 1; it <= iters; ++it) {
    std::size_t far = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double d = dist(c, p[i]);
      if (d > best) {
        best = d;
        far = i;
      }
    }
    for (int k = 0; k < 6; ++k) c[k] += (p[far][k] - c[k]) / (it + 1.0);
  }
  double r = 0.0;
  for (const auto& q : p) r = std::max(r, dist(c, q));
  return {{{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}}, r};
}

const char* to_string(VectorClass c) {
  switch (c) {
    case VectorClass::nondegenerate: return "nondegenerate";
    case VectorClass::degenerate: return "degenerate";
    case VectorClass::strongly_degenerate: return "strongly degenerate";
  }
  return "?";
}

VectorClass classify_vector(const GammaVec& v) {
  double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::zero_vector, "cannot classify the zero vector");
  GammaVec u = v.scaled(1.0 / n);
  double det = cross(u.v1 - u.v3, u.v2 - u.v3);
  if (std::abs(det) > 1e-10) return VectorClass::nondegenerate;
  double smallest = std::min({besilab::norm(u.v1), besilab::norm(u.v2), besilab::norm(u.v3)});
  return smallest < 1e-10 ? VectorClass::strongly_degenerate : VectorClass::degenerate;
}

ConfigurationTriangle configuration_triangle(const GammaVec& v) {
  ConfigurationTriangle t;
  t.vertices = {-v.v1, -v.v2, -v.v3};
  t.edges = {v.v1 - v.v2, v.v2 - v.v3, v.v3 - v.v1};
  t.area = 0.5 * std::abs(cross(v.v1 - v.v3, v.v2 - v.v3));
  t.degenerate = t.area < 1e-10;
  return t;
}

std::string triangle_svg(const ConfigurationTriangle& t, const std::string& title) {
  BBox box{0, 0, 0, 0};
  for (const Vec2& p : t.vertices) {
    box.xmin = std::min(box.xmin, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.xmax = std::max(box.xmax, p.x);
    box.ymax = std::max(box.ymax, p.y);
  }
  double pad = 0.15 * std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-3});
  box = {box.xmin - pad, box.ymin - pad, box.xmax + pad, box.ymax + pad};
  SvgCanvas svg(box, 480.0);
  svg.line({box.xmin, 0}, {box.xmax, 0}, "#bbbbbb", 0.5);
  svg.line({0, box.ymin}, {0, box.ymax}, "#bbbbbb", 0.5);
  if (!t.degenerate) {
    svg.polygon(ConvexPolygon({t.vertices[0], t.vertices[1], t.vertices[2]}), "#7aa6e0", 0.4, "#1f5fbf");
  }
  // The edge from -v_j to -v_{j+1} is the vector v_j - v_{j+1}.
  for (int j = 0; j < 3; ++j) {
    const int n = (j + 1) % 3;
    svg.line(t.vertices[j], t.vertices[n], "#1f5fbf", 1.5, true);
    svg.text(0.5 * (t.vertices[j] + t.vertices[n]), "v" + std::to_string(j + 1) + " - v" + std::to_string(n + 1), 11.0);
  }
  for (int j = 0; j < 3; ++j) {
    svg.circle(t.vertices[j], 3.0, "#c0392b");
    svg.text(t.vertices[j], "-v" + std::to_string(j + 1));
  }
  svg.text({box.xmin, box.ymax}, title + " (area " + fmt_num(t.area, 6) + ")");
  return svg.str();
}

}  // namespace besilab
