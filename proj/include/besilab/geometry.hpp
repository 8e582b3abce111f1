#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace besilab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
Vec2 rotate(Vec2 a, double theta);

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool overlaps(const BBox& o, double slack = 0.0) const {
    return xmin <= o.xmax + slack && o.xmin <= xmax + slack && ymin <= o.ymax + slack &&
           o.ymin <= ymax + slack;
  }
  bool contains(const BBox& o) const {
    return xmin <= o.xmin && ymin <= o.ymin && o.xmax <= xmax && o.ymax <= ymax;
  }
  double area() const { return (xmax - xmin) * (ymax - ymin); }
};

// Distance below which points are treated as lying on an edge line.
inline constexpr double kGeomTol = 1e-12;

// Counter-clockwise convex polygon without repeated or collinear vertices.
// Anything with area below ~1e-15 collapses to the empty polygon.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  bool empty() const { return v_.empty(); }
  std::span<const Vec2> vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Vec2& operator[](std::size_t i) const { return v_[i]; }

  double area() const;
  Vec2 centroid() const;
  BBox bbox() const;
  // Closed containment with kGeomTol slack.
  bool contains(Vec2 p) const;
  bool strictly_contains(Vec2 p) const;

  ConvexPolygon translated(Vec2 t) const;
  ConvexPolygon rotated(double theta, Vec2 pivot) const;

  static ConvexPolygon axis_square(Vec2 center, double side);

 private:
  std::vector<Vec2> v_;
};

class OrientedRect {
 public:
  OrientedRect(Vec2 center, Vec2 direction, double length, double width);

  Vec2 center() const { return center_; }
  Vec2 direction() const { return dir_; }
  double length() const { return length_; }
  double width() const { return width_; }
  double area() const { return length_ * width_; }

  ConvexPolygon polygon() const;
  OrientedRect translated(Vec2 t) const;
  OrientedRect rotated_about_center(double theta) const;

 private:
  Vec2 center_;
  Vec2 dir_;
  double length_;
  double width_;
};

std::vector<ConvexPolygon> polygons_of(std::span<const OrientedRect> rects);

// Sutherland-Hodgman with the kGeomTol rule; empty when interiors do not meet.
ConvexPolygon intersect_convex(const ConvexPolygon& p, const ConvexPolygon& q);

enum class UnionMethod { exact, raster };

struct UnionOptions {
  UnionMethod method = UnionMethod::exact;
  // Raster backend only: total cell classifications allowed.
  std::size_t max_cells = 20'000'000;
};

struct MeasureEstimate {
  double measure = 0.0;
  double err_bound = 0.0;
};

MeasureEstimate union_measure(std::span<const ConvexPolygon> polys, double tol,
                              const UnionOptions& opts = {});

struct OverlapDistribution {
  std::map<int, double> measure;  // overlap count m >= 1 -> |{x : count(x) = m}|
  double err_bound = 0.0;
};

OverlapDistribution overlap_distribution(std::span<const ConvexPolygon> polys, double tol,
                                         const UnionOptions& opts = {});

// Integral of count(x)^q; q > 0.
MeasureEstimate count_lp_integral(std::span<const ConvexPolygon> polys, double q, double tol,
                                  const UnionOptions& opts = {});

struct DisjointnessResult {
  bool disjoint = true;
  std::size_t first = 0;
  std::size_t second = 0;
};

// Separating-axis test; shared boundaries count as disjoint.
bool interiors_disjoint(const ConvexPolygon& a, const ConvexPolygon& b);
DisjointnessResult pairwise_disjoint(std::span<const ConvexPolygon> polys);

namespace detail {
// area{count >= m} for m = 1..max, index 0 unused.
struct LevelAreas {
  std::vector<double> at_least;
  double err_bound = 0.0;
};
LevelAreas level_areas_exact(std::span<const ConvexPolygon> polys);
OverlapDistribution overlap_distribution_raster(std::span<const ConvexPolygon> polys, double tol,
                                                std::size_t max_cells, bool union_only);
}  // namespace detail

}  // namespace besilab
