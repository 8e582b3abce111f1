#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "besilab/geometry.hpp"

namespace besilab {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<double, 16>;  // row-major

// A point of Gamma = {(xi1, xi2, xi3) in (R^2)^3 : xi1 + xi2 + xi3 = 0}, or any triple of
// planar vectors when used as coefficients.
struct GammaVec {
  Vec2 v1, v2, v3;

  const Vec2& operator[](int j) const { return j == 1 ? v1 : (j == 2 ? v2 : v3); }
  Vec2& operator[](int j) { return j == 1 ? v1 : (j == 2 ? v2 : v3); }

  double norm() const;
  double dot(const GammaVec& o) const;
  GammaVec scaled(double s) const { return {s * v1, s * v2, s * v3}; }
  GammaVec operator-() const { return scaled(-1.0); }
  bool in_gamma(double tol = 1e-12) const;

  static GammaVec phi(Vec2 xi1, Vec2 xi2) { return {xi1, xi2, -(xi1 + xi2)}; }
};

// F(x) = x^T A x + b.x + c with A symmetric.
struct QuadraticForm {
  Mat4 a{};
  Vec4 b{};
  double c = 0.0;

  double value(const Vec4& x) const;
  Vec4 gradient(const Vec4& x) const;
};

// D = {F < 0} in R^4 = R^2 x R^2, coordinates (xi1_x, xi1_y, xi2_x, xi2_y).
class LevelSetDomain {
 public:
  using Fn = std::function<double(const Vec4&)>;
  using GradFn = std::function<Vec4(const Vec4&)>;

  static LevelSetDomain quadratic(std::string name, QuadraticForm q);
  // Gradient falls back to central differences when `grad` is empty.
  static LevelSetDomain from_function(std::string name, Fn f, GradFn grad = {});

  const std::string& name() const { return name_; }
  double value(const Vec4& x) const { return f_(x); }
  Vec4 gradient(const Vec4& x) const;
  Mat4 hessian(const Vec4& x) const;
  const std::optional<QuadraticForm>& quadratic_form() const { return quad_; }

 private:
  std::string name_;
  Fn f_;
  GradFn grad_;
  std::optional<QuadraticForm> quad_;
};

LevelSetDomain ball4();
LevelSetDomain ellipsoid4(double a, double b, double c, double d);
LevelSetDomain paraboloid_d1();
LevelSetDomain cylinder_disc();
LevelSetDomain half_space4(const Vec4& normal, double offset);

// "ball4", "ellipsoid4:a,b,c,d", "paraboloid-d1", "cylinder-disc", "halfspace:n1,n2,n3,n4[,c]".
LevelSetDomain parse_domain(const std::string& spec);

// Raw Gamma-normal (v1, v2, v3) = ((2g1-g2)/3, (2g2-g1)/3, -(g1+g2)/3) for grad F = (g1, g2),
// oriented toward {F > 0}. Satisfies v.Phi(T) = grad F . T for all T in R^4.
GammaVec gamma_normal(const LevelSetDomain& domain, const Vec4& point);
GammaVec gamma_normal_from_gradient(const Vec4& grad);

// w_{j0} = v_{sigma(j0)} - v_{sigma^2(j0)}, sigma = (1 2 3).
Vec2 slice_w(const GammaVec& v, int j0);

// The slice {xi_{j0} = fixed_point} of boundary(D~), parametrised by z in R^2:
// j0 = 1: x = (fixed, z); j0 = 2: x = (z, fixed); j0 = 3: x = (z, -fixed - z).
struct SliceSpec {
  int j0 = 1;
  Vec2 fixed_point{};

  Vec4 embed(Vec2 z) const;
  Vec2 reduce_gradient(const Vec4& g) const;
  std::array<double, 3> reduce_hessian(const Mat4& h) const;  // (zxx, zxy, zyy)
  void validate() const;
};

// Signed curvature of the slice curve at z, positive when it bends toward {F < 0}.
double slice_curvature(const LevelSetDomain& domain, const SliceSpec& slice, Vec2 z);

// Newton projection of `seed` onto the slice curve (tolerance 1e-10).
Vec2 project_to_slice(const LevelSetDomain& domain, const SliceSpec& slice, Vec2 seed);

struct Ball6 {
  GammaVec center;
  double radius = 0.0;
};

struct DirectionSample {
  double arc = 0.0;
  Vec2 z;
  Vec4 point;
  GammaVec normal;  // scaled so |w_{j0}| = 1
  Vec2 w;
  double curvature = 0.0;
};

struct DirectionField {
  std::vector<DirectionSample> samples;
  Ball6 a_star;  // enclosing ball of the normalised normals
};

struct DirectionFieldOptions {
  Vec2 seed{1.0, 0.0};
  double step = 1e-3;
};

// Traces the slice curve from the projection of `seed` (arc 0, counter-clockwise around
// {F < 0}) and samples it at the midpoints of `count` equal cells of [arc_lo, arc_hi].
DirectionField direction_field(const LevelSetDomain& domain, const SliceSpec& slice, double arc_lo,
                               double arc_hi, std::size_t count, const DirectionFieldOptions& opts = {});

Ball6 enclosing_ball(const std::vector<GammaVec>& points);

enum class VectorClass { nondegenerate, degenerate, strongly_degenerate };
const char* to_string(VectorClass c);
VectorClass classify_vector(const GammaVec& v);

struct ConfigurationTriangle {
  std::array<Vec2, 3> vertices;  // -v1, -v2, -v3
  std::array<Vec2, 3> edges;     // v1 - v2, v2 - v3, v3 - v1
  double area = 0.0;
  bool degenerate = false;
};

ConfigurationTriangle configuration_triangle(const GammaVec& v);
std::string triangle_svg(const ConfigurationTriangle& t, const std::string& title);

}  // namespace besilab
