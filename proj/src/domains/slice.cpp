#include <algorithm>
#include <cmath>

#include "besilab/domains.hpp"
#include "besilab/errors.hpp"

namespace besilab {

void SliceSpec::validate() const {
  if (j0 < 1 || j0 > 3) throw Error(ErrorKind::invalid_argument, "slice index must be 1, 2 or 3");
  if (!std::isfinite(fixed_point.x) || !std::isfinite(fixed_point.y))
    throw Error(ErrorKind::invalid_argument, "slice fixed point must be finite");
}

Vec4 SliceSpec::embed(Vec2 z) const {
  switch (j0) {
    case 1: return {fixed_point.x, fixed_point.y, z.x, z.y};
    case 2: return {z.x, z.y, fixed_point.x, fixed_point.y};
    default: return {z.x, z.y, -fixed_point.x - z.x, -fixed_point.y - z.y};
  }
}

Vec2 SliceSpec::reduce_gradient(const Vec4& g) const {
  switch (j0) {
    case 1: return {g[2], g[3]};
    case 2: return {g[0], g[1]};
    default: return {g[0] - g[2], g[1] - g[3]};
  }
}

std::array<double, 3> SliceSpec::reduce_hessian(const Mat4& h) const {
  auto at = [&](int i, int j) { return h[i * 4 + j]; };
  switch (j0) {
    case 1: return {at(2, 2), at(2, 3), at(3, 3)};
    case 2: return {at(0, 0), at(0, 1), at(1, 1)};
    default: {
      auto red = [&](int a, int b) { return at(a, b) - at(a, b + 2) - at(a + 2, b) + at(a + 2, b + 2); };
      return {red(0, 0), red(0, 1), red(1, 1)};
    }
  }
}

namespace {

double gradient_norm(const Vec4& g) { return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]); }

Vec2 reduced_gradient(const LevelSetDomain& d, const SliceSpec& s, Vec2 z) {
  Vec4 g = d.gradient(s.embed(z));
  if (!(gradient_norm(g) >= 1e-8)) throw Error(ErrorKind::degenerate_gradient, "|grad F| < 1e-8 on the slice");
  Vec2 r = s.reduce_gradient(g);
  if (!(norm(r) >= 1e-8))
    throw Error(ErrorKind::non_curve, "the slice is not transversal to the boundary here");
  return r;
}

Vec2 tangent(const LevelSetDomain& d, const SliceSpec& s, Vec2 z) {
  Vec2 g = reduced_gradient(d, s, z);
  return perp(g) / norm(g);
}

double wrap(double a) { return std::remainder(a, 2.0 * 3.14159265358979323846); }

}  // namespace

double slice_curvature(const LevelSetDomain& domain, const SliceSpec& slice, Vec2 z) {
  slice.validate();
  Vec4 x = slice.embed(z);
  if (!(std::abs(domain.value(x)) < 1e-8))
    throw Error(ErrorKind::invalid_argument, "point is not on the slice curve");
  Vec2 g = reduced_gradient(domain, slice, z);
  auto [hxx, hxy, hyy] = slice.reduce_hessian(domain.hessian(x));
  double n = norm(g);
  return (hxx * g.y * g.y - 2.0 * hxy * g.x * g.y + hyy * g.x * g.x) / (n * n * n);
}

Vec2 project_to_slice(const LevelSetDomain& domain, const SliceSpec& slice, Vec2 z) {
  double f = domain.value(slice.embed(z));
  for (int it = 0; it < 100 && std::abs(f) > 1e-15; ++it) {
    Vec2 g = reduced_gradient(domain, slice, z);
    z = z - (f / dot(g, g)) * g;
    double nf = domain.value(slice.embed(z));
    if (std::abs(nf) >= std::abs(f) && std::abs(nf) <= 1e-12) break;
    f = nf;
  }
  if (!(std::abs(domain.value(slice.embed(z))) <= 1e-10))
    throw Error(ErrorKind::non_curve, "Newton projection onto the slice curve did not converge");
  return z;
}

DirectionField direction_field(const LevelSetDomain& domain, const SliceSpec& slice, double arc_lo,
                               double arc_hi, std::size_t count, const DirectionFieldOptions& opts) {
  slice.validate();
  if (count == 0) throw Error(ErrorKind::invalid_argument, "direction field needs at least one sample");
  if (!(arc_lo < arc_hi)) throw Error(ErrorKind::invalid_argument, "arc range must be increasing");
  if (!(opts.step > 0.0)) throw Error(ErrorKind::invalid_argument, "trace step must be positive");

  const Vec2 base = project_to_slice(domain, slice, opts.seed);
  std::vector<double> targets(count);
  for (std::size_t n = 0; n < count; ++n)
    targets[n] = arc_lo + (static_cast<double>(n) + 0.5) * (arc_hi - arc_lo) / static_cast<double>(count);

  std::vector<Vec2> where(count);
  auto trace = [&](double dir, auto first, auto last) {
    Vec2 z = base;
    double s = 0.0;
    for (auto it = first; it != last; ++it) {
      double target = targets[*it];
      while (dir * (target - s) > 0.0) {
        double h = dir * std::min(opts.step, dir * (target - s));
        Vec2 t1 = tangent(domain, slice, z);
        Vec2 t2 = tangent(domain, slice, z + (0.5 * h) * t1);
        z = project_to_slice(domain, slice, z + h * t2);
        s = (std::abs(target - (s + h)) < 1e-15) ? target : s + h;
      }
      where[*it] = z;
    }
  };
  std::vector<std::size_t> fwd, back;
  for (std::size_t n = 0; n < count; ++n) (targets[n] >= 0.0 ? fwd : back).push_back(n);
  std::reverse(back.begin(), back.end());
  trace(+1.0, fwd.begin(), fwd.end());
  trace(-1.0, back.begin(), back.end());

  DirectionField field;
  field.samples.reserve(count);
  std::vector<GammaVec> normals;
  for (std::size_t n = 0; n < count; ++n) {
    DirectionSample smp;
    smp.arc = targets[n];
    smp.z = where[n];
    smp.point = slice.embed(smp.z);
    GammaVec v = gamma_normal(domain, smp.point);
    Vec2 w = slice_w(v, slice.j0);
    double wn = norm(w);
    if (!(wn > 1e-12)) throw Error(ErrorKind::non_curve, "w vanishes on the slice");
    smp.normal = v.scaled(1.0 / wn);
    smp.w = w / wn;
    smp.curvature = slice_curvature(domain, slice, smp.z);
    if (!(std::abs(smp.curvature) >= 1e-8))
      throw Error(ErrorKind::zero_curvature,
                  "slice curvature vanishes at arc " + std::to_string(smp.arc) + " in slice j0=" +
                      std::to_string(slice.j0));
    normals.push_back(smp.normal);
    field.samples.push_back(smp);
  }
  if (count > 1) {
    double sign = 0.0;
    for (std::size_t n = 0; n + 1 < count; ++n) {
      double d = wrap(angle_of(field.samples[n + 1].w) - angle_of(field.samples[n].w));
      if (std::abs(d) <= 1e-12 || (sign != 0.0 && d * sign < 0.0))
        throw Error(ErrorKind::zero_curvature, "w angles are not strictly monotone along the arc");
      sign = d > 0.0 ? 1.0 : -1.0;
    }
  }
  field.a_star = enclosing_ball(normals);
  return field;
}

}  // namespace besilab
