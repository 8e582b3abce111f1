#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "besilab/domains.hpp"
#include "besilab/geometry.hpp"

namespace besilab {

inline constexpr std::size_t kFormEvalBudget = 1'000'000;

// g(t) = |(A1 + t v1) n (A2 + t v2) n (A3 + t v3)|, the inner integral of the sliding form
// for f_j = indicator(A_j).
double area_at(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3,
               const GammaVec& v, double t);

struct AreaProfile {
  double t_min = 0.0;  // closed support bracket; empty when t_min > t_max
  double t_max = -1.0;
  std::vector<double> breakpoints;  // every t where g can change polynomial piece
  std::vector<double> t;
  std::vector<double> g;

  bool empty() const { return t_min > t_max; }
};

// Samples g on its support, refined until neighbouring samples differ by less than
// resolution * max(g). Between consecutive breakpoints g is a quadratic polynomial.
AreaProfile area_profile(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3,
                         const GammaVec& v, double resolution);

struct FormValue {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
};

// p.v. integral of g(t) dt / t, as the integral over t > 0 of (g(t) - g(-t)) / t.
FormValue lambda_tilde_indicator_detailed(const ConvexPolygon& a1, const ConvexPolygon& a2,
                                          const ConvexPolygon& a3, const GammaVec& v, double tol);
double lambda_tilde_indicator(const ConvexPolygon& a1, const ConvexPolygon& a2, const ConvexPolygon& a3,
                              const GammaVec& v, double tol);

// ( integral of (sum_j indicator(P_j))^(p/2) )^(1/p).
double square_function_norm(std::span<const ConvexPolygon> polys, double p, double tol);

// p.v. integral of 1_{R1}(x - t w1) 1_{R2}(x - t w2) dt / t.
double s_w_value(Vec2 x, const ConvexPolygon& r1, const ConvexPolygon& r2, Vec2 w1, Vec2 w2);

// L1 norm of S_w(1_R, 1_R) for a rectangle parallel to w1 - w2. The integral over the
// direction across R is done in closed form; the remaining one adaptively.
FormValue s_w_l1_norm(const OrientedRect& r, Vec2 w1, Vec2 w2, double tol);

struct Gaussian {
  Vec2 center;
  Vec2 modulation;
};

// f_j(x) = exp(-pi |x - center_j|^2) exp(2 pi i modulation_j . x).
using GaussianTriple = std::array<Gaussian, 3>;

struct IdentityOptions {
  double spacing = 0.125;
  double half_width = 0.0;  // 0: 3 + max |modulation|
  double tol = 5e-2;
};

struct IdentityResult {
  std::complex<double> lambda_tilde;
  std::complex<double> lambda_p;
  std::complex<double> lambda_0;
  double residual = 0.0;
  double spacing = 0.0;
  double half_width = 0.0;
  std::size_t grid_points = 0;
};

// Relative defect of  Lambda~ = -i pi (2 Lambda_P - Lambda_0), with Lambda_P the frequency
// integral over {xi . v > 0} evaluated on a uniform grid.
IdentityResult identity_residual(const GaussianTriple& f, const GammaVec& v, const IdentityOptions& opts);

std::complex<double> gaussian_sliding_integrand(const GaussianTriple& f, const GammaVec& v, double t);

}  // namespace besilab
