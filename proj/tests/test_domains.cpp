#include <cmath>
#include <numbers>
#include <random>

#include "besilab/domains.hpp"
#include "besilab/errors.hpp"
#include "doctest.h"

using namespace besilab;

namespace {

double dot4(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

// Random boundary points built from each domain's explicit parametrisation.
Vec4 boundary_point(const std::string& name, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (name == "ball4" || name.rfind("ellipsoid4", 0) == 0) {
    Vec4 x{g(rng), g(rng), g(rng), g(rng)};
    double r = std::sqrt(dot4(x, x));
    for (auto& c : x) c /= r;
    if (name != "ball4") {
      const double axes[4] = {1.0, 2.0, 3.0, 4.0};  // semi-axes of ellipsoid4:1,2,3,4
      for (int i = 0; i < 4; ++i) x[i] *= axes[i];
    }
    return x;
  }
  if (name == "paraboloid-d1") {
    double a = u(rng), b = u(rng), c = u(rng);
    return {a, b, c, a * c + a * a};
  }
  if (name == "cylinder-disc") {
    double th = 3.0 * u(rng);
    return {std::cos(th), u(rng), std::sin(th), u(rng)};
  }
  // halfspace:1,2,-1,0.5,0.3 is x0 + 2 x1 - x2 + 0.5 x3 = 0.3
  double a = u(rng), b = u(rng), c = u(rng);
  return {a, b, c, (0.3 - (a + 2.0 * b - c)) / 0.5};
}

double max_abs(const GammaVec& v) {
  return std::max({std::abs(v.v1.x), std::abs(v.v1.y), std::abs(v.v2.x), std::abs(v.v2.y), std::abs(v.v3.x),
                   std::abs(v.v3.y)});
}

}  // namespace

TEST_SUITE("domains") {
  TEST_CASE("normal of the ball at ((0,0),(0,1))") {
    GammaVec v = gamma_normal(ball4(), {0.0, 0.0, 0.0, 1.0});
    // Proportional to ((0,-2/3),(0,4/3),(0,-2/3)) with a positive factor.
    double s = v.v2.y / (4.0 / 3.0);
    CHECK(s > 0.0);
    CHECK(v.v1.x == doctest::Approx(0.0));
    CHECK(v.v1.y == doctest::Approx(-2.0 / 3.0 * s));
    CHECK(v.v3.y == doctest::Approx(-2.0 / 3.0 * s));
    CHECK(v.in_gamma(1e-14));
  }

  TEST_CASE("normals are orthogonal to lifted tangents on every built-in") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (std::string name : {"ball4", "ellipsoid4:1,2,3,4", "paraboloid-d1", "cylinder-disc", "halfspace:1,2,-1,0.5,0.3"}) {
      auto dom = parse_domain(name);
      for (int p = 0; p < 20; ++p) {
        Vec4 x = boundary_point(name, rng);
        REQUIRE(std::abs(dom.value(x)) < 1e-10);
        GammaVec v = gamma_normal(dom, x);
        CHECK(v.in_gamma(1e-12));
        Vec4 grad = dom.gradient(x);
        double gg = dot4(grad, grad);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
          Vec4 t{g(rng), g(rng), g(rng), g(rng)};
          double c = dot4(t, grad) / gg;
          for (int i = 0; i < 4; ++i) t[i] -= c * grad[i];
          GammaVec lifted = GammaVec::phi({t[0], t[1]}, {t[2], t[3]});
          worst = std::max(worst, std::abs(v.dot(lifted)));
        }
        CHECK_MESSAGE(worst < 1e-8, name);
      }
    }
  }

  TEST_CASE("half-space normals are constant") {
    auto dom = parse_domain("halfspace:1,2,-1,0.5,0.3");
    std::mt19937_64 rng(4);
    GammaVec ref = gamma_normal(dom, boundary_point("halfspace", rng));
    for (int k = 0; k < 10; ++k) {
      GammaVec v = gamma_normal(dom, boundary_point("halfspace", rng));
      CHECK(max_abs(GammaVec{v.v1 - ref.v1, v.v2 - ref.v2, v.v3 - ref.v3}) < 1e-12);
    }
  }

  TEST_CASE("w_j0 follows the closed-form component map") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int k = 0; k < 20; ++k) {
      Vec4 grad{g(rng), g(rng), g(rng), g(rng)};
      GammaVec v = gamma_normal_from_gradient(grad);
      Vec2 g1{grad[0], grad[1]}, g2{grad[2], grad[3]};
      CHECK(norm(slice_w(v, 1) - g2) < 1e-12);
      CHECK(norm(slice_w(v, 2) + g1) < 1e-12);
      CHECK(norm(slice_w(v, 3) - (g1 - g2)) < 1e-12);
    }
  }

  TEST_CASE("degenerate gradient") {
    auto flat = LevelSetDomain::from_function("square", [](const Vec4& x) { return dot4(x, x); });
    try {
      gamma_normal(flat, {0.0, 0.0, 0.0, 0.0});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_gradient);
    }
    CHECK_THROWS_AS(gamma_normal(ball4(), {0.5, 0.0, 0.0, 0.0}), Error);
  }

  TEST_CASE("finite-difference derivatives match the analytic ones") {
    auto fd = LevelSetDomain::from_function("ellipsoid-fd", [](const Vec4& x) {
      return x[0] * x[0] + 2.0 * x[1] * x[1] + 3.0 * x[2] * x[2] + 4.0 * x[3] * x[3] + x[0] * x[2] - 1.0;
    });
    Vec4 x{0.3, -0.2, 0.4, 0.1};
    Vec4 g = fd.gradient(x);
    CHECK(g[0] == doctest::Approx(0.6 + 0.4).epsilon(1e-7));
    CHECK(g[1] == doctest::Approx(-0.8).epsilon(1e-7));
    CHECK(g[2] == doctest::Approx(2.4 + 0.3).epsilon(1e-7));
    CHECK(g[3] == doctest::Approx(0.8).epsilon(1e-7));
    Mat4 h = fd.hessian(x);
    CHECK(h[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(h[2] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(h[15] == doctest::Approx(8.0).epsilon(1e-4));
  }

  TEST_CASE("slice curvature of the ball") {
    SliceSpec s{1, {0.0, 0.0}};
    CHECK(slice_curvature(ball4(), s, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    SliceSpec off{1, {0.6, 0.0}};
    CHECK(slice_curvature(ball4(), off, {0.0, 0.8}) == doctest::Approx(1.25).epsilon(1e-12));
    for (int j0 : {2, 3}) {
      SliceSpec sj{j0, {0.0, 0.0}};
      Vec2 z = project_to_slice(ball4(), sj, {0.7, 0.2});
      CHECK(std::abs(ball4().value(sj.embed(z))) < 1e-10);
      CHECK(std::abs(slice_curvature(ball4(), sj, z)) > 0.1);
    }
  }

  TEST_CASE("paraboloid slices are flat") {
    auto par = paraboloid_d1();
    for (int j0 : {1, 2, 3}) {
      SliceSpec s{j0, {0.5, 0.5}};
      Vec2 z = project_to_slice(par, s, {0.3, 0.1});
      CHECK(std::abs(slice_curvature(par, s, z)) < 1e-9);
      try {
        direction_field(par, s, -0.2, 0.2, 8);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::zero_curvature);
      }
    }
  }

  TEST_CASE("cylinder slices are flat") {
    for (int j0 : {1, 2, 3}) {
      SliceSpec s{j0, {0.3, 0.2}};
      CHECK_THROWS_AS(direction_field(cylinder_disc(), s, -0.2, 0.2, 8), Error);
    }
  }

  TEST_CASE("direction field on the ball") {
    SliceSpec s{1, {0.0, 0.0}};
    auto f = direction_field(ball4(), s, -0.2, 0.2, 8);
    REQUIRE(f.samples.size() == 8);
    double prev = -1e9;
    for (std::size_t n = 0; n < 8; ++n) {
      const auto& d = f.samples[n];
      double arc = -0.2 + (n + 0.5) * 0.4 / 8.0;
      CHECK(d.point[0] == 0.0);
      CHECK(d.point[1] == 0.0);
      CHECK(norm(d.w) == doctest::Approx(1.0).epsilon(1e-12));
      // On the unit circle traced from (1, 0), w points along the radius at angle arc.
      CHECK(angle_of(d.w) == doctest::Approx(arc).epsilon(1e-6));
      CHECK(angle_of(d.w) > prev);
      prev = angle_of(d.w);
      CHECK(d.curvature == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(norm(f.a_star.center.v1 - d.normal.v1) <= f.a_star.radius + 1e-9);
    }
  }

  TEST_CASE("classification") {
    Vec2 u{0.6, 0.8};
    CHECK(classify_vector({u, u, -2.0 * u}) == VectorClass::degenerate);
    CHECK(classify_vector({u, -1.0 * u, {0.0, 0.0}}) == VectorClass::strongly_degenerate);
    GammaVec nd{{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}};
    CHECK(classify_vector(nd) == VectorClass::nondegenerate);
    for (double s : {1e-6, -3.0, 1e6}) {
      CHECK(classify_vector(nd.scaled(s)) == VectorClass::nondegenerate);
      CHECK(classify_vector(GammaVec{u, u, -2.0 * u}.scaled(s)) == VectorClass::degenerate);
    }
    try {
      classify_vector({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::zero_vector);
    }
  }

  TEST_CASE("configuration triangle") {
    auto t = configuration_triangle({{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}});
    CHECK(t.area == doctest::Approx(1.5));
    CHECK_FALSE(t.degenerate);
    Vec2 sum = t.edges[0] + t.edges[1] + t.edges[2];
    CHECK(norm(sum) == 0.0);
    Vec2 u{0.6, 0.8};
    auto d = configuration_triangle({u, u, -2.0 * u});
    CHECK(d.area == doctest::Approx(0.0));
    CHECK(d.degenerate);
    auto svg = triangle_svg(t, "configuration");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("v1 - v2") != std::string::npos);
  }
}
