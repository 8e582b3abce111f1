#include <cmath>
#include <numbers>
#include <random>

#include "besilab/besicovitch.hpp"
#include "besilab/errors.hpp"
#include "besilab/geometry.hpp"
#include "besilab/parallel.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace besilab;

namespace {

ConvexPolygon unit_square(Vec2 shift = {0.0, 0.0}) {
  return ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}).translated(shift);
}

std::vector<OrientedRect> random_rects(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-1.0, 1.0), ang(0.0, std::numbers::pi), size(0.1, 0.8);
  std::vector<OrientedRect> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(Vec2{pos(rng), pos(rng)}, unit_from_angle(ang(rng)), size(rng), size(rng));
  return out;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("intersection of squares") {
    auto s = unit_square();
    CHECK(intersect_convex(s, s).area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(intersect_convex(s, unit_square({0.5, 0.0})).area() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(intersect_convex(s, unit_square({5.0, 0.0})).empty());
    CHECK(intersect_convex(s, unit_square({5.0, 0.0})).area() == 0.0);
  }

  TEST_CASE("intersection is commutative and shrinks area") {
    auto rects = random_rects(30, 7);
    for (std::size_t a = 0; a < rects.size(); ++a)
      for (std::size_t b = a + 1; b < rects.size(); ++b) {
        auto p = rects[a].polygon(), q = rects[b].polygon();
        double ab = intersect_convex(p, q).area(), ba = intersect_convex(q, p).area();
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12).scale(1.0));
        CHECK(ab <= std::min(p.area(), q.area()) + 1e-14);
      }
  }

  TEST_CASE("polygon normalisation") {
    ConvexPolygon cw({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}, {0.5, 0.0}});
    CHECK(cw.size() == 4);
    CHECK(cw.area() == doctest::Approx(1.0));
    ConvexPolygon sliver({{0.0, 0.0}, {1.0, 0.0}, {2.0, 1e-17}});
    CHECK(sliver.empty());
    OrientedRect r({1.0, 2.0}, {0.6, 0.8}, 2.0, 0.5);
    CHECK(r.polygon().area() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(OrientedRect({0.0, 0.0}, {1.0, 1.0}, 1.0, 1.0), Error);
  }

  TEST_CASE("union and overlap distribution examples") {
    std::vector<ConvexPolygon> two{unit_square(), unit_square({3.0, 0.0})};
    CHECK(union_measure(two, 1e-6).measure == doctest::Approx(2.0).epsilon(1e-12));
    std::vector<ConvexPolygon> twice{unit_square(), unit_square()};
    CHECK(union_measure(twice, 1e-6).measure == doctest::Approx(1.0).epsilon(1e-12));
    auto d = overlap_distribution(twice, 1e-6);
    CHECK(d.measure.size() == 1);
    CHECK(d.measure.at(2) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<ConvexPolygon> half{unit_square(), unit_square({0.5, 0.0})};
    auto h = overlap_distribution(half, 1e-6);
    CHECK(h.measure.at(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.measure.at(2) == doctest::Approx(0.5).epsilon(1e-12));
    std::vector<ConvexPolygon> apart;
    for (int n = 0; n < 8; ++n) apart.push_back(OrientedRect({0.0, 2.0 * n}, {1.0, 0.0}, 1.0, 0.125).polygon());
    auto a = overlap_distribution(apart, 1e-6);
    CHECK(a.measure.size() == 1);
    CHECK(a.measure.at(1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("count Lp integral examples") {
    std::vector<ConvexPolygon> apart;
    for (int n = 0; n < 16; ++n) apart.push_back(OrientedRect({3.0 * n, 0.0}, {0.0, 1.0}, 1.0, 1.0 / 16.0).polygon());
    for (double q : {0.5, 1.0, 4.0}) CHECK(count_lp_integral(apart, q, 1e-6).measure == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<ConvexPolygon> one{unit_square()};
    CHECK(count_lp_integral(one, 7.0, 1e-6).measure == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<ConvexPolygon> twice{unit_square(), unit_square()};
    CHECK(count_lp_integral(twice, 2.0, 1e-6).measure == doctest::Approx(4.0).epsilon(1e-12));
  }

  TEST_CASE("exact union against a Monte Carlo oracle on random rectangles") {
    auto rects = random_rects(25, 11);
    auto polys = polygons_of(rects);
    auto est = union_measure(polys, 1e-6);
    auto mc = oracle::union_area(rects, oracle::rect_box(rects), 2'000'000, 5);
    CHECK(std::abs(est.measure - mc.value) <= 3.0 * (mc.sigma + est.err_bound));
    double sum = 0.0, mx = 0.0;
    for (const auto& p : polys) {
      sum += p.area();
      mx = std::max(mx, p.area());
    }
    CHECK(est.measure <= sum + est.err_bound);
    CHECK(est.measure >= mx - est.err_bound);
    CHECK(count_lp_integral(polys, 1.0, 1e-6).measure == doctest::Approx(sum).epsilon(1e-12));
    auto dist = overlap_distribution(polys, 1e-6);
    double weighted = 0.0;
    for (const auto& [m, a] : dist.measure) {
      CHECK(a >= 0.0);
      weighted += m * a;
    }
    CHECK(weighted == doctest::Approx(sum).epsilon(1e-12));
  }

  TEST_CASE("translation invariance") {
    auto polys = polygons_of(random_rects(20, 3));
    std::vector<ConvexPolygon> moved;
    for (const auto& p : polys) moved.push_back(p.translated({13.25, -7.5}));
    auto a = union_measure(polys, 1e-6), b = union_measure(moved, 1e-6);
    CHECK(std::abs(a.measure - b.measure) <= a.err_bound + b.err_bound + 1e-12);
  }

  TEST_CASE("depth-6 Perron union against a 10^7-sample Monte Carlo oracle") {
    PerronParams p;
    p.depth = 6;
    auto fam = build_perron_family(p);
    auto mc = oracle::union_area(fam.rects, oracle::rect_box(fam.rects), 10'000'000, 17);
    CHECK(std::abs(fam.achieved_eps - mc.value) <= 3.0 * (mc.sigma + fam.eps_err));
  }

  TEST_CASE("raster backend agrees with the exact one") {
    PerronParams p;
    p.depth = 4;
    auto polys = build_perron_family(p).rect_polygons();
    UnionOptions raster;
    raster.method = UnionMethod::raster;
    auto r = union_measure(polys, 1e-3, raster);
    auto e = union_measure(polys, 1e-3);
    CHECK(r.err_bound <= 1e-3);
    CHECK(std::abs(r.measure - e.measure) <= r.err_bound + e.err_bound);
    auto rd = overlap_distribution(polys, 1e-3, raster);
    auto ed = overlap_distribution(polys, 1e-3);
    for (const auto& [m, a] : ed.measure) CHECK(std::abs(rd.measure[m] - a) <= rd.err_bound + ed.err_bound + 1e-12);
  }

  TEST_CASE("raster budget exhaustion is reported") {
    auto polys = polygons_of(random_rects(10, 2));
    UnionOptions raster;
    raster.method = UnionMethod::raster;
    raster.max_cells = 1000;
    try {
      union_measure(polys, 1e-8, raster);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::tolerance_unachievable);
    }
  }

  TEST_CASE("pairwise disjointness") {
    std::vector<ConvexPolygon> apart{unit_square(), unit_square({5.0, 5.0}), unit_square({-5.0, 0.0})};
    CHECK(pairwise_disjoint(apart).disjoint);
    std::vector<ConvexPolygon> touching{unit_square(), unit_square({1.0, 0.0})};
    CHECK(pairwise_disjoint(touching).disjoint);
    std::vector<ConvexPolygon> same{unit_square({9.0, 9.0}), unit_square(), unit_square()};
    auto d = pairwise_disjoint(same);
    CHECK_FALSE(d.disjoint);
    CHECK(d.first == 1);
    CHECK(d.second == 2);
  }

  TEST_CASE("depth-6 reaches are disjoint by exact pairwise intersection") {
    PerronParams p;
    p.depth = 6;
    auto reach = build_perron_family(p).reach_polygons();
    CHECK(pairwise_disjoint(reach).disjoint);
    double worst = 0.0;
    for (std::size_t a = 0; a < reach.size(); ++a)
      for (std::size_t b = a + 1; b < reach.size(); ++b) worst = std::max(worst, intersect_convex(reach[a], reach[b]).area());
    CHECK(worst < 1e-12);
  }

  TEST_CASE("results do not depend on the worker count") {
    PerronParams p;
    p.depth = 7;
    auto polys = build_perron_family(p).rect_polygons();
    set_worker_count(1);
    auto a = overlap_distribution(polys, 1e-3);
    set_worker_count(5);
    auto b = overlap_distribution(polys, 1e-3);
    set_worker_count(0);
    CHECK(a.measure == b.measure);
    CHECK(a.err_bound == b.err_bound);
  }
}
