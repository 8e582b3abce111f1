#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "besilab/kernels.hpp"
#include "doctest.h"

using namespace besilab;
using namespace besilab::kernels;

namespace {

// Monte Carlo fraction of the box prod [-a_i/2, a_i/2] where s + sum x_i > 0.
double box_fraction(double s, const std::vector<double>& a, std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int hit = 0;
  for (int k = 0; k < samples; ++k) {
    double t = s;
    for (double w : a) t += w * u(rng);
    hit += t > 0.0;
  }
  return static_cast<double>(hit) / samples;
}

struct Row {
  std::vector<double> s, br, bi, cr, ci;
  ProductRow view() const { return {s.data(), br.data(), bi.data(), cr.data(), ci.data(), s.size()}; }
};

Row random_row(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Row r;
  for (std::size_t q = 0; q < n; ++q) {
    r.s.push_back(0.3 * u(rng));
    r.br.push_back(u(rng));
    r.bi.push_back(u(rng));
    r.cr.push_back(u(rng));
    r.ci.push_back(u(rng));
  }
  return r;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("cell fraction against Monte Carlo") {
    std::mt19937_64 rng(3);
    const std::vector<std::vector<double>> boxes{{0.2}, {0.1, 0.3}, {0.05, 0.1, 0.2, 0.15}, {0.2, 0.0, 0.1, 0.0}};
    for (const auto& a : boxes) {
      auto f = CellFraction::from_widths(a.data(), static_cast<int>(a.size()));
      double total = 0.0;
      for (double w : a) total += w;
      for (double s : {-0.6 * total, -0.2 * total, 0.0, 0.1 * total, 0.45 * total}) {
        const int S = 400000;
        double mc = box_fraction(s, a, rng, S);
        double sigma = std::sqrt(std::max(mc * (1.0 - mc), 1e-12) / S);
        CHECK(std::abs(f(s) - mc) <= 4.0 * sigma + 1e-6);
      }
      for (double s : {0.01, 0.07, 0.2}) CHECK(f(s) + f(-s) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(f(0.0) == doctest::Approx(0.5).epsilon(1e-13));
      CHECK(f(total) == 1.0);
      CHECK(f(-total) == 0.0);
    }
    double zero[2] = {0.0, 0.0};
    auto step = CellFraction::from_widths(zero, 2);
    CHECK(step.dim == 0);
    CHECK(step(1e-3) == 1.0);
    CHECK(step(-1e-3) == 0.0);
    CHECK(step(0.0) == 0.5);
  }

  TEST_CASE("masked product sum matches a naive loop") {
    std::mt19937_64 rng(12);
    double widths[4] = {0.02, 0.03, 0.01, 0.04};
    auto w = CellFraction::from_widths(widths, 4);
    for (std::size_t n : {1u, 3u, 4u, 17u, 256u}) {
      Row r = random_row(n, rng);
      for (double s0 : {-0.05, 0.0, 0.2}) {
        std::complex<double> naive = 0.0;
        for (std::size_t q = 0; q < n; ++q)
          naive += w(s0 + r.s[q]) * std::complex<double>(r.br[q], r.bi[q]) * std::complex<double>(r.cr[q], r.ci[q]);
        auto got = scalar::masked_product_sum(s0, r.view(), w);
        CHECK(std::abs(got - naive) < 1e-12 * (1.0 + std::abs(naive)) + 1e-13);
      }
    }
  }

  TEST_CASE("scalar and AVX2 kernels are bit-identical") {
    if (!cpu_has_avx2()) return;
    std::mt19937_64 rng(77);
    double widths[4] = {0.02, 0.0, 0.01, 0.04};
    auto w = CellFraction::from_widths(widths, 4);
    for (std::size_t n : {1u, 5u, 8u, 33u, 1000u}) {
      Row r = random_row(n, rng);
      for (double s0 : {-0.4, -0.01, 0.0, 0.03, 0.4}) {
        auto a = scalar::masked_product_sum(s0, r.view(), w);
        auto b = avx2::masked_product_sum(s0, r.view(), w);
        CHECK(same_bits(a.real(), b.real()));
        CHECK(same_bits(a.imag(), b.imag()));
      }
    }
    std::normal_distribution<double> g;
    QuadraticProbe probe;
    for (auto& x : probe.a) x = g(rng);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) probe.a[4 * i + j] = probe.a[4 * j + i];
    for (auto& x : probe.g) x = g(rng);
    probe.f0 = 0.0;
    const std::size_t n = 1001;
    std::vector<double> c[4];
    for (auto& v : c)
      for (std::size_t q = 0; q < n; ++q) v.push_back(g(rng));
    const double* x[4] = {c[0].data(), c[1].data(), c[2].data(), c[3].data()};
    for (double r : {1.0, 4.0, 32.0}) {
      std::uint64_t naive = 0;
      for (std::size_t q = 0; q < n; ++q) {
        double lin = 0.0, quad = 0.0;
        for (int i = 0; i < 4; ++i) {
          lin += probe.g[i] * x[i][q];
          for (int j = 0; j < 4; ++j) quad += x[i][q] * probe.a[4 * i + j] * x[j][q];
        }
        naive += ((probe.f0 + lin / r + quad / (r * r)) < 0.0) != (lin < 0.0);
      }
      auto a = scalar::sign_mismatch_count(probe, r, x, n);
      CHECK(a == avx2::sign_mismatch_count(probe, r, x, n));
      CHECK(static_cast<double>(a) == doctest::Approx(static_cast<double>(naive)).epsilon(0.01));
    }
  }

  TEST_CASE("forcing the scalar path") {
    force_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    force_isa(std::nullopt);
    if (cpu_has_avx2() && !std::getenv("BESICOVITCH_LAB_SIMD")) CHECK(active_isa() == Isa::avx2);
    CHECK(std::string(to_string(Isa::scalar)) == "scalar");
  }
}
