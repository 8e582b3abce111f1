#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"
#include "besilab/kernels.hpp"
#include "besilab/parallel.hpp"
#include "common.hpp"

namespace besilab {

namespace {

constexpr std::size_t kBlock = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform points of the unit ball of Gamma, written as Phi^-1(eta) in R^4.
void fill_block(std::uint64_t seed, std::uint64_t block, std::size_t count, std::array<std::vector<double>, 4>& y) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(block)));
  auto uni = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  const double s2 = 1.0 / std::numbers::sqrt2, s6 = 1.0 / std::sqrt(6.0);
  for (auto& a : y) a.resize(count);
  for (std::size_t n = 0; n < count;) {
    double c[4] = {uni(), uni(), uni(), uni()};
    if (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3] >= 1.0) continue;
    y[0][n] = c[0] * s2 + c[2] * s6;
    y[1][n] = c[1] * s2 + c[3] * s6;
    y[2][n] = -c[0] * s2 + c[2] * s6;
    y[3][n] = -c[1] * s2 + c[3] * s6;
    ++n;
  }
}

bool positive_definite(const Mat4& a) {
  double l[16] = {};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c <= r; ++c) {
      double s = a[r * 4 + c];
      for (int m = 0; m < c; ++m) s -= l[r * 4 + m] * l[c * 4 + m];
      if (r == c) {
        if (!(s > 1e-12)) return false;
        l[r * 4 + r] = std::sqrt(s);
      } else {
        l[r * 4 + c] = s / l[c * 4 + c];
      }
    }
  return true;
}

bool is_zero(const Mat4& a) {
  return std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; });
}

}  // namespace

std::vector<TangencyEstimate> tangency_measures(const LevelSetDomain& domain, const Vec4& point,
                                                const TangencyOptions& opts) {
  if (opts.radii.empty()) throw Error(ErrorKind::invalid_argument, "no dilation radii given");
  for (double r : opts.radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "dilation radii must be positive");
  if (opts.samples == 0) throw Error(ErrorKind::invalid_argument, "sample count must be positive");
  (void)gamma_normal(domain, point);  // validates the boundary point
  const Vec4 g = domain.gradient(point);
  const auto& quad = domain.quadratic_form();
  kernels::QuadraticProbe probe;
  if (quad) {
    probe.a = quad->a;
    probe.g = quad->gradient(point);
    probe.f0 = quad->value(point);
  }

  const std::size_t R = opts.radii.size();
  const std::uint64_t blocks = (opts.samples + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> counts(blocks * R, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, opts.samples - b * kBlock));
    std::array<std::vector<double>, 4> y;
    fill_block(opts.seed, b, count, y);
    const double* cols[4] = {y[0].data(), y[1].data(), y[2].data(), y[3].data()};
    for (std::size_t ri = 0; ri < R; ++ri) {
      const double r = opts.radii[ri];
      std::uint64_t c = 0;
      if (quad) {
        c = kernels::sign_mismatch_count(probe, r, cols, count);
      } else {
        for (std::size_t n = 0; n < count; ++n) {
          Vec4 x{point[0] + y[0][n] / r, point[1] + y[1][n] / r, point[2] + y[2][n] / r, point[3] + y[3][n] / r};
          double gy = ((g[0] * y[0][n] + g[1] * y[1][n]) + g[2] * y[2][n]) + g[3] * y[3][n];
          c += (domain.value(x) < 0.0) != (gy < 0.0);
        }
      }
      counts[b * R + ri] = c;
    }
  });

  const double ball = std::numbers::pi * std::numbers::pi / 2.0;
  const double S = static_cast<double>(opts.samples);
  std::vector<TangencyEstimate> out(R);
  for (std::size_t ri = 0; ri < R; ++ri) {
    std::uint64_t c = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) c += counts[b * R + ri];
    double frac = static_cast<double>(c) / S;
    out[ri].mismatches = c;
    out[ri].measure = ball * frac;
    out[ri].std_error = ball * std::sqrt(frac * (1.0 - frac) / S);
  }
  return out;
}

CertificateReport tangency_certificate(const LevelSetDomain& domain, const Vec4& point, const TangencyOptions& opts) {
  auto est = tangency_measures(domain, point, opts);
  const auto& quad = domain.quadratic_form();
  const bool flat = quad && is_zero(quad->a);
  const bool convex = quad && positive_definite(quad->a);

  CertificateReport rep;
  rep.experiment = "tangency";
  rep.params["domain"] = domain.name();
  rep.params["point"] = point;
  rep.params["normal"] = detail::gamma_json(gamma_normal(domain, point));
  rep.params["radii"] = opts.radii;
  rep.params["samples"] = opts.samples;
  rep.params["seed"] = opts.seed;
  rep.params["strictly_convex"] = convex;
  rep.params["notes"] = nlohmann::ordered_json::array(
      {"Measure of the symmetric difference of the dilated domain and the tangent half-space {eta . v < 0} "
       "inside the unit ball of Gamma; the same samples are used for every r."});

  bool all_zero = true, decreasing = true;
  std::vector<double> lr, lm;
  for (std::size_t ri = 0; ri < est.size(); ++ri) {
    nlohmann::ordered_json row;
    row["r"] = opts.radii[ri];
    row["measure"] = est[ri].measure;
    row["std_error"] = est[ri].std_error;
    row["mismatches"] = est[ri].mismatches;
    rep.rows.push_back(row);
    all_zero = all_zero && est[ri].mismatches == 0;
    if (ri > 0) decreasing = decreasing && est[ri].measure < est[ri - 1].measure;
    if (est[ri].measure > 0.0) {
      lr.push_back(std::log(opts.radii[ri]));
      lm.push_back(std::log(est[ri].measure));
    }
  }
  rep.verdict("decreasing", all_zero || decreasing);
  if (flat) rep.verdict("exact_tangency_zero", all_zero);
  if (lr.size() >= 2 && lr.size() == est.size()) {
    auto f = fit_line(lr, lm);
    rep.fits["log_measure_vs_log_r"] = {{"slope", f.slope}, {"intercept", f.intercept}};
    if (convex) rep.verdict("slope", std::abs(f.slope - opts.slope) <= opts.slope_tolerance);
  } else if (convex) {
    rep.verdict("slope", false);
  }
  return rep;
}

}  // namespace besilab
