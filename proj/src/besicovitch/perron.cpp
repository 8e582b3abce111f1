#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "besilab/besicovitch.hpp"
#include "besilab/errors.hpp"

namespace besilab {

namespace {

void validate(const PerronParams& p) {
  if (p.depth < 0 || p.depth > 16)
    throw Error(ErrorKind::invalid_argument, "depth must be in [0, 16]");
  if (!(p.half_aperture > 0.0) || p.half_aperture > std::numbers::pi / 8.0 + 1e-12)
    throw Error(ErrorKind::invalid_argument, "half_aperture must be in (0, pi/8]");
  if (!(p.overlap > 0.0 && p.overlap < 1.0))
    throw Error(ErrorKind::invalid_argument, "overlap must be in (0, 1)");
  if (!std::isfinite(p.base_angle))
    throw Error(ErrorKind::invalid_argument, "base_angle must be finite");
}

OrientedRect reach_of(const OrientedRect& r) { return r.translated(-2.0 * r.direction()); }

bool inside_kstar(const OrientedRect& r, double slack = 0.0) {
  BBox b = r.polygon().bbox();
  BBox k{kKStar.xmin - slack - 1e-12, kKStar.ymin - slack - 1e-12, kKStar.xmax + slack + 1e-12,
         kKStar.ymax + slack + 1e-12};
  return k.contains(b);
}

void finish(BesicovitchFamily& fam) {
  fam.reaches.clear();
  fam.reaches.reserve(fam.rects.size());
  for (const auto& r : fam.rects) fam.reaches.push_back(reach_of(r));
  auto polys = fam.rect_polygons();
  auto est = union_measure(polys, 1e-3);
  fam.achieved_eps = est.measure;
  fam.eps_err = est.err_bound;
}

void require_disjoint_reaches(const BesicovitchFamily& fam) {
  auto reach = fam.reach_polygons();
  auto d = pairwise_disjoint(reach);
  if (!d.disjoint)
    throw Error(ErrorKind::construction_failure,
                "reaches " + std::to_string(d.first) + " and " + std::to_string(d.second) +
                    " overlap at depth " + std::to_string(fam.params.depth));
  for (std::size_t n = 0; n < fam.size(); ++n) {
    if (!inside_kstar(fam.rects[n]))
      throw Error(ErrorKind::construction_failure,
                  "rectangle " + std::to_string(n) + " leaves K*");
  }
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

}  // namespace

BesicovitchFamily build_perron_family(const PerronParams& params) {
  validate(params);
  const int k = params.depth;
  const std::size_t N = std::size_t{1} << k;
  const double width = 1.0 / static_cast<double>(N);

  std::vector<double> psi(N), tn(N), offset(N, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    psi[n] = -params.half_aperture + (static_cast<double>(n) + 0.5) * 2.0 * params.half_aperture / N;
    tn[n] = std::tan(psi[n]);
  }

  // Bottom-up merge. Stage j joins sibling groups of size 2^(k-j); the right sibling is
  // slid sideways until the two mean axes meet at height c_j.
  for (int j = k; j >= 1; --j) {
    const double c = 1.0 - (1.0 - params.overlap) * (j - 0.5) / k;
    const std::size_t gs = std::size_t{1} << (k - j + 1), half = gs / 2;
    for (std::size_t g0 = 0; g0 < N; g0 += gs) {
      double ml = 0.0, mr = 0.0;
      for (std::size_t n = g0; n < g0 + half; ++n) ml += offset[n] + c * tn[n];
      for (std::size_t n = g0 + half; n < g0 + gs; ++n) mr += offset[n] + c * tn[n];
      double shift = (ml - mr) / static_cast<double>(half);
      for (std::size_t n = g0 + half; n < g0 + gs; ++n) offset[n] += shift;
    }
  }

  const Vec2 eb = unit_from_angle(params.base_angle);
  const Vec2 ep = perp(eb);
  BesicovitchFamily fam;
  fam.params = params;
  fam.rects.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    Vec2 d = unit_from_angle(params.base_angle + psi[n]);
    Vec2 start = offset[n] * ep;
    fam.rects.emplace_back(start + 0.5 * d, d, 1.0, width);
  }

  BBox box = fam.rects[0].polygon().bbox();
  for (const auto& r : fam.rects) {
    BBox b = r.polygon().bbox();
    box.xmin = std::min(box.xmin, b.xmin);
    box.ymin = std::min(box.ymin, b.ymin);
    box.xmax = std::max(box.xmax, b.xmax);
    box.ymax = std::max(box.ymax, b.ymax);
  }
  Vec2 shift{-0.5 * (box.xmin + box.xmax), -0.5 * (box.ymin + box.ymax)};
  for (auto& r : fam.rects) r = r.translated(shift);

  finish(fam);
  require_disjoint_reaches(fam);
  return fam;
}

BesicovitchFamily assign_directions(const BesicovitchFamily& family, std::span<const Vec2> wanted) {
  const std::size_t N = family.size();
  if (wanted.size() != N)
    throw Error(ErrorKind::invalid_argument, "wanted direction count differs from family size");
  const double spacing = N > 0 ? 2.0 * family.params.half_aperture / static_cast<double>(N) : 0.0;

  std::vector<double> have(N);
  for (std::size_t m = 0; m < N; ++m) have[m] = angle_of(family.direction(m));
  std::vector<bool> used(N, false);

  BesicovitchFamily out;
  out.params = family.params;
  out.rects.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    double len = norm(wanted[n]);
    if (!(len > 0.0)) throw Error(ErrorKind::invalid_argument, "wanted direction is zero");
    double a = angle_of(wanted[n]);
    std::size_t best = N;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < N; ++m) {
      if (used[m]) continue;
      double diff = std::abs(wrap_angle(a - have[m]));
      if (diff < best_diff) {
        best_diff = diff;
        best = m;
      }
    }
    if (best == N || best_diff > spacing + 1e-12)
      throw Error(ErrorKind::direction_mismatch,
                  "wanted direction " + std::to_string(n) + " is " + std::to_string(best_diff) +
                      " rad from every available direction (spacing " + std::to_string(spacing) + ")");
    used[best] = true;
    const OrientedRect& r = family.rects[best];
    OrientedRect turned(r.center(), wanted[n] / len, r.length(), r.width());
    out.rects.push_back(turned);
  }
  finish(out);
  require_disjoint_reaches(out);
  return out;
}

FamilyVerification verify_family(const BesicovitchFamily& family, double eps_target) {
  FamilyVerification v;
  const std::size_t N = family.size();
  const double width = N > 0 ? 1.0 / static_cast<double>(N) : 0.0;
  v.shape_ok = N > 0 && family.reaches.size() == N && (N & (N - 1)) == 0;
  for (std::size_t n = 0; v.shape_ok && n < N; ++n) {
    const auto& r = family.rects[n];
    const auto& q = family.reaches[n];
    v.shape_ok = std::abs(r.length() - 1.0) <= 1e-12 && std::abs(r.width() - width) <= 1e-12 &&
                 std::abs(norm(r.direction()) - 1.0) <= 1e-12 &&
                 norm(q.center() - (r.center() - 2.0 * r.direction())) <= 1e-12 &&
                 norm(q.direction() - r.direction()) <= 1e-12;
  }
  auto polys = family.rect_polygons();
  v.measured_eps = union_measure(polys, 1e-3).measure;
  v.eps_ok = v.measured_eps < eps_target;
  auto reach = family.reach_polygons();
  v.reach_overlap = pairwise_disjoint(reach);
  v.reaches_disjoint = v.reach_overlap.disjoint;
  v.contained = true;
  for (const auto& r : family.rects) v.contained = v.contained && inside_kstar(r);
  for (const auto& r : family.reaches) v.contained = v.contained && inside_kstar(r, 2.0);
  return v;
}

}  // namespace besilab
