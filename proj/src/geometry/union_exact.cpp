#include <algorithm>
#include <cmath>
#include <limits>

#include "besilab/errors.hpp"
#include "besilab/geometry.hpp"
#include "besilab/parallel.hpp"
#include "box_index.hpp"

namespace besilab {

namespace detail {

namespace {

struct Interval {
  double lo, hi;
};

// Portion of segment a->b (parameter s in [0,1]) whose points, nudged into the interior
// of their own polygon i, lie in polygon j. Boundaries of j that coincide with the
// segment and face the same way count as covering only when j < i.
bool clip_segment(Vec2 a, Vec2 b, Vec2 seg_dir, const ConvexPolygon& pj, bool j_before_i,
                  Interval& out) {
  double lo = 0.0, hi = 1.0;
  const std::size_t n = pj.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 q = pj[k];
    Vec2 e = pj[(k + 1) % n] - q;
    double inv = 1.0 / norm(e);
    double f0 = cross(e, a - q) * inv;
    double f1 = cross(e, b - q) * inv;
    if (std::abs(f0) <= kGeomTol && std::abs(f1) <= kGeomTol) {
      if (dot(e, seg_dir) > 0.0 && j_before_i) continue;
      return false;
    }
    double df = f1 - f0;
    if (df == 0.0) {
      if (f0 <= 0.0) return false;
      continue;
    }
    double s = f0 / (f0 - f1);
    if (df > 0.0) {
      lo = std::max(lo, s);
    } else {
      hi = std::min(hi, s);
    }
    if (lo >= hi) return false;
  }
  out = {lo, hi};
  return true;
}

}  // namespace

LevelAreas level_areas_exact(std::span<const ConvexPolygon> polys) {
  LevelAreas res;
  res.at_least.assign(2, 0.0);
  if (polys.empty()) return res;

  std::vector<BBox> boxes;
  boxes.reserve(polys.size());
  BBox world{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : polys) {
    BBox b = p.empty() ? BBox{0, 0, -1, -1} : p.bbox();
    boxes.push_back(b);
    if (p.empty()) continue;
    world.xmin = std::min(world.xmin, b.xmin);
    world.ymin = std::min(world.ymin, b.ymin);
    world.xmax = std::max(world.xmax, b.xmax);
    world.ymax = std::max(world.ymax, b.ymax);
  }
  if (!(world.xmin <= world.xmax)) return res;
  const Vec2 ref{0.5 * (world.xmin + world.xmax), 0.5 * (world.ymin + world.ymax)};
  BoxIndex index(boxes);

  struct Partial {
    std::vector<double> level;
    double abs_sum = 0.0;
  };
  const std::size_t n = polys.size();
  std::vector<Partial> partial(n);

  parallel_for(n, [&](std::size_t i) {
    const ConvexPolygon& pi = polys[i];
    if (pi.empty()) return;
    Partial& out = partial[i];
    std::vector<std::uint32_t> cand;
    std::vector<std::pair<double, int>> events;
    std::vector<double> len_at;
    for (std::size_t e = 0; e < pi.size(); ++e) {
      Vec2 a = pi[e], b = pi[(e + 1) % pi.size()];
      BBox sb{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
      index.query(sb, cand);
      events.clear();
      for (std::uint32_t j : cand) {
        if (j == i || polys[j].empty()) continue;
        Interval iv{};
        if (clip_segment(a, b, b - a, polys[j], j < i, iv)) {
          events.push_back({iv.lo, +1});
          events.push_back({iv.hi, -1});
        }
      }
      std::sort(events.begin(), events.end());
      len_at.assign(1, 0.0);
      int depth = 0;
      double s_prev = 0.0;
      for (auto [s, d] : events) {
        if (s > s_prev) {
          if (static_cast<std::size_t>(depth) >= len_at.size()) len_at.resize(depth + 1, 0.0);
          len_at[depth] += s - s_prev;
          s_prev = s;
        }
        depth += d;
      }
      if (s_prev < 1.0) {
        if (static_cast<std::size_t>(depth) >= len_at.size()) len_at.resize(depth + 1, 0.0);
        len_at[depth] += 1.0 - s_prev;
      }
      double w = 0.5 * cross(a - ref, b - ref);
      if (out.level.size() < len_at.size() + 1) out.level.resize(len_at.size() + 1, 0.0);
      for (std::size_t c = 0; c < len_at.size(); ++c) {
        if (len_at[c] == 0.0) continue;
        out.level[c + 1] += w * len_at[c];
      }
      out.abs_sum += std::abs(w);
    }
  });

  double abs_sum = 0.0;
  for (const Partial& p : partial) {
    if (res.at_least.size() < p.level.size()) res.at_least.resize(p.level.size(), 0.0);
    for (std::size_t m = 1; m < p.level.size(); ++m) res.at_least[m] += p.level[m];
    abs_sum += p.abs_sum;
  }
  res.err_bound = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return res;
}

}  // namespace detail

namespace {

OverlapDistribution distribution_from_levels(const detail::LevelAreas& lv) {
  OverlapDistribution d;
  d.err_bound = lv.err_bound;
  for (std::size_t m = 1; m < lv.at_least.size(); ++m) {
    double next = m + 1 < lv.at_least.size() ? lv.at_least[m + 1] : 0.0;
    double v = lv.at_least[m] - next;
    if (std::abs(v) <= lv.err_bound) continue;
    d.measure[static_cast<int>(m)] = std::max(v, 0.0);
  }
  return d;
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
}

}  // namespace

MeasureEstimate union_measure(std::span<const ConvexPolygon> polys, double tol,
                              const UnionOptions& opts) {
  check_tol(tol);
  if (opts.method == UnionMethod::raster) {
    auto d = detail::overlap_distribution_raster(polys, tol, opts.max_cells, true);
    double m = 0.0;
    for (auto [k, v] : d.measure) m += v;
    return {m, d.err_bound};
  }
  auto lv = detail::level_areas_exact(polys);
  if (lv.err_bound > tol)
    throw Error(ErrorKind::tolerance_unachievable, "rounding bound exceeds tolerance");
  return {lv.at_least.size() > 1 ? std::max(lv.at_least[1], 0.0) : 0.0, lv.err_bound};
}

OverlapDistribution overlap_distribution(std::span<const ConvexPolygon> polys, double tol,
                                         const UnionOptions& opts) {
  check_tol(tol);
  if (opts.method == UnionMethod::raster)
    return detail::overlap_distribution_raster(polys, tol, opts.max_cells, false);
  auto lv = detail::level_areas_exact(polys);
  if (lv.err_bound > tol)
    throw Error(ErrorKind::tolerance_unachievable, "rounding bound exceeds tolerance");
  return distribution_from_levels(lv);
}

MeasureEstimate count_lp_integral(std::span<const ConvexPolygon> polys, double q, double tol,
                                  const UnionOptions& opts) {
  if (!(q > 0.0)) throw Error(ErrorKind::invalid_argument, "exponent q must be positive");
  auto d = overlap_distribution(polys, tol, opts);
  MeasureEstimate out;
  int max_m = 1;
  for (auto [m, v] : d.measure) {
    out.measure += v * std::pow(static_cast<double>(m), q);
    max_m = std::max(max_m, m);
  }
  out.err_bound = d.err_bound * std::pow(static_cast<double>(max_m), q);
  return out;
}

}  // namespace besilab
