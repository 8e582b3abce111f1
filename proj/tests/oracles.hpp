#pragma once

// Brute-force reference computations shared by the unit tests. They only use the
// plain data of the shapes (centre, direction, sizes), not the library's algorithms.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "besilab/geometry.hpp"

namespace oracle {

using besilab::BBox;
using besilab::OrientedRect;
using besilab::Vec2;

inline bool in_rect(const OrientedRect& r, Vec2 p) {
  Vec2 d = r.direction();
  double dx = p.x - r.center().x, dy = p.y - r.center().y;
  double along = dx * d.x + dy * d.y;
  double across = -dx * d.y + dy * d.x;
  return std::abs(along) <= 0.5 * r.length() && std::abs(across) <= 0.5 * r.width();
}

struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

// Monte Carlo area of {x : count(x) >= 1} inside `box`.
inline McEstimate union_area(const std::vector<OrientedRect>& rects, BBox box, std::uint64_t samples,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
  std::uint64_t hit = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vec2 p{ux(rng), uy(rng)};
    for (const auto& r : rects)
      if (in_rect(r, p)) {
        ++hit;
        break;
      }
  }
  double f = static_cast<double>(hit) / static_cast<double>(samples);
  double a = box.area();
  return {a * f, a * std::sqrt(f * (1.0 - f) / static_cast<double>(samples))};
}

inline BBox rect_box(const std::vector<OrientedRect>& rects) {
  BBox b{1e300, 1e300, -1e300, -1e300};
  for (const auto& r : rects) {
    Vec2 d = r.direction(), n{-d.y, d.x};
    for (double s : {-0.5, 0.5})
      for (double t : {-0.5, 0.5}) {
        Vec2 p{r.center().x + s * r.length() * d.x + t * r.width() * n.x,
               r.center().y + s * r.length() * d.y + t * r.width() * n.y};
        b.xmin = std::min(b.xmin, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.xmax = std::max(b.xmax, p.x);
        b.ymax = std::max(b.ymax, p.y);
      }
  }
  return b;
}

}  // namespace oracle
