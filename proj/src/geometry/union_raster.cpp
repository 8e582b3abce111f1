#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "besilab/errors.hpp"
#include "besilab/geometry.hpp"

namespace besilab::detail {

namespace {

enum class Rel { outside, inside, partial };

Rel classify(const ConvexPolygon& p, const BBox& c, const BBox& pbox) {
  if (!pbox.overlaps(c)) return Rel::outside;
  const Vec2 corners[4] = {{c.xmin, c.ymin}, {c.xmax, c.ymin}, {c.xmax, c.ymax}, {c.xmin, c.ymax}};
  bool all_in = true;
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    Vec2 a = p[k];
    Vec2 e = p[(k + 1) % n] - a;
    int in = 0;
    for (const Vec2& q : corners) in += cross(e, q - a) >= 0.0;
    if (in == 0) return Rel::outside;
    all_in = all_in && in == 4;
  }
  return all_in ? Rel::inside : Rel::partial;
}

struct Cell {
  BBox box;
  int inside;
  std::vector<std::uint32_t> partial;
};

}  // namespace

OverlapDistribution overlap_distribution_raster(std::span<const ConvexPolygon> polys, double tol,
                                                std::size_t max_cells, bool union_only) {
  OverlapDistribution out;
  std::vector<BBox> boxes;
  BBox world{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  std::vector<std::uint32_t> all;
  for (std::uint32_t i = 0; i < polys.size(); ++i) {
    boxes.push_back(polys[i].empty() ? BBox{0, 0, -1, -1} : polys[i].bbox());
    if (polys[i].empty()) continue;
    all.push_back(i);
    world.xmin = std::min(world.xmin, boxes[i].xmin);
    world.ymin = std::min(world.ymin, boxes[i].ymin);
    world.xmax = std::max(world.xmax, boxes[i].xmax);
    world.ymax = std::max(world.ymax, boxes[i].ymax);
  }
  if (all.empty()) return out;
  double side = std::max(world.xmax - world.xmin, world.ymax - world.ymin);
  std::vector<Cell> level{{{world.xmin, world.ymin, world.xmin + side, world.ymin + side}, 0, all}};
  std::size_t used = 0;

  for (;;) {
    std::vector<Cell> unresolved;
    double err = 0.0;
    for (Cell& cell : level) {
      ++used;
      std::vector<std::uint32_t> still;
      for (std::uint32_t i : cell.partial) {
        Rel r = classify(polys[i], cell.box, boxes[i]);
        if (r == Rel::inside) ++cell.inside;
        if (r == Rel::partial) still.push_back(i);
      }
      cell.partial.swap(still);
      bool resolved = cell.partial.empty() || (union_only && cell.inside > 0);
      if (resolved) {
        int m = union_only ? std::min(cell.inside, 1) : cell.inside;
        if (m > 0) out.measure[m] += cell.box.area();
      } else {
        err += cell.box.area();
        unresolved.push_back(std::move(cell));
      }
    }
    if (err <= tol) {
      for (const Cell& cell : unresolved) {
        Vec2 mid{0.5 * (cell.box.xmin + cell.box.xmax), 0.5 * (cell.box.ymin + cell.box.ymax)};
        int m = cell.inside;
        for (std::uint32_t i : cell.partial) m += polys[i].contains(mid);
        if (union_only) m = std::min(m, 1);
        if (m > 0) out.measure[m] += cell.box.area();
      }
      out.err_bound = err;
      return out;
    }
    if (used + 4 * unresolved.size() > max_cells)
      throw Error(ErrorKind::tolerance_unachievable,
                  "raster budget exhausted with boundary area " + std::to_string(err));
    level.clear();
    level.reserve(4 * unresolved.size());
    for (Cell& cell : unresolved) {
      double mx = 0.5 * (cell.box.xmin + cell.box.xmax), my = 0.5 * (cell.box.ymin + cell.box.ymax);
      const BBox kids[4] = {{cell.box.xmin, cell.box.ymin, mx, my},
                            {mx, cell.box.ymin, cell.box.xmax, my},
                            {cell.box.xmin, my, mx, cell.box.ymax},
                            {mx, my, cell.box.xmax, cell.box.ymax}};
      for (const BBox& k : kids) level.push_back({k, cell.inside, cell.partial});
    }
  }
}

}  // namespace besilab::detail
