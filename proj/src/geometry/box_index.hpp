#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "besilab/geometry.hpp"

namespace besilab::detail {

// Uniform bucket grid over polygon bounding boxes.
class BoxIndex {
 public:
  explicit BoxIndex(const std::vector<BBox>& boxes) : boxes_(boxes) {
    if (boxes.empty()) return;
    world_ = boxes[0];
    double mean_extent = 0.0;
    for (const BBox& b : boxes) {
      world_.xmin = std::min(world_.xmin, b.xmin);
      world_.ymin = std::min(world_.ymin, b.ymin);
      world_.xmax = std::max(world_.xmax, b.xmax);
      world_.ymax = std::max(world_.ymax, b.ymax);
      mean_extent += std::max(b.xmax - b.xmin, b.ymax - b.ymin);
    }
    mean_extent /= static_cast<double>(boxes.size());
    double w = std::max(world_.xmax - world_.xmin, 1e-12);
    double h = std::max(world_.ymax - world_.ymin, 1e-12);
    double cell = std::max(mean_extent * 0.5, std::max(w, h) / 256.0);
    nx_ = std::clamp(static_cast<int>(std::ceil(w / cell)), 1, 512);
    ny_ = std::clamp(static_cast<int>(std::ceil(h / cell)), 1, 512);
    cw_ = w / nx_;
    ch_ = h / ny_;
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::uint32_t i = 0; i < boxes.size(); ++i) {
      auto [x0, y0, x1, y1] = range(boxes[i]);
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) cells_[static_cast<std::size_t>(y) * nx_ + x].push_back(i);
    }
  }

  // Indices whose boxes meet `q`, sorted and unique.
  void query(const BBox& q, std::vector<std::uint32_t>& out) const {
    out.clear();
    if (boxes_.empty() || !world_.overlaps(q, 1e-9)) return;
    auto [x0, y0, x1, y1] = range(q);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        for (std::uint32_t i : cells_[static_cast<std::size_t>(y) * nx_ + x])
          if (boxes_[i].overlaps(q, 1e-9)) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

 private:
  struct Range {
    int x0, y0, x1, y1;
  };
  Range range(const BBox& b) const {
    auto cx = [&](double v) { return std::clamp(static_cast<int>(std::floor((v - world_.xmin) / cw_)), 0, nx_ - 1); };
    auto cy = [&](double v) { return std::clamp(static_cast<int>(std::floor((v - world_.ymin) / ch_)), 0, ny_ - 1); };
    return {cx(b.xmin), cy(b.ymin), cx(b.xmax), cy(b.ymax)};
  }

  const std::vector<BBox>& boxes_;
  BBox world_{};
  int nx_ = 1, ny_ = 1;
  double cw_ = 1.0, ch_ = 1.0;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace besilab::detail
