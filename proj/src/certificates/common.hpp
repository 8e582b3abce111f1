#pragma once

#include <cmath>
#include <span>
#include <string>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"
#include "besilab/svg.hpp"

namespace besilab::detail {

// ||(sum_n indicator(P_n)^2)^(1/2)||_p, with p = inf read as the sup norm.
inline double family_norm(std::span<const ConvexPolygon> polys, const Exponent& p, double tol) {
  if (p.infinite()) return polys.empty() ? 0.0 : 1.0;
  if (!(p.value > 0.0)) throw Error(ErrorKind::invalid_argument, "negative exponent " + p.text + " for a square function");
  return square_function_norm(polys, p.value, tol);
}

inline nlohmann::ordered_json vec_json(Vec2 v) { return nlohmann::ordered_json::array({v.x, v.y}); }

inline nlohmann::ordered_json gamma_json(const GammaVec& v) {
  return nlohmann::ordered_json::array({vec_json(v.v1), vec_json(v.v2), vec_json(v.v3)});
}

inline BBox bbox_of(std::span<const ConvexPolygon> polys) {
  BBox box{1e300, 1e300, -1e300, -1e300};
  for (const auto& p : polys) {
    if (p.empty()) continue;
    BBox b = p.bbox();
    box.xmin = std::min(box.xmin, b.xmin);
    box.ymin = std::min(box.ymin, b.ymin);
    box.xmax = std::max(box.xmax, b.xmax);
    box.ymax = std::max(box.ymax, b.ymax);
  }
  return box;
}

}  // namespace besilab::detail
