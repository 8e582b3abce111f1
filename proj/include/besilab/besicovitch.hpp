#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "besilab/geometry.hpp"
#include "json.hpp"

namespace besilab {

struct PerronParams {
  int depth = 6;
  double half_aperture = std::numbers::pi / 8.0;
  double base_angle = 0.0;
  // Crossing height (fraction of rectangle length) of the finest sibling merge.
  // Coarser stages cross progressively farther from the reach side, up to 1.
  double overlap = 0.3;
};

// The box K* every rectangle must fit in.
inline constexpr BBox kKStar{-4.0, -4.0, 4.0, 4.0};

struct BesicovitchFamily {
  PerronParams params;
  std::vector<OrientedRect> rects;
  std::vector<OrientedRect> reaches;  // rects[n] translated by -2 * direction(n)
  double achieved_eps = 0.0;
  double eps_err = 0.0;

  std::size_t size() const { return rects.size(); }
  Vec2 direction(std::size_t n) const { return rects[n].direction(); }
  std::vector<ConvexPolygon> rect_polygons() const { return polygons_of(rects); }
  std::vector<ConvexPolygon> reach_polygons() const { return polygons_of(reaches); }
};

BesicovitchFamily build_perron_family(const PerronParams& params);

// Pairs each wanted direction with the nearest unused rectangle direction and rotates that
// rectangle about its centre onto it; rects[n] of the result is parallel to wanted[n].
BesicovitchFamily assign_directions(const BesicovitchFamily& family, std::span<const Vec2> wanted);

struct FamilyVerification {
  bool shape_ok = false;
  bool eps_ok = false;
  bool reaches_disjoint = false;
  bool contained = false;
  double measured_eps = 0.0;
  DisjointnessResult reach_overlap;

  bool all() const { return shape_ok && eps_ok && reaches_disjoint && contained; }
};

FamilyVerification verify_family(const BesicovitchFamily& family, double eps_target);

nlohmann::ordered_json family_to_json(const BesicovitchFamily& family);
std::string family_svg(const BesicovitchFamily& family);

}  // namespace besilab
