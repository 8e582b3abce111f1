#include <algorithm>

#include "besilab/besicovitch.hpp"
#include "besilab/svg.hpp"

namespace besilab {

namespace {

nlohmann::ordered_json rect_json(const OrientedRect& r) {
  nlohmann::ordered_json j;
  j["center"] = {r.center().x, r.center().y};
  j["direction"] = {r.direction().x, r.direction().y};
  j["length"] = r.length();
  j["width"] = r.width();
  return j;
}

}  // namespace

nlohmann::ordered_json family_to_json(const BesicovitchFamily& fam) {
  nlohmann::ordered_json j;
  j["depth"] = fam.params.depth;
  j["count"] = fam.size();
  j["params"] = {{"half_aperture", fam.params.half_aperture},
                 {"base_angle", fam.params.base_angle},
                 {"overlap", fam.params.overlap}};
  j["k_star"] = {kKStar.xmin, kKStar.ymin, kKStar.xmax, kKStar.ymax};
  j["achieved_eps"] = fam.achieved_eps;
  j["eps_err"] = fam.eps_err;
  auto& rects = j["rects"] = nlohmann::ordered_json::array();
  for (const auto& r : fam.rects) rects.push_back(rect_json(r));
  auto& reaches = j["reaches"] = nlohmann::ordered_json::array();
  for (const auto& r : fam.reaches) reaches.push_back(rect_json(r));
  return j;
}

std::string family_svg(const BesicovitchFamily& fam) {
  BBox box{0, 0, 0, 0};
  bool first = true;
  auto grow = [&](const OrientedRect& r) {
    BBox b = r.polygon().bbox();
    if (first) {
      box = b;
      first = false;
      return;
    }
    box.xmin = std::min(box.xmin, b.xmin);
    box.ymin = std::min(box.ymin, b.ymin);
    box.xmax = std::max(box.xmax, b.xmax);
    box.ymax = std::max(box.ymax, b.ymax);
  };
  for (const auto& r : fam.rects) grow(r);
  for (const auto& r : fam.reaches) grow(r);
  SvgCanvas svg(box, 800.0);
  for (const auto& r : fam.reaches) svg.polygon(r.polygon(), "#e08a1e", 0.45);
  for (const auto& r : fam.rects) svg.polygon(r.polygon(), "#1f5fbf", 0.35);
  svg.text({box.xmin, box.ymax}, "depth " + std::to_string(fam.params.depth) + ", |union| = " +
                                     fmt_num(fam.achieved_eps, 4));
  return svg.str();
}

}  // namespace besilab
