#pragma once

#include <string>

#include "besilab/geometry.hpp"

namespace besilab {

// Minimal SVG writer; world y points up. Numbers are printed with fixed precision so the
// output is byte-stable.
class SvgCanvas {
 public:
  SvgCanvas(BBox world, double width_px, double margin = 0.05);

  void polygon(const ConvexPolygon& p, const std::string& fill, double opacity,
               const std::string& stroke = "none");
  void line(Vec2 a, Vec2 b, const std::string& stroke, double width_px = 1.0, bool arrow = false);
  void circle(Vec2 c, double r_px, const std::string& fill);
  void text(Vec2 at, const std::string& s, double size_px = 12.0);

  std::string str() const;

 private:
  std::string xy(Vec2 p) const;

  BBox world_;
  double scale_;
  double w_, h_;
  double pad_;
  std::string body_;
  bool has_arrow_ = false;
};

std::string fmt_num(double v, int precision = 6);

}  // namespace besilab
