#include "besilab/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace besilab {

std::string fmt_num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s(buf);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) return "0";
  return s;
}

SvgCanvas::SvgCanvas(BBox world, double width_px, double margin) : world_(world) {
  double ww = std::max(world.xmax - world.xmin, 1e-9);
  double wh = std::max(world.ymax - world.ymin, 1e-9);
  pad_ = margin * width_px;
  scale_ = (width_px - 2 * pad_) / ww;
  w_ = width_px;
  h_ = wh * scale_ + 2 * pad_;
}

std::string SvgCanvas::xy(Vec2 p) const {
  double x = pad_ + (p.x - world_.xmin) * scale_;
  double y = pad_ + (world_.ymax - p.y) * scale_;
  return fmt_num(x, 3) + "," + fmt_num(y, 3);
}

void SvgCanvas::polygon(const ConvexPolygon& p, const std::string& fill, double opacity,
                        const std::string& stroke) {
  if (p.empty()) return;
  body_ += "<polygon points=\"";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) body_ += ' ';
    body_ += xy(p[i]);
  }
  body_ += "\" fill=\"" + fill + "\" fill-opacity=\"" + fmt_num(opacity, 3) + "\" stroke=\"" +
           stroke + "\" stroke-width=\"0.3\"/>\n";
}

void SvgCanvas::line(Vec2 a, Vec2 b, const std::string& stroke, double width_px, bool arrow) {
  auto pa = xy(a), pb = xy(b);
  auto ca = pa.find(','), cb = pb.find(',');
  body_ += "<line x1=\"" + pa.substr(0, ca) + "\" y1=\"" + pa.substr(ca + 1) + "\" x2=\"" +
           pb.substr(0, cb) + "\" y2=\"" + pb.substr(cb + 1) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"" + fmt_num(width_px, 2) + "\"" +
           (arrow ? " marker-end=\"url(#arrow)\"" : "") + "/>\n";
  has_arrow_ = has_arrow_ || arrow;
}

void SvgCanvas::circle(Vec2 c, double r_px, const std::string& fill) {
  auto p = xy(c);
  auto k = p.find(',');
  body_ += "<circle cx=\"" + p.substr(0, k) + "\" cy=\"" + p.substr(k + 1) + "\" r=\"" +
           fmt_num(r_px, 2) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::text(Vec2 at, const std::string& s, double size_px) {
  auto p = xy(at);
  auto k = p.find(',');
  body_ += "<text x=\"" + p.substr(0, k) + "\" y=\"" + p.substr(k + 1) + "\" font-size=\"" +
           fmt_num(size_px, 1) + "\" font-family=\"sans-serif\">" + s + "</text>\n";
}

std::string SvgCanvas::str() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_num(w_, 0) +
                    "\" height=\"" + fmt_num(h_, 0) + "\" viewBox=\"0 0 " + fmt_num(w_, 0) + " " +
                    fmt_num(h_, 0) + "\">\n";
  if (has_arrow_) {
    out +=
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n";
  }
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

}  // namespace besilab
