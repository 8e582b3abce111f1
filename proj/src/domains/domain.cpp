#include <cmath>
#include <sstream>

#include "besilab/domains.hpp"
#include "besilab/errors.hpp"

namespace besilab {

double QuadraticForm::value(const Vec4& x) const {
  double s = c;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += a[i * 4 + j] * x[j];
    s += x[i] * row + b[i] * x[i];
  }
  return s;
}

Vec4 QuadraticForm::gradient(const Vec4& x) const {
  Vec4 g{};
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += a[i * 4 + j] * x[j];
    g[i] = 2.0 * row + b[i];
  }
  return g;
}

LevelSetDomain LevelSetDomain::quadratic(std::string name, QuadraticForm q) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (q.a[i * 4 + j] != q.a[j * 4 + i])
        throw Error(ErrorKind::invalid_argument, "quadratic form must be symmetric");
  LevelSetDomain d;
  d.name_ = std::move(name);
  d.quad_ = q;
  d.f_ = [q](const Vec4& x) { return q.value(x); };
  d.grad_ = [q](const Vec4& x) { return q.gradient(x); };
  return d;
}

LevelSetDomain LevelSetDomain::from_function(std::string name, Fn f, GradFn grad) {
  if (!f) throw Error(ErrorKind::invalid_argument, "level-set function is empty");
  LevelSetDomain d;
  d.name_ = std::move(name);
  d.f_ = std::move(f);
  d.grad_ = std::move(grad);
  return d;
}

Vec4 LevelSetDomain::gradient(const Vec4& x) const {
  if (grad_) return grad_(x);
  constexpr double h = 1e-6;
  Vec4 g{};
  for (int i = 0; i < 4; ++i) {
    Vec4 p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (f_(p) - f_(m)) / (2 * h);
  }
  return g;
}

Mat4 LevelSetDomain::hessian(const Vec4& x) const {
  Mat4 h{};
  if (quad_) {
    for (int i = 0; i < 16; ++i) h[i] = 2.0 * quad_->a[i];
    return h;
  }
  constexpr double s = 1e-5;
  for (int j = 0; j < 4; ++j) {
    Vec4 p = x, m = x;
    p[j] += s;
    m[j] -= s;
    Vec4 gp = gradient(p), gm = gradient(m);
    for (int i = 0; i < 4; ++i) h[i * 4 + j] = (gp[i] - gm[i]) / (2 * s);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double avg = 0.5 * (h[i * 4 + j] + h[j * 4 + i]);
      h[i * 4 + j] = h[j * 4 + i] = avg;
    }
  return h;
}

LevelSetDomain ball4() {
  QuadraticForm q;
  for (int i = 0; i < 4; ++i) q.a[i * 5] = 1.0;
  q.c = -1.0;
  return LevelSetDomain::quadratic("ball4", q);
}

LevelSetDomain ellipsoid4(double a, double b, double c, double d) {
  const double ax[4] = {a, b, c, d};
  QuadraticForm q;
  for (int i = 0; i < 4; ++i) {
    if (!(ax[i] > 0.0) || !std::isfinite(ax[i]))
      throw Error(ErrorKind::invalid_argument, "ellipsoid semi-axes must be positive");
    q.a[i * 5] = 1.0 / (ax[i] * ax[i]);
  }
  q.c = -1.0;
  std::ostringstream name;
  name << "ellipsoid4:" << a << "," << b << "," << c << "," << d;
  return LevelSetDomain::quadratic(name.str(), q);
}

// xi4 > xi1*xi3 + xi1^2, i.e. F = x0*x2 + x0^2 - x3.
LevelSetDomain paraboloid_d1() {
  QuadraticForm q;
  q.a[0] = 1.0;
  q.a[0 * 4 + 2] = q.a[2 * 4 + 0] = 0.5;
  q.b = {0.0, 0.0, 0.0, -1.0};
  return LevelSetDomain::quadratic("paraboloid-d1", q);
}

// Disc in the (xi1, xi3) coordinates, free in the other two.
LevelSetDomain cylinder_disc() {
  QuadraticForm q;
  q.a[0] = 1.0;
  q.a[2 * 4 + 2] = 1.0;
  q.c = -1.0;
  return LevelSetDomain::quadratic("cylinder-disc", q);
}

LevelSetDomain half_space4(const Vec4& n, double offset) {
  QuadraticForm q;
  q.b = n;
  q.c = -offset;
  if (n[0] == 0 && n[1] == 0 && n[2] == 0 && n[3] == 0)
    throw Error(ErrorKind::invalid_argument, "half-space normal is zero");
  std::ostringstream name;
  name << "halfspace:" << n[0] << "," << n[1] << "," << n[2] << "," << n[3] << "," << offset;
  return LevelSetDomain::quadratic(name.str(), q);
}

namespace {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "bad number '" + tok + "' in domain spec");
    }
  }
  return out;
}

}  // namespace

LevelSetDomain parse_domain(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "ball4" && args.empty()) return ball4();
  if (head == "paraboloid-d1" && args.empty()) return paraboloid_d1();
  if (head == "cylinder-disc" && args.empty()) return cylinder_disc();
  if (head == "ellipsoid4") {
    auto v = parse_numbers(args);
    if (v.size() != 4) throw Error(ErrorKind::config, "ellipsoid4 needs four semi-axes");
    return ellipsoid4(v[0], v[1], v[2], v[3]);
  }
  if (head == "halfspace") {
    auto v = parse_numbers(args);
    if (v.size() != 4 && v.size() != 5)
      throw Error(ErrorKind::config, "halfspace needs a normal n1,n2,n3,n4 and optional offset");
    return half_space4({v[0], v[1], v[2], v[3]}, v.size() == 5 ? v[4] : 0.0);
  }
  throw Error(ErrorKind::config, "unknown domain '" + spec + "'");
}

}  // namespace besilab
