#include <algorithm>
#include <cmath>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"
#include "besilab/parallel.hpp"
#include "common.hpp"

namespace besilab {

namespace {

using nlohmann::ordered_json;

std::string layout_svg(const std::vector<ConvexPolygon>& rects, const std::vector<std::vector<ConvexPolygon>>& qs) {
  std::vector<ConvexPolygon> all = rects;
  for (const auto& f : qs) all.insert(all.end(), f.begin(), f.end());
  SvgCanvas c(detail::bbox_of(all), 720.0);
  const char* colors[] = {"#2a9d8f", "#e76f51"};
  for (std::size_t j = 0; j < qs.size(); ++j)
    for (const auto& q : qs[j]) c.polygon(q, colors[j % 2], 0.35);
  for (const auto& r : rects) c.polygon(r, "#264653", 0.6);
  return c.str();
}

}  // namespace

CertificateReport degenerate_certificate(const ExponentTriple& p, const DegenerateCertificateOptions& opts) {
  if (opts.depths.empty()) throw Error(ErrorKind::invalid_argument, "no depths given");
  if (!std::isfinite(opts.lambda) || std::abs(opts.lambda - 1.0) < 1e-12 || opts.lambda == 0.0 ||
      std::abs(opts.lambda + 1.0) < 1e-12)
    throw Error(ErrorKind::invalid_argument, "lambda must be finite and differ from 1, 0 and -1");
  if (!(0.0 < opts.t_lo && opts.t_lo < opts.t_hi)) throw Error(ErrorKind::invalid_argument, "t-window must satisfy 0 < t_lo < t_hi");

  int i = 0;
  for (int j = 1; j <= 3; ++j)
    if (p[j].reciprocal > 0.5 && (i == 0 || p[j].reciprocal > p[i].reciprocal)) i = j;
  if (i == 0) throw Error(ErrorKind::invalid_argument, "some exponent must lie in [1, 2)");
  const std::array<double, 3> lam{1.0, opts.lambda, -(1.0 + opts.lambda)};
  std::array<int, 2> others{};
  for (int j = 1, m = 0; j <= 3; ++j)
    if (j != i) others[m++] = j;
  std::array<double, 2> dl{lam[i - 1] - lam[others[0] - 1], lam[i - 1] - lam[others[1] - 1]};
  if (!(dl[0] * dl[1] > 0.0))
    throw Error(ErrorKind::invalid_argument, "lambda_i - lambda_j must have one sign for both j != i; pick another lambda");
  const double orient = dl[0] < 0.0 ? 1.0 : -1.0;
  const double t_mid = 0.5 * (opts.t_lo + opts.t_hi);
  const double bound = std::log(opts.t_hi / opts.t_lo);

  CertificateReport rep;
  rep.experiment = "certify-degenerate";
  rep.params["p"] = p.str();
  rep.params["i"] = i;
  rep.params["lambda"] = opts.lambda;
  rep.params["lambda_coefficients"] = lam;
  rep.params["t_window"] = {opts.t_lo, opts.t_hi};
  rep.params["depths"] = opts.depths;
  rep.params["per_n_bound"] = bound;
  rep.params["notes"] = ordered_json::array(
      {"Normals v^n = (v_n, lambda v_n, -(1 + lambda) v_n) with v_n along the n-th rectangle.",
       "Both non-i inputs are strips along v_n covering R_n + t (lambda_i - lambda_j) v_n for t in the "
       "window, so N |Lambda_n| >= log(t_hi / t_lo)."});

  bool collinear = true, classified = true, disjoint = true, per_n = true;
  ordered_json first_v;
  std::string layout;
  for (int depth : opts.depths) {
    PerronParams pp = opts.perron;
    pp.depth = depth;
    auto family = build_perron_family(pp);
    const std::size_t N = family.size();
    auto rects = family.rect_polygons();
    std::array<std::vector<ConvexPolygon>, 2> qs;
    std::vector<GammaVec> normals(N);
    double max_area = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      const auto& r = family.rects[n];
      const Vec2 v = orient * r.direction();
      normals[n] = {lam[0] * v, lam[1] * v, lam[2] * v};
      auto tri = configuration_triangle(normals[n]);
      max_area = std::max(max_area, tri.area);
      collinear = collinear && tri.area <= 1e-10;
      classified = classified && classify_vector(normals[n]) == VectorClass::degenerate;
      for (int m = 0; m < 2; ++m) {
        OrientedRect q(r.center() + t_mid * dl[m] * v, r.direction(),
                       r.length() + std::abs(dl[m]) * (opts.t_hi - opts.t_lo), r.width());
        qs[m].push_back(q.polygon());
      }
    }
    for (int m = 0; m < 2; ++m) {
      auto d = pairwise_disjoint(qs[m]);
      if (!d.disjoint)
        throw Error(ErrorKind::disjointness_failure,
                    "Q_" + std::to_string(others[m]) + " rectangles " + std::to_string(d.first) + " and " +
                        std::to_string(d.second) + " overlap at depth " + std::to_string(depth) +
                        "; shrink the t-window");
    }

    std::vector<double> vals = parallel_map<double>(N, [&](std::size_t n) {
      std::array<ConvexPolygon, 3> a;
      a[i - 1] = rects[n];
      a[others[0] - 1] = qs[0][n];
      a[others[1] - 1] = qs[1][n];
      return lambda_tilde_indicator(a[0], a[1], a[2], normals[n], opts.form_tol);
    });
    double lhs = 0.0, min_scaled = std::abs(vals[0]) * N;
    for (double x : vals) {
      lhs += std::abs(x);
      min_scaled = std::min(min_scaled, std::abs(x) * static_cast<double>(N));
    }
    per_n = per_n && min_scaled >= bound - 1e-3;

    const double sq_i = detail::family_norm(rects, p[i], 1e-3);
    const double nq0 = detail::family_norm(qs[0], p[others[0]], 1e-3);
    const double nq1 = detail::family_norm(qs[1], p[others[1]], 1e-3);
    ordered_json row;
    row["depth"] = depth;
    row["N"] = N;
    row["eps"] = family.achieved_eps;
    row["lhs"] = lhs;
    row["min_N_lambda"] = min_scaled;
    row["per_n_bound"] = bound;
    row["max_triangle_area"] = max_area;
    row["sq_i"] = sq_i;
    row["norm_q" + std::to_string(others[0])] = nq0;
    row["norm_q" + std::to_string(others[1])] = nq1;
    row["ratio"] = lhs / (sq_i * nq0 * nq1);
    rep.rows.push_back(row);
    if (first_v.is_null()) {
      first_v = detail::gamma_json(normals[0]);
      rep.figures.push_back({"triangle.svg", triangle_svg(configuration_triangle(normals[0]), "degenerate configuration")});
      layout = layout_svg(rects, {qs[0], qs[1]});
    }
  }
  rep.params["first_normal"] = first_v;
  rep.figures.push_back({"layout.svg", layout});
  rep.verdict("triangle_collinear", collinear);
  rep.verdict("degenerate_not_strongly", classified);
  rep.verdict("q_families_disjoint", disjoint);
  rep.verdict("per_n_lower_bound", per_n);
  return rep;
}

}  // namespace besilab
