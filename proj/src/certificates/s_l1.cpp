#include <algorithm>
#include <cmath>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"
#include "besilab/parallel.hpp"
#include "common.hpp"

namespace besilab {

CertificateReport s_l1_certificate(const GammaVec& v, double p, const SL1CertificateOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_argument, "p must lie in (1, inf)");
  if (opts.eps.size() < 2) throw Error(ErrorKind::invalid_argument, "eps sweep needs two or more values");
  if (classify_vector(v) != VectorClass::nondegenerate) throw Error(ErrorKind::invalid_argument, "v must be nondegenerate");
  if (!v.in_gamma(1e-9 * v.norm())) throw Error(ErrorKind::invalid_argument, "v must satisfy v1 + v2 + v3 = 0");
  const Vec2 w1 = v.v1 - v.v3, w2 = v.v2 - v.v3;
  const Vec2 dir = (w1 - w2) / norm(w1 - w2);

  CertificateReport rep;
  rep.experiment = "s-l1";
  rep.params["v"] = detail::gamma_json(v);
  rep.params["w"] = {detail::vec_json(w1), detail::vec_json(w2)};
  rep.params["p"] = p;
  rep.params["eps"] = opts.eps;
  rep.params["tol"] = opts.tol;
  rep.params["notes"] = nlohmann::ordered_json::array(
      {"f1 = f2 = indicator of a 1 x eps rectangle along w1 - w2; ||f1||_p ||f2||_p' = eps."});

  auto vals = parallel_map<FormValue>(opts.eps.size(), [&](std::size_t s) {
    double e = opts.eps[s];
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorKind::invalid_argument, "eps must lie in (0, 1)");
    return s_w_l1_norm(OrientedRect({0.0, 0.0}, dir, 1.0, e), w1, w2, opts.tol);
  });

  std::vector<double> x, ratio;
  for (std::size_t s = 0; s < opts.eps.size(); ++s) {
    const double e = opts.eps[s];
    const double norms = std::pow(e, 1.0 / p) * std::pow(e, 1.0 - 1.0 / p);
    nlohmann::ordered_json row;
    row["eps"] = e;
    row["l1_norm"] = vals[s].value;
    row["l1_err"] = vals[s].abs_error;
    row["norm_product"] = norms;
    row["ratio"] = vals[s].value / norms;
    rep.rows.push_back(row);
    x.push_back(std::log(1.0 / e));
    ratio.push_back(vals[s].value / norms);
  }

  // Increasing as eps decreases, in sweep order sorted by eps.
  std::vector<std::size_t> order(opts.eps.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return opts.eps[a] > opts.eps[b]; });
  bool increasing = true;
  for (std::size_t s = 1; s < order.size(); ++s) increasing = increasing && ratio[order[s]] > ratio[order[s - 1]];
  const double growth = ratio[order.back()] / ratio[order.front()];

  auto fit = fit_line(x, ratio);
  double rel = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s)
    rel = std::max(rel, std::abs(ratio[s] - (fit.slope * x[s] + fit.intercept)) / std::abs(ratio[s]));
  rep.fits["ratio_vs_log_inv_eps"] = {{"c1", fit.slope}, {"c0", fit.intercept}, {"max_rel_residual", rel}};
  rep.fits["growth"] = growth;

  rep.verdict("norm_product_is_eps", [&] {
    for (const auto& row : rep.rows)
      if (std::abs(row["norm_product"].get<double>() / row["eps"].get<double>() - 1.0) > 1e-12) return false;
    return true;
  }());
  rep.verdict("ratio_increasing", increasing);
  rep.verdict("ratio_growth", growth >= opts.growth);
  rep.verdict("log_fit", fit.slope > 0.0 && rel < opts.fit_tolerance);
  rep.figures.push_back({"triangle.svg", triangle_svg(configuration_triangle(v), "configuration")});
  return rep;
}

}  // namespace besilab
