#include <cmath>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"
#include "common.hpp"

namespace besilab {

GammaVec default_identity_vector() {
  GammaVec v{{0.83, 0.31}, {-0.37, 0.94}, {0.0, 0.0}};
  v.v3 = -(v.v1 + v.v2);
  return v.scaled(1.0 / v.norm());
}

std::vector<GaussianTriple> default_identity_triples() {
  const GammaVec v = default_identity_vector();
  const Vec2 w1 = v.v1 - v.v3, w2 = v.v2 - v.v3;
  const Vec2 m1 = 0.35 * w1 / norm(w1), m2 = 0.35 * w2 / norm(w2);
  return {
      GaussianTriple{{{{0.0, 0.0}, {0.5, 0.2}}, {{0.3, -0.2}, {-0.3, 0.4}}, {{-0.1, 0.25}, {-0.2, -0.6}}}},
      GaussianTriple{{{{0.4, -0.3}, {0.4, -0.5}}, {{-0.2, 0.1}, {0.1, 0.6}}, {{0.5, 0.6}, {-0.5, -0.1}}}},
      GaussianTriple{{{{-0.3, 0.2}, m1}, {{0.2, 0.0}, m2}, {{0.0, -0.4}, -(m1 + m2) + Vec2{0.1, 0.0}}}},
  };
}

CertificateReport identity_certificate(const GammaVec& v, const std::vector<GaussianTriple>& triples,
                                       const IdentityCertificateOptions& opts) {
  if (triples.empty()) throw Error(ErrorKind::invalid_argument, "no Gaussian triples given");
  CertificateReport rep;
  rep.experiment = "identity";
  rep.params["v"] = detail::gamma_json(v);
  rep.params["spacing"] = opts.spacing;
  rep.params["tol"] = opts.tol;
  nlohmann::ordered_json tj = nlohmann::ordered_json::array();
  for (const auto& t : triples) {
    nlohmann::ordered_json one = nlohmann::ordered_json::array();
    for (const auto& g : t) one.push_back({{"center", detail::vec_json(g.center)}, {"modulation", detail::vec_json(g.modulation)}});
    tj.push_back(one);
  }
  rep.params["triples"] = tj;
  rep.params["notes"] = nlohmann::ordered_json::array(
      {"Checks Lambda~ = -i pi (2 Lambda_P - Lambda_0) with Lambda_P on a frequency grid whose cells are "
       "weighted by the fraction lying in {xi . v > 0}."});

  bool within = true, decreasing = true;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    double prev = 0.0;
    for (double h : {opts.spacing, 0.5 * opts.spacing}) {
      IdentityOptions io;
      io.spacing = h;
      io.tol = opts.tol;
      auto r = identity_residual(triples[t], v, io);
      nlohmann::ordered_json row;
      row["triple"] = t;
      row["spacing"] = h;
      row["half_width"] = r.half_width;
      row["grid_points"] = r.grid_points;
      row["lambda_tilde_re"] = r.lambda_tilde.real();
      row["lambda_tilde_im"] = r.lambda_tilde.imag();
      row["lambda_p_re"] = r.lambda_p.real();
      row["lambda_p_im"] = r.lambda_p.imag();
      row["lambda_0_re"] = r.lambda_0.real();
      row["lambda_0_im"] = r.lambda_0.imag();
      row["residual"] = r.residual;
      rep.rows.push_back(row);
      if (h == opts.spacing)
        within = within && r.residual <= opts.tol;
      else
        decreasing = decreasing && r.residual < prev;
      prev = r.residual;
    }
  }
  rep.verdict("residual_within_tol", within);
  rep.verdict("residual_decreases", decreasing);
  return rep;
}

}  // namespace besilab
