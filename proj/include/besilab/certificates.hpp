#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "besilab/besicovitch.hpp"
#include "besilab/domains.hpp"
#include "besilab/forms.hpp"
#include "json.hpp"

namespace besilab {

// One exponent of a triple; "inf" is allowed and negative values are allowed.
struct Exponent {
  std::string text;
  double value = 0.0;       // +inf for "inf"
  double reciprocal = 0.0;  // 1 / value, 0 for "inf"

  bool infinite() const { return reciprocal == 0.0; }
  // Conjugate reciprocal 1 / p' = 1 - 1 / p.
  double dual_reciprocal() const { return 1.0 - reciprocal; }
};

Exponent parse_exponent(const std::string& text);

class ExponentTriple {
 public:
  // Throws homogeneity_violated unless 1/p1 + 1/p2 + 1/p3 = 1 within 1e-12, and
  // invalid_argument for non-admissible triples.
  explicit ExponentTriple(std::array<Exponent, 3> p);

  // "4,8/5,8".
  static ExponentTriple parse(const std::string& text);

  const Exponent& operator[](int j) const { return p_[j - 1]; }
  std::string str() const;

 private:
  std::array<Exponent, 3> p_;
};

// Integers "4..10", powers "2^-3..2^-8", or comma lists.
std::vector<int> parse_int_sweep(const std::string& text);
std::vector<double> parse_real_sweep(const std::string& text);

struct Figure {
  std::string name;  // file name
  std::string svg;
};

struct CertificateReport {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  nlohmann::ordered_json fits = nlohmann::ordered_json::object();
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  std::vector<Figure> figures;

  void verdict(const std::string& name, bool pass) { verdicts[name] = pass; }
  bool passed() const;

  // {experiment, params, rows, fits, verdicts}; throws unbounded_value on a non-finite number.
  nlohmann::ordered_json to_json() const;
  std::string json_text() const;
  // One line per row; columns from the first row.
  std::string csv_text() const;
};

// Least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct PerronCertificateOptions {
  std::vector<int> depths{4, 5, 6, 7, 8, 9, 10};
  double p = 1.6;
  double half_aperture = PerronParams{}.half_aperture;
  double overlap = PerronParams{}.overlap;
  double tol = 1e-3;
};

// Square-function norm of the Perron rectangles against the Holder bound eps^((2-p)/(2p)).
CertificateReport perron_certificate(const PerronCertificateOptions& opts);

struct MainCertificateOptions {
  std::vector<int> depths{4, 5, 6, 7, 8, 9, 10};
  double arc_half_width = std::numbers::pi / 8.0;
  // Normals used for the size of Q are sampled this finely, independent of depth.
  std::size_t q_samples = 1024;
  double form_tol = 1e-10;
  double growth = 0.08;
  double eps_shrink = 0.6;
  DirectionFieldOptions field;
};

CertificateReport main_certificate(const LevelSetDomain& domain, const SliceSpec& slice, const ExponentTriple& p,
                                   const MainCertificateOptions& opts = {});

struct DegenerateCertificateOptions {
  std::vector<int> depths{4, 5, 6, 7, 8};
  double lambda = 2.0;
  double t_lo = 1.5;
  double t_hi = 2.5;
  double form_tol = 1e-10;
  PerronParams perron;
};

CertificateReport degenerate_certificate(const ExponentTriple& p, const DegenerateCertificateOptions& opts = {});

struct HalfspaceCertificateOptions {
  std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  double form_tol = 1e-12;
};

CertificateReport halfspace_certificate(const GammaVec& v, const ExponentTriple& p,
                                        const HalfspaceCertificateOptions& opts = {});

struct SL1CertificateOptions {
  std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  double tol = 1e-9;
  double fit_tolerance = 0.05;
  double growth = 1.5;
};

CertificateReport s_l1_certificate(const GammaVec& v, double p, const SL1CertificateOptions& opts = {});

struct IdentityCertificateOptions {
  double spacing = 0.125;
  double tol = 5e-2;
};

// The three Gaussian triples used by default.
std::vector<GaussianTriple> default_identity_triples();
GammaVec default_identity_vector();

// Residual at the given spacing and at half of it, per triple.
CertificateReport identity_certificate(const GammaVec& v, const std::vector<GaussianTriple>& triples,
                                       const IdentityCertificateOptions& opts = {});

struct TangencyOptions {
  std::vector<double> radii{4.0, 8.0, 16.0, 32.0};
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 20240601;
  double slope = -1.0;
  double slope_tolerance = 0.3;
};

struct TangencyEstimate {
  double measure = 0.0;
  double std_error = 0.0;
  std::uint64_t mismatches = 0;
};

// Monte Carlo measure of (D~_r symmetric-difference P) inside the unit ball of Gamma for each r,
// with D~_r = {eta : point + Phi^-1(eta) / r in D} and P = {eta . v < 0}, v the Gamma-normal.
std::vector<TangencyEstimate> tangency_measures(const LevelSetDomain& domain, const Vec4& point,
                                                const TangencyOptions& opts);

CertificateReport tangency_certificate(const LevelSetDomain& domain, const Vec4& point,
                                       const TangencyOptions& opts = {});

}  // namespace besilab
