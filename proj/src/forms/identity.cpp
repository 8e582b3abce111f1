#include <algorithm>
#include <cmath>
#include <numbers>

#include "besilab/errors.hpp"
#include "besilab/forms.hpp"
#include "besilab/kernels.hpp"
#include "besilab/parallel.hpp"
#include "besilab/quadrature.hpp"

namespace besilab {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Fourier transform (e^{-2 pi i x.xi} convention) of one Gaussian factor.
cd gaussian_hat(const Gaussian& g, Vec2 xi) {
  Vec2 d = xi - g.modulation;
  return std::exp(-kPi * dot(d, d)) * std::polar(1.0, -2.0 * kPi * dot(d, g.center));
}

}  // namespace

// integral over x of prod_j f_j(x - t v_j), in closed form.
cd gaussian_sliding_integrand(const GaussianTriple& f, const GammaVec& v, double t) {
  Vec2 abar = (f[0].center + f[1].center + f[2].center) / 3.0;
  Vec2 m = f[0].modulation + f[1].modulation + f[2].modulation;
  double spread = 0.0, phase = dot(m, abar);
  for (int j = 0; j < 3; ++j) {
    Vec2 d = f[j].center - abar + t * v[j + 1];
    spread += dot(d, d);
    phase -= t * dot(f[j].modulation, v[j + 1]);
  }
  return (1.0 / 3.0) * std::exp(-kPi * (dot(m, m) / 3.0 + spread)) * std::polar(1.0, 2.0 * kPi * phase);
}

IdentityResult identity_residual(const GaussianTriple& f, const GammaVec& v, const IdentityOptions& opts) {
  if (!v.in_gamma(1e-9)) throw Error(ErrorKind::invalid_argument, "v must satisfy v1 + v2 + v3 = 0");
  if (!(v.norm() > 0.0)) throw Error(ErrorKind::zero_vector, "v must be nonzero");
  if (!(opts.spacing > 0.0)) throw Error(ErrorKind::invalid_argument, "grid spacing must be positive");
  double max_mod = 0.0;
  for (const auto& g : f) max_mod = std::max({max_mod, std::abs(g.modulation.x), std::abs(g.modulation.y)});
  const double L = opts.half_width > 0.0 ? opts.half_width : 3.0 + max_mod;
  const double edge = L - max_mod;
  if (!(edge > 0.0) || std::exp(-kPi * edge * edge) >= opts.tol / 10.0)
    throw Error(ErrorKind::truncation, "frequency box [-L, L]^4 cuts off Gaussian mass above tol/10");

  IdentityResult out;
  out.spacing = opts.spacing;
  out.half_width = L;

  // Time side.
  out.lambda_0 = gaussian_sliding_integrand(f, v, 0.0);
  {
    Vec2 abar = (f[0].center + f[1].center + f[2].center) / 3.0;
    double dn = 0.0;
    for (int j = 0; j < 3; ++j) {
      Vec2 d = f[j].center - abar;
      dn += dot(d, d);
    }
    double tmax = (std::sqrt(dn) + std::sqrt(45.0 / kPi)) / v.norm() + 1.0;
    auto h = [&](double t) {
      return (gaussian_sliding_integrand(f, v, t) - gaussian_sliding_integrand(f, v, -t)) / t;
    };
    std::vector<double> pts;
    for (int k = 0; k <= 16; ++k) pts.push_back(tmax * k / 16.0);
    out.lambda_tilde = gauss_kronrod<cd>(h, std::span<const double>(pts), 1e-13, kFormEvalBudget).value;
  }

  // Frequency side on the grid xi = h * i, |i| <= M per coordinate.
  const double hs = opts.spacing;
  const int M = static_cast<int>(std::ceil(L / hs - 1e-9));
  const int n1 = 2 * M + 1;
  const int n3 = 4 * M + 1;
  const std::size_t plane = static_cast<std::size_t>(n1) * n1;
  const Vec2 W1 = v.v1 - v.v3, W2 = v.v2 - v.v3;

  std::vector<cd> F1(plane);
  std::vector<double> S1(plane), S2(plane), F2re(plane), F2im(plane);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      Vec2 xi{(i - M) * hs, (j - M) * hs};
      std::size_t k = static_cast<std::size_t>(i) * n1 + j;
      F1[k] = gaussian_hat(f[0], xi);
      cd b = gaussian_hat(f[1], xi);
      F2re[k] = b.real();
      F2im[k] = b.imag();
      S1[k] = dot(xi, W1);
      S2[k] = dot(xi, W2);
    }
  // G3[s] = f3^(-(s - 2M) h), indexed by s = p + q per coordinate.
  std::vector<double> G3re(static_cast<std::size_t>(n3) * n3), G3im(G3re.size());
  for (int i = 0; i < n3; ++i)
    for (int j = 0; j < n3; ++j) {
      cd c = gaussian_hat(f[2], {-(i - 2 * M) * hs, -(j - 2 * M) * hs});
      G3re[static_cast<std::size_t>(i) * n3 + j] = c.real();
      G3im[static_cast<std::size_t>(i) * n3 + j] = c.imag();
    }

  // Cell weights: exact fraction of each h-box on the positive side of {xi . v = 0}.
  const double widths[4] = {hs * W1.x, hs * W1.y, hs * W2.x, hs * W2.y};
  const auto frac = kernels::CellFraction::from_widths(widths, 4);

  // One block per first coordinate of xi1; blocks are summed in order afterwards.
  std::vector<cd> block(n1);
  parallel_for(static_cast<std::size_t>(n1), [&](std::size_t p1) {
    cd acc = 0.0;
    for (int p2 = 0; p2 < n1; ++p2) {
      std::size_t p = p1 * n1 + p2;
      if (std::abs(F1[p]) < 1e-300) continue;
      cd inner = 0.0;
      for (int q1 = 0; q1 < n1; ++q1) {
        std::size_t qrow = static_cast<std::size_t>(q1) * n1;
        std::size_t g = (p1 + q1) * static_cast<std::size_t>(n3) + p2;
        kernels::ProductRow row{S2.data() + qrow, F2re.data() + qrow, F2im.data() + qrow,
                                G3re.data() + g, G3im.data() + g, static_cast<std::size_t>(n1)};
        inner += kernels::masked_product_sum(S1[p], row, frac);
      }
      acc += F1[p] * inner;
    }
    block[p1] = acc;
  });
  cd sum = 0.0;
  for (const cd& b : block) sum += b;
  out.lambda_p = sum * (hs * hs * hs * hs);
  out.grid_points = plane * plane;

  const cd i_pi{0.0, kPi};
  cd defect = out.lambda_tilde + i_pi * (2.0 * out.lambda_p - out.lambda_0);
  out.residual = std::abs(defect) / (std::abs(out.lambda_tilde) + std::abs(out.lambda_p) + std::abs(out.lambda_0));
  return out;
}

}  // namespace besilab
