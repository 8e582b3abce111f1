#include <cmath>

#include "besilab/errors.hpp"
#include "besilab/forms.hpp"

namespace besilab {

double square_function_norm(std::span<const ConvexPolygon> polys, double p, double tol) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_argument, "p must be positive and finite");
  if (polys.empty()) return 0.0;
  auto est = count_lp_integral(polys, 0.5 * p, tol);
  return std::pow(est.measure, 1.0 / p);
}

}  // namespace besilab
