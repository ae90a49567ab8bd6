#include "fracstable/laplace_inversion.hpp"

#include <quadmath.h>

#include <cmath>
#include <vector>

#include "fracstable/errors.hpp"

namespace fracstable {

double talbot(const LaplaceTransform& transform, double t, int nodes) {
  if (!(t > 0.0)) throw InvalidArgument("talbot: t must be positive");
  if (nodes < 2) throw InvalidArgument("talbot: need at least two nodes");
  const double r = 2.0 * nodes / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * transform(Complex(r, 0.0)).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * kPi / nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const Complex s(r * theta * cot, r * theta);
    const Complex ds(1.0, theta + (theta * cot - 1.0) * cot);  // s'(theta) / (i r)
    sum += (std::exp(t * s) * transform(s) * ds).real();
  }
  return r / nodes * sum;
}

InversionResult invert_laplace(const LaplaceTransform& transform, double t, int nodes, int nodes_low) {
  const double hi = talbot(transform, t, nodes);
  const double lo = talbot(transform, t, nodes_low);
  return {hi, std::abs(hi - lo)};
}

double gaver_stehfest(const RealLaplaceTransformQ& transform, double t, int half_terms) {
  if (!(t > 0.0)) throw InvalidArgument("gaver_stehfest: t must be positive");
  const int m = half_terms;
  auto factorial = [](int n) {
    __float128 f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  const __float128 ln2 = M_LN2q;
  const __float128 tq = t;
  __float128 sum = 0;
  for (int k = 1; k <= 2 * m; ++k) {
    __float128 zeta = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, m); ++j) {
      // j^{m+1}/m! * C(m,j) C(2j,j) C(j,k-j)
      __float128 term = powq(j, m + 1) / factorial(m);
      term *= factorial(m) / (factorial(j) * factorial(m - j));
      term *= factorial(2 * j) / (factorial(j) * factorial(j));
      term *= factorial(j) / (factorial(k - j) * factorial(2 * j - k));
      zeta += term;
    }
    if ((m + k) % 2 == 1) zeta = -zeta;
    sum += zeta * transform(k * ln2 / tq);
  }
  return static_cast<double>(ln2 / tq * sum);
}

}  // namespace fracstable
