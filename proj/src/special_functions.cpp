#include "fracstable/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracstable/errors.hpp"

namespace fracstable {

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r > 0.5) return std::sin(kPi * (1.0 - r));
  if (r < -0.5) return -std::sin(kPi * (1.0 + r));
  return std::sin(kPi * r);
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (x == std::numeric_limits<double>::infinity()) return 0.0;
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  if (x >= 0.5) {
    if (x > 170.0) return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const double s = sin_pi(x) / kPi;
  const double y = 1.0 - x;
  if (y > 170.0) return s * std::exp(std::lgamma(y));
  return s * std::tgamma(y);
}

namespace {

double chebyshev_eval(const double* c, int m, double x) {
  // Clenshaw recurrence on [-1, 1]
  double d = 0.0, dd = 0.0;
  const double y2 = 2.0 * x;
  for (int j = m - 1; j >= 1; --j) {
    const double sv = d;
    d = y2 * d - dd + c[j];
    dd = sv;
  }
  return x * d - dd + 0.5 * c[0];
}

// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu),
// gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2, for |mu| <= 1/2.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
  static constexpr double c1[] = {-1.142022680371168e0, 6.5165112670737e-3, 3.087090173086e-4,
                                  -3.4706269649e-6,     6.9437664e-9,       3.67795e-11,
                                  -1.356e-13};
  static constexpr double c2[] = {1.843740587300905e0, -7.68528408447867e-2, 1.2719271366546e-3,
                                  -4.9717367042e-6,    -3.31261198e-8,       2.423096e-10,
                                  -1.702e-13,          -1.49e-15};
  const double xx = 8.0 * mu * mu - 1.0;
  gam1 = chebyshev_eval(c1, 7, xx);
  gam2 = chebyshev_eval(c2, 8, xx);
  gampl = gam2 - mu * gam1;
  gammi = gam2 + mu * gam1;
}

}  // namespace

double bessel_k(double order, double x) {
  if (!std::isfinite(order) || !std::isfinite(x)) throw InvalidArgument("bessel_k: non-finite input");
  if (x <= 0.0) throw InvalidArgument("bessel_k: x must be positive");
  const double nu = std::abs(order);
  constexpr double eps = 1e-17;
  constexpr int max_iter = 100000;

  // Temme: K_mu and K_{mu+1} for |mu| <= 1/2, then upward recurrence in order.
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double k_mu = 0.0;
  double k_mu1 = 0.0;

  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= max_iter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * eps) break;
    }
    k_mu = sum;
    k_mu1 = sum1 * xi2;
  } else {
    // Steed's continued fraction (CF2) with Temme's normalisation
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= max_iter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    k_mu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
  }
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return k_mu;
}

namespace {

Complex cubic_value(Complex z, double p, double q) { return (z * z + p) * z + q; }

Complex newton_polish(Complex z, double p, double q) {
  const Complex f = cubic_value(z, p, q);
  const Complex df = 3.0 * z * z + p;
  if (std::abs(df) == 0.0) return z;
  const Complex candidate = z - f / df;
  return std::abs(cubic_value(candidate, p, q)) <= std::abs(f) ? candidate : z;
}

}  // namespace

CubicRoots solve_depressed_cubic(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) throw InvalidArgument("solve_depressed_cubic: non-finite input");
  CubicRoots out;
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;

  if (p < 0.0 && disc < 0.0) {
    // three distinct real roots: trigonometric form
    const double m = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp((3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double r = m * std::cos(phi - 2.0 * kPi * k / 3.0);
      out.roots[k] = newton_polish(Complex(r, 0.0), p, q);
      out.roots[k] = Complex(out.roots[k].real(), 0.0);
    }
  } else {
    // one real root and a conjugate pair (or a repeated real root)
    const double sqrt_disc = std::sqrt(std::max(disc, 0.0));
    const double a = -half_q + std::copysign(sqrt_disc, -half_q == 0.0 ? 1.0 : -half_q);
    const double u = std::cbrt(a);
    const double v = u != 0.0 ? -third_p / u : 0.0;
    Complex real_root = newton_polish(Complex(u + v, 0.0), p, q);
    real_root = Complex(real_root.real(), 0.0);
    Complex pair = newton_polish(Complex(-0.5 * (u + v), 0.5 * std::sqrt(3.0) * (u - v)), p, q);
    if (pair.imag() < 0.0) pair = std::conj(pair);
    out.roots = {real_root, pair, std::conj(pair)};
  }
  for (const Complex& z : out.roots) out.residual = std::max(out.residual, std::abs(cubic_value(z, p, q)));
  return out;
}

}  // namespace fracstable
