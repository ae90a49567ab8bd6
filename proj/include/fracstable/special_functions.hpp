#pragma once

#include <array>
#include <complex>

#include "fracstable/types.hpp"

namespace fracstable {

/// Arguments of the two-parameter Mittag-Leffler function
/// E_{psi,theta}(z) = sum_k z^k / Gamma(psi k + theta).
struct MLParams {
  double psi = 1.0;
  double theta = 1.0;
  Complex z{0.0, 0.0};
};

/// Two-parameter Mittag-Leffler function for 0 < psi <= 2 (larger psi is
/// accepted but not covered by the accuracy contract) and any finite complex z.
///
/// Three representations are used: the Taylor series for |z| <= 1, the
/// asymptotic expansion (algebraic series plus every pole contribution of
/// the Laplace-domain kernel) once |z|^{1/psi} >= kMLAsymptoticThreshold,
/// and an inverse-Laplace integral along an optimally placed parabolic
/// contour in between. Relative accuracy is about 1e-13 away from zeros of
/// the function. Returns a non-finite value when the result overflows.
Complex mittag_leffler(const MLParams& params);

inline Complex mittag_leffler(double psi, double theta, Complex z) {
  return mittag_leffler(MLParams{psi, theta, z});
}

/// Real-argument convenience overload; returns the real part.
inline double mittag_leffler(double psi, double theta, double z) {
  return mittag_leffler(MLParams{psi, theta, Complex(z, 0.0)}).real();
}

/// |z|^{1/psi} at and above which the asymptotic expansion is used.
inline constexpr double kMLAsymptoticThreshold = 40.0;

namespace ml_detail {
// Individual representations, exposed so the regime-consistency tests can
// compare them where their validity ranges overlap.
Complex series(double psi, double theta, Complex z);
Complex asymptotic(double psi, double theta, Complex z);
Complex contour(double psi, double theta, Complex z);
}  // namespace ml_detail

/// 1/Gamma(x) on the whole real line; exactly zero at the poles of Gamma.
double rgamma(double x);

/// sin(pi x), exact at integers.
double sin_pi(double x);

/// Modified Bessel function of the second kind K_order(x), x > 0.
/// K_{-v} = K_v, so any real order is accepted.
double bessel_k(double order, double x);

/// Roots of z^3 + p z + q = 0.
struct CubicRoots {
  std::array<Complex, 3> roots;
  double residual = 0.0;  // max |z^3 + p z + q| over the three roots
};

/// All three complex roots of the depressed cubic z^3 + p z + q, each
/// polished by a Newton step. For real p, q the non-real roots come out as
/// an exact conjugate pair. Repeated roots are returned repeated.
CubicRoots solve_depressed_cubic(double p, double q);

}  // namespace fracstable
