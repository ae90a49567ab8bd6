#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracstable/errors.hpp"
#include "fracstable/laplace_inversion.hpp"
#include "fracstable/quadrature.hpp"
#include "fracstable/spectral_solver.hpp"

namespace fracstable {

std::string to_string(DensityGrid::Method method) {
  switch (method) {
    case DensityGrid::Method::kClosedForm:
      return "closed-form";
    case DensityGrid::Method::kFftInverted:
      return "fft-inverted";
    case DensityGrid::Method::kHankelInverted:
      return "hankel-inverted";
    case DensityGrid::Method::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

namespace {

struct CfValue {
  double value;
  double error;
};

// characteristic function at time t; inversion error reported, not thrown
CfValue cf_point(const ModelParams& params, double xi, double t) {
  const double a = params.space_symbol(xi);
  if (a == 0.0) return {1.0, 0.0};
  if (params.spec.all_drift()) return {std::exp(-a * t / params.spec.sum_lambda()), 0.0};
  const auto& terms = params.spec.terms;
  const InversionResult r = invert_laplace(
      [&terms, a](Complex mu) {
        Complex s = 0.0;
        for (const auto& term : terms) s += term.lambda * std::pow(mu, term.nu);
        return s / (mu * (s + a));
      },
      t);
  return {r.value, r.error};
}

// |xi| at which the characteristic function first drops to 1/2
double half_width(const ModelParams& params, double t) {
  double lo = 0.0;
  double hi = 1.0;
  while (cf_point(params, hi, t).value > 0.5 && hi < 1e12) {
    lo = hi;
    hi *= 2.0;
  }
  if (lo == 0.0) {
    lo = hi / 2.0;
    while (cf_point(params, lo, t).value < 0.5 && lo > 1e-12) {
      hi = lo;
      lo /= 2.0;
    }
  }
  for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cf_point(params, mid, t).value > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DensityGrid density_1d(const ModelParams& params, double t, const FftOptions& options) {
  params.validate();
  if (params.n != 1) throw InvalidArgument("density_1d needs dimension n = 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  const int n_points = options.points;
  if (n_points < 16 || (n_points & (n_points - 1)) != 0) throw InvalidArgument("points must be a power of two >= 16");

  const double period = options.period > 0.0 ? options.period : 100.0 / half_width(params, t);
  const double dx = period / n_points;
  const double dxi = 2.0 * kPi / period;
  const int half = n_points / 2;

  std::vector<std::complex<double>> spectrum(n_points);
  double cf_error_sum = 0.0;
  for (int j = 0; j <= half; ++j) {
    const CfValue v = cf_point(params, j * dxi, t);
    spectrum[j] = v.value;
    if (j > 0 && j < half) spectrum[n_points - j] = v.value;
    cf_error_sum += (j == 0 ? 1.0 : 2.0) * v.error;
  }
  const double xi_max = half * dxi;
  const double cf_edge = std::abs(spectrum[half].real());
  const double cf_mid = std::abs(spectrum[half / 2].real());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, spectrum);

  DensityGrid grid;
  grid.method = DensityGrid::Method::kFftInverted;
  grid.abscissae.resize(n_points);
  grid.values.resize(n_points);
  const double norm = dxi / (2.0 * kPi);
  for (int k = 0; k < n_points; ++k) {
    // FFT index k holds x = k dx for k < N/2 and (k - N) dx above
    const int shifted = (k + half) % n_points;
    grid.abscissae[shifted] = (k < half ? k : k - n_points) * dx;
    grid.values[shifted] = norm * out[k].real();
  }
  // enforce exact symmetry: x_i and x_{N-i} mirror each other around index N/2
  for (int i = 1; i < half; ++i) {
    const double avg = 0.5 * (grid.values[half + i] + grid.values[half - i]);
    grid.values[half + i] = avg;
    grid.values[half - i] = avg;
  }

  // aliasing: the edge of the period sees the wrapped-around tail
  const double aliasing = std::abs(grid.values.front());
  // truncation of the frequency sum beyond xi_max, power-law extrapolation
  double truncation = 0.0;
  if (cf_edge > 1e-300) {
    const double p = cf_mid > cf_edge ? std::log2(cf_mid / cf_edge) : 0.0;
    truncation = p > 1.0 ? cf_edge * xi_max / ((p - 1.0) * kPi) : std::numeric_limits<double>::infinity();
  }
  const double inversion = norm * cf_error_sum;

  if (options.x_max > 0.0) {
    DensityGrid cropped = grid;
    cropped.abscissae.clear();
    cropped.values.clear();
    for (int i = 0; i < n_points; ++i) {
      if (std::abs(grid.abscissae[i]) <= options.x_max) {
        cropped.abscissae.push_back(grid.abscissae[i]);
        cropped.values.push_back(grid.values[i]);
      }
    }
    grid = std::move(cropped);
  }
  double mass = 0.0;
  for (double v : grid.values) mass += v * dx;
  grid.mass = mass;
  grid.err_est = std::max(aliasing + truncation + inversion, std::abs(mass - 1.0));
  if (!(grid.err_est <= options.tol)) {
    throw AccuracyFailure("density_1d: error estimate above tolerance", grid.err_est, options.tol);
  }
  return grid;
}

namespace {

// approximate k-th positive zero of J_order (McMahon), k >= 1
double bessel_zero(double order, int k) {
  const double beta = (k + 0.5 * order - 0.25) * kPi;
  const double m = 4.0 * order * order;
  return beta - (m - 1.0) / (8.0 * beta) - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * std::pow(8.0 * beta, 3));
}

}  // namespace

DensityGrid density_radial(const ModelParams& params, const std::vector<double>& r_values,
                           const RadialOptions& options) {
  params.validate();
  const int n = params.n;
  const double order = 0.5 * (n - 2);
  const double prefactor = std::pow(2.0 * kPi, -0.5 * n);
  const double sum_lambda = params.spec.sum_lambda();
  const double t = options.t;
  if (!options.limit && (!(t > 0.0) || !std::isfinite(t))) throw InvalidArgument("t must be positive");

  auto cf = [&](double rho) {
    if (options.limit) return sum_lambda / (sum_lambda + params.space_symbol(rho));
    return cf_point(params, rho, t).value;
  };

  DensityGrid grid;
  grid.method = DensityGrid::Method::kHankelInverted;
  double worst_error = 0.0;
  for (double r : r_values) {
    if (!(r >= 0.0)) throw InvalidArgument("radii must be nonnegative");
    if (r == 0.0) {
      if (options.limit && n >= 2) {
        grid.abscissae.push_back(0.0);
        grid.values.push_back(std::numeric_limits<double>::infinity());
        continue;
      }
      // J_k(z)/z^k -> 1/(2^k Gamma(k+1))
      const double lead = 1.0 / (std::pow(2.0, order) * std::tgamma(order + 1.0));
      const QuadResult q = integrate([&](double rho) { return std::pow(rho, n - 1) * cf(rho); }, 0.0,
                                     std::numeric_limits<double>::infinity(), 1e-14, 1e-11);
      if (!q.converged) throw AccuracyFailure("density_radial: integral at r = 0 did not converge", q.value, q.error);
      grid.abscissae.push_back(0.0);
      grid.values.push_back(prefactor * lead * q.value);
      worst_error = std::max(worst_error, prefactor * lead * q.error);
      continue;
    }

    auto kernel = [&](double rho) {
      if (rho == 0.0) return n == 1 ? cf(0.0) / kPi : 0.0;
      if (n == 1) return cf(rho) * std::cos(rho * r) / kPi;
      return prefactor * std::pow(rho, 0.5 * n) * cf(rho) * std::cyl_bessel_j(order, rho * r) * std::pow(r, -order);
    };
    const double kernel_order = n == 1 ? -0.5 : order;

    std::vector<double> partial;
    double sum = 0.0;
    double quad_error = 0.0;
    double lo = 0.0;
    int quiet = 0;
    double value = std::numeric_limits<double>::quiet_NaN();
    double err = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= options.max_panels; ++k) {
      double hi = bessel_zero(kernel_order, k) / r;
      if (!(hi > lo)) hi = lo + kPi / r;
      const QuadResult q = integrate(kernel, lo, hi, 1e-17, 1e-12, 200);
      sum += q.value;
      quad_error += q.error;
      partial.push_back(sum);
      lo = hi;

      quiet = std::abs(q.value) <= 1e-16 * std::max(std::abs(sum), 1e-300) ? quiet + 1 : 0;
      if (quiet >= 3) {
        value = sum;
        err = quad_error;
        break;
      }
      if (k >= 8) {
        const std::size_t window = std::min<std::size_t>(partial.size(), 30);
        std::vector<double> tail(partial.end() - window, partial.end());
        double wynn_err = 0.0;
        const double est = wynn_epsilon(tail, wynn_err);
        if (wynn_err <= options.tol * std::max(1.0, std::abs(est)) && k >= 12) {
          value = est;
          err = wynn_err + quad_error;
          break;
        }
      }
    }
    if (!std::isfinite(value)) {
      throw AccuracyFailure("density_radial: oscillatory quadrature did not converge", sum, err);
    }
    grid.abscissae.push_back(r);
    grid.values.push_back(value);
    worst_error = std::max(worst_error, err);
  }
  grid.err_est = worst_error;
  // mass over the tabulated radii (shell-weighted trapezoid); only
  // meaningful when r_values cover the support densely
  double mass = 0.0;
  const double surface = n == 1 ? 2.0 : 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  for (std::size_t i = 1; i < grid.abscissae.size(); ++i) {
    const double r0 = grid.abscissae[i - 1], r1 = grid.abscissae[i];
    const double f0 = grid.values[i - 1] * std::pow(r0, n - 1), f1 = grid.values[i] * std::pow(r1, n - 1);
    if (std::isfinite(f0) && std::isfinite(f1)) mass += 0.5 * (f0 + f1) * (r1 - r0) * surface;
  }
  grid.mass = mass;
  return grid;
}

}  // namespace fracstable
