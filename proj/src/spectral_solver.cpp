#include "fracstable/spectral_solver.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracstable/errors.hpp"
#include "fracstable/laplace_inversion.hpp"
#include "fracstable/special_functions.hpp"

namespace fracstable {

void ModelParams::validate() const {
  spec.validate();
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in (0, 1]");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be positive");
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
}

double ModelParams::space_symbol(double xi_norm) const {
  if (xi_norm == 0.0) return 0.0;
  return c * c * std::pow(xi_norm, 2.0 * beta);
}

namespace {

void check_xi(double xi_norm) {
  if (!(xi_norm >= 0.0) || !std::isfinite(xi_norm)) throw InvalidArgument("|xi| must be finite and nonnegative");
}

Complex laplace_arg(const SpectralQuery& query) {
  if (query.is_time()) throw InvalidArgument("query carries a time, a Laplace argument was expected");
  const Complex mu = std::get<Complex>(query.time_or_laplace);
  if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) throw InvalidArgument("mu must be finite");
  if (mu.real() <= 0.0 && mu.imag() == 0.0) throw InvalidArgument("mu lies on the branch cut");
  return mu;
}

double time_arg(const SpectralQuery& query) {
  if (!query.is_time()) throw InvalidArgument("query carries a Laplace argument, a time was expected");
  const double t = std::get<double>(query.time_or_laplace);
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  return t;
}

// sum_j lambda_j mu^{e_j - 1} / (sum_j lambda_j mu^{e_j} + a), written as
// S / (mu (S + a)) so that mu -> 0 stays finite in the ratio
Complex resolvent(const std::vector<SubordinatorTerm>& terms, const std::vector<double>& exponents, double a,
                  Complex mu) {
  Complex s = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) s += terms[j].lambda * std::pow(mu, exponents[j]);
  return s / (mu * (s + a));
}

std::vector<double> exponents_of(const SubordinatorSpec& spec, int depth) {
  std::vector<double> e;
  for (const auto& term : spec.terms) e.push_back(std::pow(term.nu, depth));
  return e;
}

LaplaceTransform transform_for(const ModelParams& params, double a) {
  return [terms = params.spec.terms, e = exponents_of(params.spec, 1), a](Complex mu) {
    return resolvent(terms, e, a, mu);
  };
}

}  // namespace

Complex cf_laplace(const ModelParams& params, const SpectralQuery& query) {
  params.validate();
  check_xi(query.xi_norm);
  const Complex mu = laplace_arg(query);
  return resolvent(params.spec.terms, exponents_of(params.spec, 1), params.space_symbol(query.xi_norm), mu);
}

double cf_time(const ModelParams& params, const SpectralQuery& query, double tol) {
  params.validate();
  check_xi(query.xi_norm);
  const double t = time_arg(query);
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  const double a = params.space_symbol(query.xi_norm);
  if (a == 0.0) return 1.0;
  if (params.spec.all_drift()) return std::exp(-a * t / params.spec.sum_lambda());
  const InversionResult r = invert_laplace(transform_for(params, a), t);
  if (!(r.error <= tol)) {
    throw AccuracyFailure("cf_time: Laplace inversion error estimate above tolerance", r.value, r.error);
  }
  return r.value;
}

CfCertificate certify_cf_time(const ModelParams& params, const SpectralQuery& query) {
  params.validate();
  check_xi(query.xi_norm);
  const double t = time_arg(query);
  const double a = params.space_symbol(query.xi_norm);
  CfCertificate out;
  const InversionResult r = invert_laplace(transform_for(params, a), t);
  out.talbot = r.value;
  out.talbot_error = r.error;

  const auto terms = params.spec.terms;
  const __float128 aq = static_cast<__float128>(params.c) * params.c *
                        powq(static_cast<__float128>(query.xi_norm), 2 * static_cast<__float128>(params.beta));
  const __float128 a_used = query.xi_norm == 0.0 ? 0 : aq;
  out.gaver_stehfest = gaver_stehfest(
      [&terms, a_used](__float128 mu) {
        __float128 s = 0;
        for (const auto& term : terms) s += static_cast<__float128>(term.lambda) * powq(mu, term.nu);
        return s / (mu * (s + a_used));
      },
      t);
  out.agreement = std::abs(out.talbot - out.gaver_stehfest);
  return out;
}

SubordinatorSpec telegraph_spec(int k, double lambda, double nu) {
  if (k != 2 && k != 3) throw InvalidArgument("telegraph order k must be 2 or 3");
  return SubordinatorSpec{{1.0, k * nu}, {2.0 * lambda, nu}};
}

double cf_telegraph_k2(double lambda, double c, double nu, double xi, double t) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(c > 0.0)) throw InvalidArgument("c must be positive");
  if (!(nu > 0.0 && nu <= 1.0)) throw InvalidArgument("nu must lie in (0, 1]");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  if (!std::isfinite(xi)) throw InvalidArgument("xi must be finite");

  const double tn = std::pow(t, nu);
  const double disc = lambda * lambda - c * c * xi * xi;
  if (std::abs(disc) <= 1e-8 * lambda * lambda) {
    // double root eta = lambda
    const double z = -lambda * tn;
    return mittag_leffler(nu, 1.0, z) + lambda * tn / nu * mittag_leffler(nu, nu, z);
  }
  const Complex d = std::sqrt(Complex(disc, 0.0));
  const Complex eta1 = lambda - d;
  const Complex eta2 = lambda + d;
  const Complex w = lambda / d;
  const Complex value =
      0.5 * ((1.0 + w) * mittag_leffler(nu, 1.0, -eta1 * tn) + (1.0 - w) * mittag_leffler(nu, 1.0, -eta2 * tn));
  return value.real();
}

Complex cf_telegraph_k3_complex(double lambda, double c, double beta, double nu, double xi_norm, double t,
                                K3Variant variant) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(c > 0.0)) throw InvalidArgument("c must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in (0, 1]");
  if (!(nu > 0.0 && nu <= 1.0 / 3.0 + 1e-15)) throw InvalidArgument("nu must lie in (0, 1/3]");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  check_xi(xi_norm);

  const double q = xi_norm == 0.0 ? 0.0 : c * c * std::pow(xi_norm, 2.0 * beta);
  const CubicRoots cubic = solve_depressed_cubic(2.0 * lambda, q);
  const auto& z = cubic.roots;
  double scale = 1.0;
  for (const auto& root : z) scale = std::max(scale, std::abs(root));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(z[i] - z[j]) <= 1e-10 * scale) throw DegenerateRoots("cf_telegraph_k3: repeated cubic roots");
    }
  }
  const double tn = std::pow(t, nu);
  Complex total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Complex a = z[i];
    const Complex b = z[(i + 1) % 3];
    const Complex cc = z[(i + 2) % 3];
    const double second = (variant == K3Variant::kMixed && i == 1) ? 1.0 - nu : 1.0 - 2.0 * nu;
    const Complex arg = a * tn;
    const Complex head = std::pow(t, -2.0 * nu) * mittag_leffler(nu, second, arg);
    const Complex tail = 2.0 * lambda * mittag_leffler(nu, 1.0, arg);
    total += (head + tail) / ((a - b) * (a - cc));
  }
  return total;
}

double cf_telegraph_k3(double lambda, double c, double beta, double nu, double xi_norm, double t, K3Variant variant) {
  const Complex v = cf_telegraph_k3_complex(lambda, c, beta, nu, xi_norm, t, variant);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real()))) {
    throw AccuracyFailure("cf_telegraph_k3: imaginary residue above 1e-9", v.real(), std::abs(v.imag()));
  }
  return v.real();
}

Complex cf_iterated_laplace(const SubordinatorSpec& spec, int depth, double beta, double c, const SpectralQuery& query) {
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  const ModelParams params{spec, beta, c, 1};
  params.validate();
  check_xi(query.xi_norm);
  const Complex mu = laplace_arg(query);
  return resolvent(spec.terms, exponents_of(spec, depth), params.space_symbol(query.xi_norm), mu);
}

Complex cf_limit(const SubordinatorSpec& spec, double beta, double c, const SpectralQuery& query) {
  const ModelParams params{spec, beta, c, 1};
  params.validate();
  check_xi(query.xi_norm);
  const double s = spec.sum_lambda();
  const double ratio = s / (s + params.space_symbol(query.xi_norm));
  if (query.is_time()) {
    time_arg(query);
    return ratio;
  }
  return ratio / laplace_arg(query);
}

Vector sample_solution(const ModelParams& params, int depth, double t, double refine_tol, RngStream& rng) {
  params.validate();
  const double clock = params.c * params.c * sample_iterated_L(params.spec, depth, t, refine_tol, rng);
  if (clock <= 0.0) return Vector::Zero(params.n);
  return sample_isotropic_stable_vector(params.n, params.beta, clock, rng);
}

double limit_density_radial(double sum_lambda, double c, int n, double r) {
  if (!(sum_lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(c > 0.0)) throw InvalidArgument("c must be positive");
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
  if (!(r >= 0.0)) throw InvalidArgument("|x| must be nonnegative");
  const double b = std::sqrt(sum_lambda) / c;
  if (n == 1) return 0.5 * b * std::exp(-b * r);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  if (!std::isfinite(r)) return 0.0;
  const double order = 0.5 * (n - 2);
  const double br = b * r;
  if (br > 700.0) return 0.0;
  const double log_pref = -0.5 * n * std::log(2.0 * kPi) + 0.5 * (n + 2) * std::log(b) - order * std::log(r);
  return std::exp(log_pref) * bessel_k(order, br);
}

double limit_density(const std::vector<double>& lambdas, double c, const Vector& x) {
  double s = 0.0;
  for (double l : lambdas) {
    if (!(l > 0.0)) throw InvalidArgument("lambda must be positive");
    s += l;
  }
  if (lambdas.empty()) throw InvalidArgument("subordinator spec needs at least one term");
  return limit_density_radial(s, c, static_cast<int>(x.size()), x.norm());
}

}  // namespace fracstable
