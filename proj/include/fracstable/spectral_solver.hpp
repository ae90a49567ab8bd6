#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracstable/subordinators.hpp"
#include "fracstable/types.hpp"

namespace fracstable {

/// Coefficients of the space-time fractional Cauchy problem: time operator
/// from `spec`, space operator -c^2 (-Laplacian)^beta in n dimensions.
struct ModelParams {
  SubordinatorSpec spec;
  double beta = 1.0;
  double c = 1.0;
  int n = 1;

  void validate() const;
  /// c^2 |xi|^{2 beta}
  double space_symbol(double xi_norm) const;
};

/// Point at which a solution transform is evaluated: (|xi|, t) or (|xi|, mu).
struct SpectralQuery {
  double xi_norm = 0.0;
  std::variant<double, Complex> time_or_laplace = 1.0;

  static SpectralQuery at_time(double xi_norm, double t) { return {xi_norm, t}; }
  static SpectralQuery at_laplace(double xi_norm, Complex mu) { return {xi_norm, mu}; }
  bool is_time() const { return std::holds_alternative<double>(time_or_laplace); }
};

/// Fourier-Laplace transform of the solution:
/// sum_j lambda_j mu^{nu_j - 1} / (sum_j lambda_j mu^{nu_j} + c^2 |xi|^{2 beta}).
Complex cf_laplace(const ModelParams& params, const SpectralQuery& query);

/// Time-domain characteristic function E exp(i xi . S(c^2 L(t))) by
/// numerical Laplace inversion. Throws AccuracyFailure when the inversion
/// error estimate exceeds tol.
double cf_time(const ModelParams& params, const SpectralQuery& query, double tol = 1e-8);

struct CfCertificate {
  double talbot = 0.0;
  double talbot_error = 0.0;   // |Talbot(32) - Talbot(24)|
  double gaver_stehfest = 0.0; // quad-precision Gaver-Stehfest value
  double agreement = 0.0;      // |talbot - gaver_stehfest|
};

/// Both inversion schemes at one (|xi|, t).
CfCertificate certify_cf_time(const ModelParams& params, const SpectralQuery& query);

/// Closed form for the fractional telegraph equation (orders 2 nu and nu,
/// damping 2 lambda). Uses the confluent formula when lambda^2 and
/// c^2 xi^2 agree to relative 1e-8.
double cf_telegraph_k2(double lambda, double c, double nu, double xi, double t);

/// Variant of the k = 3 closed form: second Mittag-Leffler index of the
/// t^{-2 nu} terms. kUniform uses 1 - 2 nu in all three terms; kMixed puts
/// 1 - nu in the middle term.
enum class K3Variant { kUniform, kMixed };

/// Closed form for the three-term problem (orders 3 nu and nu, damping
/// 2 lambda) via the roots of z^3 + 2 lambda z + c^2 |xi|^{2 beta}.
/// Throws DegenerateRoots when two roots agree within 1e-10, and
/// AccuracyFailure when the imaginary residue exceeds 1e-9.
double cf_telegraph_k3(double lambda, double c, double beta, double nu, double xi_norm, double t,
                       K3Variant variant = K3Variant::kUniform);

/// Same, returning the complex value before the residue check.
Complex cf_telegraph_k3_complex(double lambda, double c, double beta, double nu, double xi_norm, double t,
                                K3Variant variant = K3Variant::kUniform);

/// The time-fractional operators of the k = 2 and k = 3 problems as
/// subordinator specs: {(1, 2 nu), (2 lambda, nu)} and {(1, 3 nu), (2 lambda, nu)}.
SubordinatorSpec telegraph_spec(int k, double lambda, double nu);

/// Laplace transform with exponents nu_j^depth (iterated subordinators).
Complex cf_iterated_laplace(const SubordinatorSpec& spec, int depth, double beta, double c, const SpectralQuery& query);

/// Large-depth limit of the iterated characteristic function:
/// in time, sum lambda / (sum lambda + c^2 |xi|^{2 beta}); in Laplace, that over mu.
Complex cf_limit(const SubordinatorSpec& spec, double beta, double c, const SpectralQuery& query);

/// Time-independent limit density (beta = 1) at distance r = |x| from the
/// origin. +infinity at r = 0 for n >= 2.
double limit_density_radial(double sum_lambda, double c, int n, double r);

/// Same at a point x of R^n (n = x.size()).
double limit_density(const std::vector<double>& lambdas, double c, const Vector& x);

/// One draw of the solution process S^{2 beta}(c^2 L(t)) in n dimensions,
/// L the (depth-fold iterated) inverse subordinator.
Vector sample_solution(const ModelParams& params, int depth, double t, double refine_tol, RngStream& rng);

/// Tabulated density with provenance.
struct DensityGrid {
  enum class Method { kClosedForm, kFftInverted, kHankelInverted, kEmpirical };
  std::vector<double> abscissae;
  std::vector<double> values;
  double mass = 0.0;
  Method method = Method::kClosedForm;
  double err_est = 0.0;
};

std::string to_string(DensityGrid::Method method);

struct FftOptions {
  int points = 1 << 16;
  double period = 0.0;  // 0: chosen from the decay of the characteristic function
  double x_max = 0.0;   // 0: keep the whole period; otherwise crop to [-x_max, x_max]
  double tol = 1e-4;    // accuracy failure if err_est exceeds this
};

/// One-dimensional density at time t by FFT of the characteristic function.
DensityGrid density_1d(const ModelParams& params, double t, const FftOptions& options = {});

/// Radial density in n dimensions by Hankel-type inversion of the
/// characteristic function, either at time t or (when `limit` is set) of
/// the large-depth limit law.
struct RadialOptions {
  bool limit = false;
  double t = 1.0;
  double tol = 1e-9;
  int max_panels = 2000;
};

DensityGrid density_radial(const ModelParams& params, const std::vector<double>& r_values,
                           const RadialOptions& options = {});

}  // namespace fracstable
