#pragma once

#include <functional>
#include <vector>

#include "fracstable/types.hpp"

namespace fracstable {

struct EmpiricalCF {
  double xi = 0.0;  // |xi| for vector samples
  Complex estimate{1.0, 0.0};
  double std_error = 0.0;  // standard error of the complex mean
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  long n_samples = 0;
};

/// Mean of exp(i xi x_k) with standard errors of its real and imaginary parts.
EmpiricalCF empirical_cf(const std::vector<double>& samples, double xi);
EmpiricalCF empirical_cf(const std::vector<Vector>& samples, const Vector& xi);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and its standard error.
MeanEstimate sample_mean(const std::vector<double>& values);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;  // NaN when fewer than 35 samples
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
KsResult ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// Critical value of the one-sample statistic at level alpha (asymptotic).
double ks_critical_value(long n, double alpha = 0.01);

/// Two-sample critical value at level alpha (asymptotic).
double ks_critical_value_two_sample(long n1, long n2, double alpha = 0.01);

struct NormalizationResult {
  double mass = 0.0;
  double error = 0.0;
  bool pass = false;
};

/// Adaptive quadrature of a density over [lo, hi] (either end may be
/// infinite); pass iff |mass - 1| <= tol.
NormalizationResult check_normalization(const std::function<double(double)>& density, double lo, double hi,
                                        double tol);

/// Same for a radial density in n dimensions: integrates w(r) |S^{n-1}| r^{n-1} over r > 0.
NormalizationResult check_radial_normalization(const std::function<double(double)>& density, int n, double tol);

}  // namespace fracstable
