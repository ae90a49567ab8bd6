#include "fracstable/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracstable/errors.hpp"
#include "fracstable/quadrature.hpp"

namespace fracstable {

namespace {

EmpiricalCF reduce_phases(const std::vector<double>& phases, double xi) {
  const long n = static_cast<long>(phases.size());
  if (n < 2) throw InvalidArgument("empirical_cf needs at least two samples");
  double sum_c = 0.0, sum_s = 0.0;
  for (double p : phases) {
    sum_c += std::cos(p);
    sum_s += std::sin(p);
  }
  const double mean_c = sum_c / n;
  const double mean_s = sum_s / n;
  double var_c = 0.0, var_s = 0.0;
  for (double p : phases) {
    var_c += std::pow(std::cos(p) - mean_c, 2);
    var_s += std::pow(std::sin(p) - mean_s, 2);
  }
  var_c /= (n - 1);
  var_s /= (n - 1);
  EmpiricalCF out;
  out.xi = xi;
  out.estimate = Complex(mean_c, mean_s);
  out.std_error_re = std::sqrt(var_c / n);
  out.std_error_im = std::sqrt(var_s / n);
  out.std_error = std::sqrt((var_c + var_s) / n);
  out.n_samples = n;
  return out;
}

}  // namespace

EmpiricalCF empirical_cf(const std::vector<double>& samples, double xi) {
  std::vector<double> phases(samples.size());
  std::transform(samples.begin(), samples.end(), phases.begin(), [xi](double x) { return xi * x; });
  return reduce_phases(phases, xi);
}

EmpiricalCF empirical_cf(const std::vector<Vector>& samples, const Vector& xi) {
  std::vector<double> phases;
  phases.reserve(samples.size());
  for (const auto& x : samples) {
    if (x.size() != xi.size()) throw InvalidArgument("empirical_cf: sample and xi dimensions differ");
    phases.push_back(xi.dot(x));
  }
  return reduce_phases(phases, xi.norm());
}

MeanEstimate sample_mean(const std::vector<double>& values) {
  const long n = static_cast<long>(values.size());
  if (n < 2) throw InvalidArgument("sample_mean needs at least two values");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (n - 1);
  return {mean, std::sqrt(var / n)};
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  // Q(l) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 l^2)
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) <= 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double kolmogorov_p(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

double inverse_survival(double alpha) {
  double lo = 0.2, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

KsResult ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  const long n = static_cast<long>(samples.size());
  if (n < 10) throw InvalidArgument("ks_statistic needs at least 10 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  double prev_f = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("ks_statistic: cdf value outside [0, 1]");
    if (f < prev_f - 1e-12) throw InvalidArgument("ks_statistic: cdf is not monotone on the sample range");
    prev_f = std::max(prev_f, f);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsResult out;
  out.statistic = d;
  out.p_value = n >= 35 ? kolmogorov_p(d, static_cast<double>(n)) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 10 || b.size() < 10) throw InvalidArgument("ks_two_sample needs at least 10 samples per set");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult out;
  out.statistic = d;
  const double ne = na * nb / (na + nb);
  out.p_value = ne >= 35 ? kolmogorov_p(d, ne) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double ks_critical_value(long n, double alpha) {
  if (n < 1) throw InvalidArgument("ks_critical_value needs n >= 1");
  return inverse_survival(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_value_two_sample(long n1, long n2, double alpha) {
  if (n1 < 1 || n2 < 1) throw InvalidArgument("ks_critical_value_two_sample needs positive sizes");
  const double ne = static_cast<double>(n1) * n2 / (static_cast<double>(n1) + n2);
  return inverse_survival(alpha) / std::sqrt(ne);
}

NormalizationResult check_normalization(const std::function<double(double)>& density, double lo, double hi,
                                        double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  const QuadResult q = integrate(density, lo, hi, 0.01 * tol, 1e-14, 20000);
  if (!q.converged && q.error > 0.1 * tol) {
    throw AccuracyFailure("check_normalization: quadrature did not converge", q.value, q.error);
  }
  return {q.value, q.error, std::abs(q.value - 1.0) <= tol};
}

NormalizationResult check_radial_normalization(const std::function<double(double)>& density, int n, double tol) {
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
  const double surface = n == 1 ? 2.0 : 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  auto shell = [&](double r) { return r == 0.0 ? (n == 1 ? surface * density(0.0) : 0.0) : surface * std::pow(r, n - 1) * density(r); };
  return check_normalization(shell, 0.0, std::numeric_limits<double>::infinity(), tol);
}

}  // namespace fracstable
