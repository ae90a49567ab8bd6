#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <vector>

#include "fracstable/errors.hpp"
#include "fracstable/special_functions.hpp"

namespace fracstable {
namespace ml_detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1e-15): target accuracy of the contour quadrature
constexpr double kLogTarget = -34.538776394910684;

}  // namespace

Complex series(double psi, double theta, Complex z) {
  Complex sum = rgamma(theta);
  Complex zk = 1.0;
  int small_run = 0;
  for (int k = 1; k < 5000; ++k) {
    zk *= z;
    const Complex term = zk * rgamma(psi * k + theta);
    sum += term;
    const bool decaying = psi * k + theta > 2.0;
    if (decaying && std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_run >= 2) break;
    } else {
      small_run = 0;
    }
    if (std::abs(zk) == 0.0) break;
  }
  return sum;
}

Complex asymptotic(double psi, double theta, Complex z) {
  const double log_mod = std::log(std::abs(z)) / psi;
  const double ph = std::arg(z);

  Complex total = 0.0;
  // pole contributions s_n = z^{1/psi} e^{2 pi i n / psi} on the principal sheet
  const int n_lo = static_cast<int>(std::floor((-psi * kPi - ph) / (2.0 * kPi))) - 1;
  const int n_hi = static_cast<int>(std::ceil((psi * kPi - ph) / (2.0 * kPi))) + 1;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double ang = ph + 2.0 * kPi * n;
    if (std::abs(ang) > psi * kPi * (1.0 + 1e-14)) continue;
    const Complex log_s(log_mod, ang / psi);
    const Complex s = std::exp(log_s);
    total += std::exp((1.0 - theta) * log_s + s) / psi;
  }

  const double log_abs_z = std::log(std::abs(z));
  double prev_envelope = kInf;
  for (int k = 1; k < 2000; ++k) {
    const double x = theta - psi * k;
    // For x < 1/2 the envelope |Gamma(1 - x)| / (pi |z|^k) leaves out the
    // sin(pi x) factor, which can be accidentally small near the poles of
    // Gamma and would fool the truncation test.
    double log_envelope;
    Complex term;
    if (x >= 0.5) {
      const double rg = rgamma(x);
      log_envelope = std::log(std::abs(rg)) - k * log_abs_z;
      term = -std::exp(Complex(-k * log_abs_z, -k * ph)) * rg;
    } else {
      log_envelope = std::lgamma(1.0 - x) - std::log(kPi) - k * log_abs_z;
      // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, combined in log space
      term = -sin_pi(x) * std::exp(Complex(log_envelope, -k * ph));
    }
    if (log_envelope > prev_envelope && k > 2) break;  // optimal truncation
    prev_envelope = log_envelope;
    total += term;
    if (std::exp(log_envelope) <= 1e-17 * std::abs(total)) break;
  }
  return total;
}

namespace {

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double n = kInf;
};

// Parameters of the parabolic contour s(u) = mu (1 + i u)^2 lying in the
// region between two consecutive singularities (bounded region).
ContourParams bounded_region(double t, double phi_j, double phi_j1, double pj, double qj, double log_epsilon) {
  constexpr double log_eps = -36.043653389117154;  // log(DBL_EPSILON)
  constexpr double fac = 1.01;
  const double f_max = std::exp(log_epsilon - log_eps);
  const double sq_phi_j = std::sqrt(phi_j);
  const double threshold = 2.0 * std::sqrt((log_epsilon - log_eps) / t);
  const double sq_phi_j1 = std::min(std::sqrt(phi_j1), threshold - sq_phi_j);

  double sq_bar_j = 0.0;
  double sq_bar_j1 = 0.0;
  double f_bar = 1.0;
  bool admissible = false;

  if (pj < 1e-14 && qj < 1e-14) {
    sq_bar_j = sq_phi_j;
    sq_bar_j1 = sq_phi_j1;
    admissible = true;
  } else if (pj < 1e-14) {
    sq_bar_j = sq_phi_j;
    const double f_min = sq_phi_j > 0.0 ? fac * std::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), qj) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / qj);
      sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq);
      admissible = true;
    }
  } else if (qj < 1e-14) {
    sq_bar_j1 = sq_phi_j1;
    const double f_min = fac * std::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), pj);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp);
      admissible = true;
    }
  } else {
    double f_min = fac * (sq_phi_j + sq_phi_j1) / std::pow(sq_phi_j1 - sq_phi_j, std::max(pj, qj));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      const double fq = std::pow(f_bar, -1.0 / qj);
      const double w = -phi_j1 * t / log_epsilon;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
      sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
      admissible = true;
    }
  }
  if (!admissible || !(sq_bar_j1 > sq_bar_j)) return {};

  const double log_eps_adj = log_epsilon - std::log(f_bar);
  const double w = -sq_bar_j1 * sq_bar_j1 * t / log_eps_adj;
  ContourParams out;
  const double mid = ((1.0 + w) * sq_bar_j + sq_bar_j1);
  out.mu = std::pow(mid / (2.0 + w), 2);
  out.h = -2.0 * kPi / log_eps_adj * (sq_bar_j1 - sq_bar_j) / mid;
  out.n = std::ceil(std::sqrt(1.0 - log_eps_adj / t / out.mu) / out.h);
  return out;
}

// Contour to the right of the rightmost singularity (unbounded region).
ContourParams unbounded_region(double t, double phi_j, double pj, double log_epsilon) {
  const double sq_phi_j = std::sqrt(phi_j);
  double phibar = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
  double sq_phibar = std::sqrt(phibar);
  constexpr double f_min = 1.0, f_max = 10.0, f_tar = 5.0;

  double n = 0.0, a = 0.0, sq_mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double phi_t = phibar * t;
    const double log_eps_phi_t = log_epsilon / phi_t;
    n = std::ceil(phi_t / kPi * (1.0 - 3.0 * log_eps_phi_t / 2.0 + std::sqrt(1.0 - 2.0 * log_eps_phi_t)));
    a = kPi * n / phi_t;
    sq_mu = sq_phibar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
    const double fbar = std::pow((sq_phibar - sq_phi_j) / sq_mu, -pj);
    if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) break;
    sq_phibar = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
    phibar = sq_phibar * sq_phibar;
  }
  ContourParams out;
  out.mu = sq_mu * sq_mu;
  out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
  out.n = n;

  constexpr double log_eps = -36.043653389117154;
  const double threshold = (log_epsilon - log_eps) / t;
  if (out.mu > threshold) {
    const double q = std::abs(pj) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(out.mu);
    phibar = std::pow(q + std::sqrt(phi_j), 2);
    if (phibar < threshold) {
      const double w = std::sqrt(log_eps / (log_eps - log_epsilon));
      const double u = std::sqrt(-phibar * t / log_eps);
      out.mu = threshold;
      out.n = std::ceil(w * log_epsilon / 2.0 / kPi / (u * w - 1.0));
      out.h = std::sqrt(log_eps / (log_eps - log_epsilon)) / out.n;
    } else {
      out.n = kInf;
      out.h = 0.0;
    }
  }
  return out;
}

}  // namespace

Complex contour(double psi, double theta, Complex z) {
  // E_{psi,theta}(z) is the inverse Laplace transform of
  // s^{psi-theta} / (s^psi - z) at t = 1.
  constexpr double t = 1.0;
  const double ph = std::arg(z);
  const double mod = std::pow(std::abs(z), 1.0 / psi);

  struct Singularity {
    Complex s;
    double phi;
  };
  std::vector<Singularity> poles;
  const int k_min = static_cast<int>(std::ceil(-psi / 2.0 - ph / (2.0 * kPi)));
  const int k_max = static_cast<int>(std::floor(psi / 2.0 - ph / (2.0 * kPi)));
  for (int k = k_min; k <= k_max; ++k) {
    const Complex s = std::polar(mod, (ph + 2.0 * kPi * k) / psi);
    const double phi = 0.5 * (s.real() + std::abs(s));
    if (phi > 1e-15) poles.push_back({s, phi});
  }
  std::sort(poles.begin(), poles.end(), [](const auto& a, const auto& b) { return a.phi < b.phi; });

  // singularity list: origin first, then the poles
  std::vector<Complex> s_star{0.0};
  std::vector<double> phi_star{0.0};
  for (const auto& p : poles) {
    s_star.push_back(p.s);
    phi_star.push_back(p.phi);
  }
  const std::size_t n_sing = s_star.size();
  std::vector<double> p_strength(n_sing, 1.0);
  std::vector<double> q_strength(n_sing, 1.0);
  p_strength[0] = std::max(0.0, -2.0 * (psi - theta + 1.0));
  q_strength[n_sing - 1] = kInf;
  phi_star.push_back(kInf);

  constexpr double log_eps = -36.043653389117154;
  double log_epsilon = kLogTarget;
  std::vector<std::size_t> admissible;
  for (std::size_t j = 0; j < n_sing; ++j) {
    if (phi_star[j] < (log_epsilon - log_eps) / t && phi_star[j] < phi_star[j + 1]) admissible.push_back(j);
  }
  if (admissible.empty()) admissible.push_back(0);

  ContourParams best;
  std::size_t best_region = 0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    best = ContourParams{};
    for (std::size_t j : admissible) {
      const ContourParams cp = j + 1 < n_sing
                                   ? bounded_region(t, phi_star[j], phi_star[j + 1], p_strength[j], q_strength[j], log_epsilon)
                                   : unbounded_region(t, phi_star[j], p_strength[j], log_epsilon);
      if (cp.n < best.n) {
        best = cp;
        best_region = j;
      }
    }
    if (best.n <= 200.0) break;
    log_epsilon += std::log(10.0);
  }
  if (!std::isfinite(best.n)) {
    throw AccuracyFailure("mittag_leffler: no admissible integration contour", std::numeric_limits<double>::quiet_NaN(), kInf);
  }

  const int n = static_cast<int>(best.n);
  Complex integral = 0.0;
  for (int k = -n; k <= n; ++k) {
    const double u = best.h * k;
    const Complex s = best.mu * std::pow(Complex(1.0, u), 2);
    const Complex ds = Complex(-2.0 * best.mu * u, 2.0 * best.mu);
    const Complex f = std::pow(s, psi - theta) / (std::pow(s, psi) - z) * ds;
    integral += std::exp(s * t) * f;
  }
  integral *= best.h / (2.0 * kPi * Complex(0.0, 1.0));

  Complex residues = 0.0;
  for (std::size_t j = best_region + 1; j < n_sing; ++j) {
    const Complex s = s_star[j];
    residues += std::exp((1.0 - theta) * std::log(s) + s * t) / psi;
  }
  return integral + residues;
}

}  // namespace ml_detail

Complex mittag_leffler(const MLParams& params) {
  const double psi = params.psi;
  const double theta = params.theta;
  const Complex z = params.z;
  if (!std::isfinite(psi) || !std::isfinite(theta) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("mittag_leffler: non-finite input");
  }
  if (psi <= 0.0) throw InvalidArgument("mittag_leffler: psi must be positive");

  const double mod = std::abs(z);
  if (mod == 0.0) return rgamma(theta);
  // the contour sum loses relative accuracy where exp(z) is tiny
  if (psi == 1.0 && theta == 1.0) return z.imag() == 0.0 ? Complex(std::exp(z.real()), 0.0) : std::exp(z);

  Complex value;
  if (mod <= 1.0) {
    value = ml_detail::series(psi, theta, z);
  } else if (std::log(mod) / psi >= std::log(kMLAsymptoticThreshold)) {
    value = ml_detail::asymptotic(psi, theta, z);
  } else {
    value = ml_detail::contour(psi, theta, z);
  }
  if (z.imag() == 0.0) value = Complex(value.real(), 0.0);
  return value;
}

}  // namespace fracstable
