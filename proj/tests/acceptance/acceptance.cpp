// Acceptance checks, one pass/fail line per criterion.
// Usage: acceptance [id ...]   (no ids: run all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fracstable/ensemble.hpp"
#include "fracstable/special_functions.hpp"
#include "fracstable/spectral_solver.hpp"
#include "fracstable/subordinators.hpp"
#include "fracstable/verify.hpp"

using namespace fracstable;

namespace {

// pinned tolerances
constexpr double kSemigroupTol = 1e-6;
constexpr double kBands = 3.0;  // standard errors
constexpr std::size_t kDraws = 100000;
constexpr double kCfTol = 1e-8;
constexpr double kCertifyAgreement = 1e-7;
constexpr double kTelegraphTol = 1e-5;
constexpr double kTelegraphNu1Tol = 1e-10;
constexpr double kK3Tol = 1e-5;
constexpr double kKsLevel = 0.01;
constexpr double kMassTol = 1e-8;
constexpr double kPdeTol = 1e-5;
constexpr double kHankelTol = 1e-6;
constexpr double kOracleTol = 1e-10;

struct Outcome {
  bool pass;
  std::string detail;
};

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3g", v); }

ModelParams model(SubordinatorSpec spec, double beta, double c, int n) {
  ModelParams p;
  p.spec = std::move(spec);
  p.beta = beta;
  p.c = c;
  p.n = n;
  return p;
}

const SubordinatorSpec kTwoTerm{{1.0, 0.5}, {2.0, 0.8}};

double fraction_below(const std::vector<double>& x, double level) {
  return static_cast<double>(std::count_if(x.begin(), x.end(), [&](double v) { return v < level; })) / x.size();
}

std::vector<std::vector<double>> read_csv(const std::string& name) {
  std::ifstream in(std::string(FRACSTABLE_TEST_DATA) + "/" + name);
  std::vector<std::vector<double>> rows;
  if (!in) return rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// 1. density_1d of the heat semigroup against N(0, 2)
Outcome semigroup() {
  const DensityGrid g = density_1d(model({{1.0, 1.0}}, 1.0, 1.0, 1), 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.abscissae.size(); ++i) {
    const double x = g.abscissae[i];
    worst = std::max(worst, std::abs(g.values[i] - std::exp(-x * x / 4.0) / std::sqrt(4.0 * kPi)));
  }
  return {worst <= kSemigroupTol, "max_abs_err=" + sci(worst) + " tol=" + sci(kSemigroupTol)};
}

// 2. E exp(-mu H(1)) against exp(-sum lambda_j mu^nu_j)
Outcome subordinator_laplace() {
  const auto h = generate_ensemble<double>(kDraws, 2, workers(), [](RngStream& r) { return sample_H(kTwoTerm, 1.0, r); });
  bool ok = true;
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    std::vector<double> e(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) e[i] = std::exp(-mu * h[i]);
    const MeanEstimate m = sample_mean(e);
    const double z = std::abs(m.mean - std::exp(-kTwoTerm.laplace_exponent(mu))) / m.std_error;
    worst = std::max(worst, z);
    ok = ok && z <= kBands;
  }
  return {ok, "max_z=" + fmt("%.2f", worst) + " over 5 mu, band=" + fmt("%.0f", kBands)};
}

// 3. P{L(t) < x} = P{H(x) > t} on a 4 x 4 grid
Outcome inverse_identity() {
  bool ok = true;
  double worst = 0.0;
  std::uint64_t seed = 300;
  const std::vector<double> grid{0.25, 0.5, 1.0, 2.0};
  for (const SubordinatorSpec& spec : {SubordinatorSpec{{1.0, 0.6}}, SubordinatorSpec{{1.0, 0.5}, {3.0, 0.9}}}) {
    std::vector<std::vector<double>> h;
    for (double x : grid) {
      h.push_back(generate_ensemble<double>(kDraws, seed++, workers(), [&](RngStream& r) { return sample_H(spec, x, r); }));
    }
    for (double t : grid) {
      const auto l = generate_ensemble<double>(kDraws, seed++, workers(), [&](RngStream& r) {
        return sample_L(spec, t, default_refine_tol(t), r);
      });
      for (std::size_t ix = 0; ix < grid.size(); ++ix) {
        const double p1 = fraction_below(l, grid[ix]);
        const double p2 = 1.0 - fraction_below(h[ix], t);
        const double se = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / kDraws);
        const double z = se > 0.0 ? std::abs(p1 - p2) / se : (p1 == p2 ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        ok = ok && z <= kBands;
      }
    }
  }
  return {ok, "max_z=" + fmt("%.2f", worst) + " over 2 specs x 16 points, band=" + fmt("%.0f", kBands)};
}

// 4. empirical CF of S^{2 beta}(c^2 L(t)) against certified cf_time
Outcome composition_law() {
  const ModelParams p = model(kTwoTerm, 0.75, 1.0, 2);
  const double t = 1.0;
  const auto x = generate_ensemble<Vector>(kDraws, 4, workers(), [&](RngStream& r) {
    return sample_solution(p, 1, t, default_refine_tol(t), r);
  });
  bool ok = true;
  double worst_z = 0.0, worst_cert = 0.0, worst_talbot = 0.0;
  for (double xi : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    Vector v(2);
    v << xi * std::cos(0.3), xi * std::sin(0.3);
    const EmpiricalCF cf = empirical_cf(x, v);
    const auto q = SpectralQuery::at_time(xi, t);
    const double want = cf_time(p, q, kCfTol);
    const CfCertificate cert = certify_cf_time(p, q);
    const double z_re = std::abs(cf.estimate.real() - want) / cf.std_error_re;
    const double z_im = std::abs(cf.estimate.imag()) / cf.std_error_im;
    worst_z = std::max({worst_z, z_re, z_im});
    worst_cert = std::max(worst_cert, cert.agreement);
    worst_talbot = std::max(worst_talbot, cert.talbot_error);
    ok = ok && z_re <= kBands && z_im <= kBands && cert.agreement <= kCertifyAgreement && cert.talbot_error <= kCfTol;
  }
  return {ok, "max_z=" + fmt("%.2f", worst_z) + " over 6 xi, talbot_err=" + sci(worst_talbot) +
                  " talbot_vs_gs=" + sci(worst_cert) + " (<= " + sci(kCertifyAgreement) + ")"};
}

double telegraph_cf(double lambda, double c, double xi, double t) {
  const double d = lambda * lambda - c * c * xi * xi;
  if (d > 0) {
    const double s = std::sqrt(d);
    return std::exp(-lambda * t) * (std::cosh(s * t) + lambda / s * std::sinh(s * t));
  }
  if (d < 0) {
    const double w = std::sqrt(-d);
    return std::exp(-lambda * t) * (std::cos(w * t) + lambda / w * std::sin(w * t));
  }
  return std::exp(-lambda * t) * (1.0 + lambda * t);
}

// 5. k = 2 closed form against inversion, and nu = 1 against the telegraph CF
Outcome telegraph() {
  const double lambda = 1.0, c = 1.0, nu = 0.4;
  const ModelParams p = model(telegraph_spec(2, lambda, nu), 1.0, c, 1);
  double worst = 0.0, worst_nu1 = 0.0;
  int above = 0, below = 0;
  for (double xi : {0.25, 0.5, 0.9, 2.0, 4.0}) {
    (lambda * lambda > c * c * xi * xi ? above : below)++;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      worst = std::max(worst, std::abs(cf_telegraph_k2(lambda, c, nu, xi, t) - cf_time(p, SpectralQuery::at_time(xi, t))));
      worst_nu1 = std::max(worst_nu1, std::abs(cf_telegraph_k2(lambda, c, 1.0, xi, t) - telegraph_cf(lambda, c, xi, t)));
    }
  }
  const bool ok = worst <= kTelegraphTol && worst_nu1 <= kTelegraphNu1Tol && above > 0 && below > 0;
  return {ok, "grid max_diff=" + sci(worst) + " (tol " + sci(kTelegraphTol) + "), nu=1 max_diff=" + sci(worst_nu1) +
                  " (tol " + sci(kTelegraphNu1Tol) + ")"};
}

// 6. k = 3 closed form against inversion, both readings of the middle term
Outcome k3() {
  struct Point {
    double lambda, c, beta, nu, xi, t;
  };
  const std::vector<Point> points{{1.0, 1.0, 1.0, 0.3, 1.0, 1.0},
                                  {1.0, 1.0, 1.0, 0.2, 1.0, 1.0},
                                  {0.5, 1.0, 0.8, 1.0 / 3.0, 1.5, 0.7},
                                  {2.0, 0.7, 1.0, 0.2, 2.0, 2.0},
                                  {1.0, 1.5, 0.6, 0.3, 0.5, 3.0}};
  double uniform = 0.0, mixed = 0.0;
  for (const auto& q : points) {
    const double inv = cf_time(model(telegraph_spec(3, q.lambda, q.nu), q.beta, q.c, 1), SpectralQuery::at_time(q.xi, q.t));
    uniform = std::max(uniform, std::abs(cf_telegraph_k3(q.lambda, q.c, q.beta, q.nu, q.xi, q.t, K3Variant::kUniform) - inv));
    const Complex m = cf_telegraph_k3_complex(q.lambda, q.c, q.beta, q.nu, q.xi, q.t, K3Variant::kMixed);
    mixed = std::max(mixed, std::abs(m - inv));
  }
  const bool uniform_wins = uniform < mixed;
  return {uniform <= kK3Tol, std::string("winner=") + (uniform_wins ? "E_{nu,1-2nu}" : "E_{nu,1-nu}") +
                                 " residual(1-2nu)=" + sci(uniform) + " residual(1-nu)=" + sci(mixed) +
                                 " tol=" + sci(kK3Tol)};
}

// 7. KS distance of B(c^2 L_r(1)) to the Gauss-Laplace law over r
Outcome iterated_limit() {
  const SubordinatorSpec spec{{1.0, 0.7}, {1.0, 0.9}};
  const double c = 1.0;
  const ModelParams p = model(spec, 1.0, c, 1);
  const double b = std::sqrt(spec.sum_lambda()) / c;
  auto laplace_cdf = [b](double x) { return x < 0 ? 0.5 * std::exp(b * x) : 1.0 - 0.5 * std::exp(-b * x); };
  const double crit = ks_critical_value(kDraws, kKsLevel);
  std::vector<double> d;
  std::string detail = "KS:";
  for (int r : {2, 4, 6, 8}) {
    const auto x = generate_ensemble<double>(kDraws, 700 + r, workers(), [&](RngStream& rng) {
      return sample_solution(p, r, 1.0, default_refine_tol(1.0), rng)[0];
    });
    d.push_back(ks_statistic(x, laplace_cdf).statistic);
    detail += " r=" + std::to_string(r) + ":" + fmt("%.4f", d.back());
  }
  bool monotone = true;
  for (std::size_t i = 1; i < d.size(); ++i) monotone = monotone && d[i] < d[i - 1];
  const bool below = d.back() < crit;
  return {monotone && below, detail + " monotone=" + (monotone ? "yes" : "no") + " critical(1%)=" + fmt("%.5f", crit)};
}

// 8. limit density: mass, PDE, Hankel inversion
Outcome limit_density_checks() {
  const double sl = 2.0, c = 1.0;
  double worst_mass = 0.0, worst_pde = 0.0, worst_hankel = 0.0;
  for (int n : {1, 2, 3, 4}) {
    const NormalizationResult res =
        check_radial_normalization([&](double r) { return limit_density_radial(sl, c, n, r); }, n, kMassTol);
    worst_mass = std::max(worst_mass, std::abs(res.mass - 1.0));
    const double h = 1e-4;
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      auto w = [&](double s) { return limit_density_radial(sl, c, n, s); };
      const double d1 = (w(r + h) - w(r - h)) / (2 * h);
      const double d2 = (w(r + h) - 2 * w(r) + w(r - h)) / (h * h);
      const double lap = d2 + (n - 1) / r * d1;
      worst_pde = std::max(worst_pde, std::abs(c * c * lap - sl * w(r)) / (sl * w(r)));
    }
  }
  const SubordinatorSpec spec{{1.0, 0.7}, {1.0, 0.9}};
  for (int n : {1, 2, 3}) {
    const std::vector<double> r{0.5, 1.0, 2.0};
    const DensityGrid g = density_radial(model(spec, 1.0, c, n), r, RadialOptions{.limit = true});
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double want = limit_density_radial(sl, c, n, r[i]);
      worst_hankel = std::max(worst_hankel, std::abs(g.values[i] - want) / want);
    }
  }
  const bool ok = worst_mass <= kMassTol && worst_pde <= kPdeTol && worst_hankel <= kHankelTol;
  return {ok, "mass_err=" + sci(worst_mass) + " pde_rel=" + sci(worst_pde) + " hankel_rel=" + sci(worst_hankel)};
}

// 9. special functions against the frozen oracles
Outcome special_functions() {
  const auto ml = read_csv("mittag_leffler_oracle.csv");
  const auto bk = read_csv("bessel_k_oracle.csv");
  if (ml.size() != 500 || bk.size() != 200) return {false, "oracle files missing or wrong size"};
  double worst_ml = 0.0, worst_bk = 0.0;
  for (const auto& r : ml) {
    const Complex want(r[4], r[5]);
    worst_ml = std::max(worst_ml, std::abs(mittag_leffler(r[0], r[1], Complex(r[2], r[3])) - want) / std::abs(want));
  }
  for (const auto& r : bk) worst_bk = std::max(worst_bk, std::abs(bessel_k(r[0], r[1]) / r[2] - 1.0));
  return {worst_ml <= kOracleTol && worst_bk <= kOracleTol,
          "mittag_leffler max_rel=" + sci(worst_ml) + " (500 pts), bessel_k max_rel=" + sci(worst_bk) + " (200 pts)"};
}

// 10. iterated transform against simulation, and convergence to the limit
Outcome iterated_transform() {
  // E int e^{-mu t} e^{-a L_r(t)} dt = (1 - E e^{-mu H_r(S)}) / mu with S ~ Exp(a)
  const double beta = 1.0, c = 1.0, xi = 1.0;
  const double a = c * c * std::pow(xi, 2 * beta);
  bool ok = true;
  double worst_z = 0.0;
  std::uint64_t seed = 1100;
  for (int r : {1, 2, 3}) {
    for (double mu : {0.5, 1.0, 2.0}) {
      const auto z = generate_ensemble<double>(kDraws, seed++, workers(), [&](RngStream& rng) {
        const double s = rng.exponential() / a;
        return (1.0 - std::exp(-mu * sample_iterated_H(kTwoTerm, r, s, rng))) / mu;
      });
      const MeanEstimate m = sample_mean(z);
      const double want = cf_iterated_laplace(kTwoTerm, r, beta, c, SpectralQuery::at_laplace(xi, mu)).real();
      const double score = std::abs(m.mean - want) / m.std_error;
      worst_z = std::max(worst_z, score);
      ok = ok && score <= kBands;
    }
  }
  std::string detail = "mc max_z=" + fmt("%.2f", worst_z) + " (r=1,2,3 x 3 mu);";
  for (double mu : {1.0, 0.1, 10.0}) {
    const auto q = SpectralQuery::at_laplace(xi, mu);
    const Complex lim = cf_limit(kTwoTerm, beta, c, q);
    std::vector<double> gap;
    for (int r : {2, 4, 8, 16}) gap.push_back(std::abs(cf_iterated_laplace(kTwoTerm, r, beta, c, q) - lim));
    bool shrinking = true;
    if (mu == 1.0) {
      // every mu^{nu^r} is 1: the gap is identically zero
      for (double g : gap) shrinking = shrinking && g == 0.0;
    } else {
      for (std::size_t i = 1; i < gap.size(); ++i) shrinking = shrinking && gap[i] < gap[i - 1];
    }
    ok = ok && shrinking;
    detail += " mu=" + fmt("%g", mu) + " gaps " + sci(gap[0]) + ">" + sci(gap[3]) + (shrinking ? " ok" : " NOT");
  }
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double runtime_limit;  // seconds, 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "semigroup sanity", 5.0, semigroup},
      {2, "subordinator Laplace transform", 30.0, subordinator_laplace},
      {3, "inverse-process identity", 60.0, inverse_identity},
      {4, "composition law", 120.0, composition_law},
      {5, "telegraph closed form", 0.0, telegraph},
      {6, "k=3 closed form", 0.0, k3},
      {7, "iterated limit", 0.0, iterated_limit},
      {8, "limit-density certification", 0.0, limit_density_checks},
      {9, "special-function suite", 0.0, special_functions},
      {10, "iterated transform", 0.0, iterated_transform},
  };
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (const auto& c : all) ids.push_back(c.id);
  }
  int failures = 0;
  for (int id : ids) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == all.end()) {
      std::printf("criterion %d: FAIL unknown criterion\n", id);
      ++failures;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = it->run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = it->runtime_limit <= 0.0 || secs < it->runtime_limit;
    const bool pass = out.pass && in_time;
    std::string timing = "runtime=" + fmt("%.1f", secs) + "s";
    if (it->runtime_limit > 0.0) timing += " (limit " + fmt("%.0f", it->runtime_limit) + "s)";
    std::printf("criterion %d [%s]: %s %s %s\n", id, it->name, pass ? "PASS" : "FAIL", out.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    failures += !pass;
  }
  return failures == 0 ? 0 : 1;
}
