#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracstable/errors.hpp"
#include "fracstable/spectral_solver.hpp"
#include "fracstable/stable_sampling.hpp"
#include "fracstable/verify.hpp"

using namespace fracstable;

TEST_CASE("empirical_cf trivial samples") {
  const EmpiricalCF zero = empirical_cf(std::vector<double>(50, 0.0), 3.0);
  CHECK(zero.estimate == Complex(1.0, 0.0));
  CHECK(zero.std_error == 0.0);
  CHECK(zero.n_samples == 50);

  const EmpiricalCF rep = empirical_cf(std::vector<double>(20, 0.7), 2.0);
  CHECK(std::abs(rep.estimate - std::exp(Complex(0.0, 1.4))) < 1e-15);

  CHECK_THROWS_AS(empirical_cf(std::vector<double>{}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(empirical_cf(std::vector<double>{1.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(empirical_cf(std::vector<Vector>{Vector::Zero(2), Vector::Zero(2)}, Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("empirical_cf of Gaussian(0, 2) samples") {
  RngStream rng(3, 0);
  std::vector<double> x(100000);
  for (auto& v : x) v = std::sqrt(2.0) * rng.normal();
  const EmpiricalCF cf = empirical_cf(x, 1.0);
  CHECK(std::abs(cf.estimate.real() - std::exp(-1.0)) <= 3.0 * cf.std_error_re);
  CHECK(std::abs(cf.estimate.imag()) <= 3.0 * cf.std_error_im);
  CHECK(std::abs(cf.estimate) <= 1.0);
  CHECK(cf.std_error <= 1.0 / std::sqrt(100000.0));
}

TEST_CASE("standard error scales like n^-1/2") {
  RngStream rng(4, 0);
  std::vector<double> all(100000);
  for (auto& v : all) v = rng.normal();
  double prev = 0.0;
  for (std::size_t n : {1000, 10000, 100000}) {
    const EmpiricalCF cf = empirical_cf(std::vector<double>(all.begin(), all.begin() + n), 1.0);
    if (prev > 0.0) CHECK(cf.std_error * std::sqrt(10.0) / prev == doctest::Approx(1.0).epsilon(0.2));
    prev = cf.std_error;
  }
}

TEST_CASE("sample_mean") {
  const MeanEstimate m = sample_mean({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == 2.5);
  CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK_THROWS_AS(sample_mean({1.0}), InvalidArgument);
}

TEST_CASE("ks_statistic") {
  auto uniform_cdf = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  SUBCASE("quantile grid") {
    std::vector<double> x;
    const int n = 200;
    for (int i = 0; i < n; ++i) x.push_back((i + 0.5) / n);
    CHECK(ks_statistic(x, uniform_cdf).statistic <= 1.0 / n);
  }
  SUBCASE("calibration over 100 seeds") {
    int accepted = 0;
    for (int seed = 0; seed < 100; ++seed) {
      RngStream rng(seed, 7);
      std::vector<double> x(10000);
      for (auto& v : x) v = rng.uniform();
      accepted += ks_statistic(x, uniform_cdf).p_value > 0.01;
    }
    CHECK(accepted >= 97);  // binomial(100, 0.99): P(fewer than 97) ~ 0.08
  }
  SUBCASE("gross mismatch") {
    RngStream rng(1, 1);
    std::vector<double> x(10000);
    for (auto& v : x) v = rng.uniform() + 0.5;
    CHECK(ks_statistic(x, uniform_cdf).p_value < 1e-6);
  }
  SUBCASE("small samples have no p-value") {
    const KsResult r = ks_statistic({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95}, uniform_cdf);
    CHECK(std::isnan(r.p_value));
    CHECK(r.statistic >= 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ks_statistic({0.1, 0.2}, uniform_cdf), InvalidArgument);
    std::vector<double> x;
    for (int i = 0; i < 20; ++i) x.push_back(i / 20.0);
    CHECK_THROWS_AS(ks_statistic(x, [](double v) { return 1.0 - v; }), InvalidArgument);
  }
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.3580986393225505) == doctest::Approx(0.05).epsilon(1e-8));
  CHECK(kolmogorov_survival(1.6276236115189089) == doctest::Approx(0.01).epsilon(1e-8));
  const long n = 100000;
  const double crit = ks_critical_value(n);
  CHECK(kolmogorov_survival(crit * std::sqrt(double(n))) == doctest::Approx(0.01).epsilon(1e-8));
  CHECK(crit == doctest::Approx(1.6276236115189089 / std::sqrt(double(n))).epsilon(1e-9));
  CHECK(ks_critical_value_two_sample(n, n) == doctest::Approx(ks_critical_value(n / 2)).epsilon(1e-12));
}

TEST_CASE("ks_two_sample") {
  RngStream rng(5, 0);
  std::vector<double> a(5000), b(5000), c(5000);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal();
  for (auto& v : c) v = rng.normal() + 0.2;
  CHECK(ks_two_sample(a, b).p_value > 0.01);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("check_normalization") {
  auto gauss = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi); };
  const NormalizationResult g = check_normalization(gauss, -10.0, 10.0, 1e-10);
  CHECK(g.pass);
  CHECK(std::abs(g.mass - 1.0) <= 1e-10);

  const NormalizationResult inf = check_normalization(gauss, -INFINITY, INFINITY, 1e-10);
  CHECK(inf.pass);

  const NormalizationResult half = check_normalization([&](double x) { return 0.5 * gauss(x); }, -10.0, 10.0, 1e-6);
  CHECK(half.mass == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(half.pass);

  const NormalizationResult lim =
      check_radial_normalization([](double r) { return limit_density_radial(1.0, 1.0, 2, r); }, 2, 1e-8);
  CHECK(lim.pass);
  CHECK(std::abs(lim.mass - 1.0) <= 1e-8);
}
