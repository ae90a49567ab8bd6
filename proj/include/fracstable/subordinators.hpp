#pragma once

#include <vector>

#include "fracstable/stable_sampling.hpp"

namespace fracstable {

struct SubordinatorTerm {
  double lambda;
  double nu;
};

/// Terms {(lambda_j, nu_j)} of H(t) = sum_j lambda_j^{1/nu_j} H_j^{nu_j}(t).
struct SubordinatorSpec {
  std::vector<SubordinatorTerm> terms;

  SubordinatorSpec() = default;
  SubordinatorSpec(std::initializer_list<SubordinatorTerm> list) : terms(list) {}
  explicit SubordinatorSpec(std::vector<SubordinatorTerm> list) : terms(std::move(list)) {}

  /// Throws InvalidArgument unless m >= 1, lambda_j > 0, nu_j in (0, 1].
  void validate() const;
  double sum_lambda() const;
  bool all_drift() const;  // every nu_j == 1
  /// sum_j lambda_j mu^{nu_j^depth}: Laplace exponent of the depth-fold iterated process.
  double laplace_exponent(double mu, int depth = 1) const;
};

struct MonotonePath {
  std::vector<double> times;
  std::vector<double> values;
};

/// One draw of H(t).
double sample_H(const SubordinatorSpec& spec, double t, RngStream& rng);

/// Path of H on `grid` (strictly increasing, grid[0] == 0) built from
/// independent increments.
MonotonePath simulate_H_path(const SubordinatorSpec& spec, const std::vector<double>& grid, RngStream& rng);

/// Random curve s -> sum_j (lambda_j s)^{1/nu_j^depth} C_j with fixed unit
/// draws C_j. At every fixed s its value has the law of the (iterated)
/// process at time s, and it is increasing in s, so its first passage over
/// t has the law of the inverse process at t. One object gives a coupling
/// of the inverse process across all t.
class SelfSimilarDraw {
 public:
  SelfSimilarDraw(const SubordinatorSpec& spec, int depth, RngStream& rng);

  double value_at(double s) const;
  /// Left end of the cell [k tol, (k+1) tol) containing the first passage
  /// over t. Exact (no grid) when every nu_j == 1.
  double first_passage(double t, double tol) const;

 private:
  double log_value_at(double log_s) const;

  std::vector<double> exponent_;   // 1 / nu_j^depth
  std::vector<double> log_shift_;  // exponent_j log lambda_j + log C_j
  double drift_total_ = 0.0;
  bool all_drift_ = false;
};

/// One draw of the inverse (first-passage) process L(t) = inf{s : H(s) >= t},
/// reported on a grid of width refine_tol (bias at most refine_tol, downward).
double sample_L(const SubordinatorSpec& spec, double t, double refine_tol, RngStream& rng);

/// One draw of the depth-fold iterated process: per term an r-fold
/// composition of independent nu_j-stable subordinators evaluated at t,
/// weighted so that E exp(-mu X) = exp(-t sum_j lambda_j mu^{nu_j^depth}).
double sample_iterated_H(const SubordinatorSpec& spec, int depth, double t, RngStream& rng);

/// First passage of the iterated process over t, same grid contract as sample_L.
double sample_iterated_L(const SubordinatorSpec& spec, int depth, double t, double refine_tol, RngStream& rng);

inline double default_refine_tol(double t) { return 1e-6 * t; }

}  // namespace fracstable
