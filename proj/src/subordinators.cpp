#include "fracstable/subordinators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracstable/errors.hpp"

namespace fracstable {

void SubordinatorSpec::validate() const {
  if (terms.empty()) throw InvalidArgument("subordinator spec needs at least one term");
  for (const auto& term : terms) {
    if (!(term.lambda > 0.0) || !std::isfinite(term.lambda)) throw InvalidArgument("lambda must be positive");
    if (!(term.nu > 0.0 && term.nu <= 1.0)) throw InvalidArgument("nu must lie in (0, 1]");
  }
}

double SubordinatorSpec::sum_lambda() const {
  double s = 0.0;
  for (const auto& term : terms) s += term.lambda;
  return s;
}

bool SubordinatorSpec::all_drift() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& term) { return term.nu == 1.0; });
}

double SubordinatorSpec::laplace_exponent(double mu, int depth) const {
  double s = 0.0;
  for (const auto& term : terms) s += term.lambda * std::pow(mu, std::pow(term.nu, depth));
  return s;
}

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
}

void check_depth(int depth) {
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
}

// log of one unit-time draw of the r-fold composition H_1(H_2(...H_r(1)))
// of independent nu-stable subordinators: sum_i nu^{-(i-1)} log X_i
double log_composite_unit(double nu, int depth, RngStream& rng) {
  if (nu == 1.0) return 0.0;
  double acc = 0.0;
  double scale = 1.0;
  const StableIndex index(nu);
  for (int i = 0; i < depth; ++i) {
    acc += scale * sample_log_positive_stable(index, rng);
    scale /= nu;
  }
  return acc;
}

}  // namespace

double sample_H(const SubordinatorSpec& spec, double t, RngStream& rng) {
  spec.validate();
  check_time(t);
  double total = 0.0;
  for (const auto& term : spec.terms) {
    if (term.nu == 1.0) {
      total += term.lambda * t;
    } else {
      // lambda^{1/nu} H^nu(t) has the law of H^nu(lambda t)
      total += sample_positive_stable(StableIndex(term.nu), term.lambda * t, rng);
    }
  }
  return total;
}

MonotonePath simulate_H_path(const SubordinatorSpec& spec, const std::vector<double>& grid, RngStream& rng) {
  spec.validate();
  if (grid.empty() || grid.front() != 0.0) throw InvalidArgument("time grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("time grid must be strictly increasing");
  }
  MonotonePath path;
  path.times = grid;
  path.values.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    path.values[i] = path.values[i - 1] + sample_H(spec, grid[i] - grid[i - 1], rng);
  }
  return path;
}

SelfSimilarDraw::SelfSimilarDraw(const SubordinatorSpec& spec, int depth, RngStream& rng) {
  spec.validate();
  check_depth(depth);
  all_drift_ = spec.all_drift();
  // one key per draw, then independent substreams per (level, branch)
  const RngStream base = rng.substream(rng.bits());
  for (std::size_t j = 0; j < spec.terms.size(); ++j) {
    const auto& term = spec.terms[j];
    if (term.nu == 1.0) drift_total_ += term.lambda;
    const double a = 1.0 / std::pow(term.nu, depth);
    double log_c = 0.0;
    if (term.nu != 1.0) {
      RngStream branch = base.substream(static_cast<std::uint64_t>(depth), j);
      log_c = log_composite_unit(term.nu, depth, branch);
    }
    exponent_.push_back(a);
    log_shift_.push_back(a * std::log(term.lambda) + log_c);
  }
}

double SelfSimilarDraw::log_value_at(double log_s) const {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < exponent_.size(); ++j) top = std::max(top, exponent_[j] * log_s + log_shift_[j]);
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (std::size_t j = 0; j < exponent_.size(); ++j) sum += std::exp(exponent_[j] * log_s + log_shift_[j] - top);
  return top + std::log(sum);
}

double SelfSimilarDraw::value_at(double s) const {
  if (s <= 0.0) return 0.0;
  return std::exp(log_value_at(std::log(s)));
}

double SelfSimilarDraw::first_passage(double t, double tol) const {
  check_time(t);
  if (!(tol > 0.0)) throw InvalidArgument("refine_tol must be positive");
  if (all_drift_) return t / drift_total_;

  // The sum dominates each term and is at most m times the largest one, so
  // the root lies between the single-term roots for t/m and for t.
  const double log_t = std::log(t);
  const double log_m = std::log(static_cast<double>(exponent_.size()));
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < exponent_.size(); ++j) {
    hi = std::min(hi, (log_t - log_shift_[j]) / exponent_[j]);
    lo = std::min(lo, (log_t - log_m - log_shift_[j]) / exponent_[j]);
  }
  double root = hi;
  if (exponent_.size() > 1) {
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (log_value_at(mid) >= log_t) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    root = hi;
  }
  const double s = std::exp(root);
  if (!std::isfinite(s)) return s;
  return std::floor(s / tol) * tol;
}

double sample_L(const SubordinatorSpec& spec, double t, double refine_tol, RngStream& rng) {
  return sample_iterated_L(spec, 1, t, refine_tol, rng);
}

double sample_iterated_H(const SubordinatorSpec& spec, int depth, double t, RngStream& rng) {
  spec.validate();
  check_depth(depth);
  check_time(t);
  SelfSimilarDraw draw(spec, depth, rng);
  return draw.value_at(t);
}

double sample_iterated_L(const SubordinatorSpec& spec, int depth, double t, double refine_tol, RngStream& rng) {
  spec.validate();
  check_depth(depth);
  check_time(t);
  if (!(refine_tol > 0.0)) throw InvalidArgument("refine_tol must be positive");
  SelfSimilarDraw draw(spec, depth, rng);
  return draw.first_passage(t, refine_tol);
}

}  // namespace fracstable
