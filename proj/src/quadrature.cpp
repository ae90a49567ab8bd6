#include "fracstable/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace fracstable {

namespace {

// 15-point Kronrod nodes on [0, 1] (positive half) with the embedded
// 7-point Gauss weights on the odd nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

QuadResult adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                    int max_intervals) {
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  int evaluations = 15;
  int intervals = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && intervals < max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;  // interval no longer divisible in double precision
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    evaluations += 30;
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to drop the accumulated update rounding
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, evaluations, error <= std::max(abs_tol, rel_tol * std::abs(value))};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     int max_intervals) {
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    QuadResult r = integrate(f, b, a, abs_tol, rel_tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    QuadResult left = integrate(f, a, 0.0, 0.5 * abs_tol, rel_tol, max_intervals);
    QuadResult right = integrate(f, 0.0, b, 0.5 * abs_tol, rel_tol, max_intervals);
    return {left.value + right.value, left.error + right.error, left.evaluations + right.evaluations,
            left.converged && right.converged};
  }
  if (hi_inf) {
    // x = a + u / (1 - u), u in [0, 1)
    auto g = [&](double u) {
      if (u >= 1.0) return 0.0;
      const double w = 1.0 - u;
      const double v = f(a + u / w) / (w * w);
      return std::isfinite(v) ? v : 0.0;
    };
    return adaptive(g, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
  }
  if (lo_inf) {
    auto g = [&](double u) {
      if (u >= 1.0) return 0.0;
      const double w = 1.0 - u;
      const double v = f(b - u / w) / (w * w);
      return std::isfinite(v) ? v : 0.0;
    };
    return adaptive(g, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
  }
  return adaptive(f, a, b, abs_tol, rel_tol, max_intervals);
}

double wynn_epsilon(const std::vector<double>& partial_sums, double& error) {
  const std::size_t n = partial_sums.size();
  error = std::numeric_limits<double>::infinity();
  if (n == 0) return 0.0;
  if (n < 3) {
    if (n == 2) error = std::abs(partial_sums[1] - partial_sums[0]);
    return partial_sums.back();
  }
  // eps[k] holds column k of the epsilon table, built one anti-diagonal at a time
  std::vector<std::vector<double>> table(n + 1);
  table[0].assign(n + 1, 0.0);  // eps_{-1} = 0
  table[1] = partial_sums;      // eps_0
  for (std::size_t k = 2; k <= n; ++k) {
    const auto& prev2 = table[k - 2];
    const auto& prev = table[k - 1];
    auto& cur = table[k];
    cur.resize(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      const double diff = prev[i + 1] - prev[i];
      const double back = (k == 2) ? 0.0 : prev2[i + 1];
      cur[i] = diff != 0.0 ? back + 1.0 / diff : std::numeric_limits<double>::infinity();
    }
  }
  // even columns (odd table index) hold the estimates; take the last finite
  // pair along the deepest usable column
  double best = partial_sums.back();
  double best_err = std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
  for (std::size_t k = 3; k <= n; k += 2) {
    const auto& col = table[k];
    if (col.size() < 2) break;
    const double a = col[col.size() - 1];
    const double b = col[col.size() - 2];
    if (!std::isfinite(a) || !std::isfinite(b)) break;
    const double e = std::abs(a - b);
    if (e < best_err) {
      best = a;
      best_err = e;
    }
  }
  error = best_err;
  return best;
}

}  // namespace fracstable
