#pragma once

#include <functional>
#include <vector>

namespace fracstable {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b]. Either end may
/// be infinite; infinite ranges are mapped onto finite ones first. Stops
/// once the summed error estimate is below max(abs_tol, rel_tol*|value|).
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     int max_intervals = 4000);

/// Limit of a slowly converging sequence of partial sums by Wynn's epsilon
/// algorithm. `error` receives the difference between the last two
/// diagonal estimates.
double wynn_epsilon(const std::vector<double>& partial_sums, double& error);

}  // namespace fracstable
