#pragma once

#include <functional>

#include "fracstable/types.hpp"

namespace fracstable {

using LaplaceTransform = std::function<Complex(Complex)>;
using RealLaplaceTransformQ = std::function<__float128(__float128)>;

/// Fixed-Talbot inversion with M nodes: f(t) from its Laplace transform F.
/// Round-off grows like eps*exp(2M/5), so M = 32 is the practical ceiling
/// in double precision.
double talbot(const LaplaceTransform& transform, double t, int nodes = 32);

struct InversionResult {
  double value = 0.0;
  double error = 0.0;  // |talbot(M) - talbot(M_low)|
};

/// Talbot inversion with a convergence-based error estimate from two node
/// counts.
InversionResult invert_laplace(const LaplaceTransform& transform, double t, int nodes = 32, int nodes_low = 24);

/// Gaver-Stehfest inversion carried out in quad precision. Needs the
/// transform on the positive real axis only, evaluated in quad precision
/// (the alternating weights reach ~1e20). Used as an independent cross-check
/// of the Talbot results.
double gaver_stehfest(const RealLaplaceTransformQ& transform, double t, int half_terms = 14);

}  // namespace fracstable
