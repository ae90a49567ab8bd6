#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace fracstable {

using Complex = std::complex<double>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = VectorX<double>;
using Array = Eigen::ArrayXd;

inline constexpr double kPi = std::numbers::pi;

}  // namespace fracstable
