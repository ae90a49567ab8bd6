#include "fracstable/stable_sampling.hpp"

#include <cmath>
#include <string>

#include "fracstable/errors.hpp"

namespace fracstable {

namespace {

std::uint64_t splitmix(std::uint64_t x) { return SplitMix64::mix(x + SplitMix64::kGamma); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(splitmix(splitmix(seed) ^ stream_id)) {}

double RngStream::uniform() {
  // 53 random bits, shifted to the cell midpoint so 0 and 1 never occur
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential() { return -std::log(uniform()); }

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t id = splitmix(splitmix(splitmix(stream_id_) ^ a) + b);
  return RngStream(seed_, id);
}

StableIndex::StableIndex(double value) : nu(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw InvalidArgument("nu must lie in (0, 1], got " + std::to_string(value));
  }
}

double sample_log_positive_stable(StableIndex index, RngStream& rng) {
  const double nu = index.nu;
  if (index.degenerate()) return 0.0;
  // Kanter's representation:
  // X = sin(nu U) / sin(U)^{1/nu} * (sin((1-nu) U) / E)^{(1-nu)/nu}
  const double u = kPi * rng.uniform();
  const double e = rng.exponential();
  return std::log(std::sin(nu * u)) - std::log(std::sin(u)) / nu +
         (1.0 - nu) / nu * (std::log(std::sin((1.0 - nu) * u)) - std::log(e));
}

double sample_positive_stable(StableIndex index, double t, RngStream& rng) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  if (index.degenerate()) return t;
  return std::exp(std::log(t) / index.nu + sample_log_positive_stable(index, rng));
}

Vector sample_isotropic_stable_vector(int n, double beta, double t, RngStream& rng) {
  if (n < 1) throw InvalidArgument("dimension n must be at least 1");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in (0, 1]");
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be positive");
  const double clock = sample_positive_stable(StableIndex(beta), t, rng);
  const double scale = std::sqrt(2.0 * clock);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = scale * rng.normal();
  return x;
}

}  // namespace fracstable
