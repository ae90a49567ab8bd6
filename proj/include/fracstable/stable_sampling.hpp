#pragma once

#include <cstdint>
#include <random>

#include "fracstable/types.hpp"

namespace fracstable {

/// SplitMix64: a 64-bit Weyl counter passed through a mixing function.
/// Seeding is one hash, so short-lived streams cost nothing to create.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state = 0) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return mix(state_ += kGamma); }
  static constexpr std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

 private:
  std::uint64_t state_;
};

/// Reproducible random stream identified by (seed, stream_id). The starting
/// counter is a hash of both, and substreams hash the id with extra keys.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double exponential();
  std::uint64_t bits() { return engine_(); }

  /// Independent stream keyed by (this stream's id, a, b). Deterministic:
  /// it does not consume from or depend on the state of this stream.
  RngStream substream(std::uint64_t a, std::uint64_t b = 0) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  SplitMix64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stability index of a positively skewed stable law, 0 < nu <= 1.
/// nu == 1 is the degenerate case H(t) = t.
struct StableIndex {
  double nu;

  explicit StableIndex(double value);
  bool degenerate() const { return nu == 1.0; }
};

/// One draw of H^nu(t), the positive stable law with E exp(-mu H) = exp(-t mu^nu).
double sample_positive_stable(StableIndex nu, double t, RngStream& rng);

/// log of a unit-time draw (t = 1); avoids overflow for small nu.
double sample_log_positive_stable(StableIndex nu, RngStream& rng);

/// Isotropic n-dimensional stable vector with characteristic function
/// exp(-t |xi|^{2 beta}), drawn as a standard Gaussian vector scaled by
/// sqrt(2 H^beta(t)).
Vector sample_isotropic_stable_vector(int n, double beta, double t, RngStream& rng);

}  // namespace fracstable
