#pragma once

#include <cstdint>
#include <limits>

#include "vanhove/grid.hpp"

namespace vanhove {

/// splitmix64; usable as a UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// uniform in [0, 1), 53 random bits
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// independent stream derived from this one
  SplitMix64 split();

 private:
  std::uint64_t state_;
};

/// Smooth random test function: random complex Gaussian mixture in r.
RadialFunction random_radial_function(const GridPtr& grid, SplitMix64& rng, double scale = 1.0);

/// Samples k / 2^10 * 2^{-floor(r^2)} with random integer k in [-1024, 1024]
/// (real and imaginary parts): all sums and differences of such functions
/// are exact in double precision.
RadialFunction dyadic_radial_function(const GridPtr& grid, SplitMix64& rng);

}  // namespace vanhove
