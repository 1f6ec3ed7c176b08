#include "vanhove/random.hpp"

#include <cmath>

namespace vanhove {

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  // Box-Muller, one value per call
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2 * pi * v);
}

SplitMix64 SplitMix64::split() { return SplitMix64((*this)() ^ 0x6a09e667f3bcc909ULL); }

RadialFunction random_radial_function(const GridPtr& grid, SplitMix64& rng, double scale) {
  const int bumps = 3;
  Complex amp[bumps];
  double width[bumps], center[bumps];
  for (int k = 0; k < bumps; ++k) {
    amp[k] = scale * Complex(rng.normal(), rng.normal()) / std::sqrt(2.0 * bumps);
    width[k] = rng.uniform(0.5, 4.0);
    center[k] = rng.uniform(0.0, 2.0);
  }
  return RadialFunction::sample(grid, [&](double r) {
    Complex v = 0;
    for (int k = 0; k < bumps; ++k) v += amp[k] * std::exp(-width[k] * (r - center[k]) * (r - center[k]));
    return v;
  });
}

RadialFunction dyadic_radial_function(const GridPtr& grid, SplitMix64& rng) {
  auto draw = [&rng]() { return static_cast<double>(static_cast<int>(rng() % 2049) - 1024) / 1024.0; };
  ComplexVector v(grid->size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = grid->nodes()[i];
    const double env = std::ldexp(1.0, -static_cast<int>(std::floor(std::min(r * r, 900.0))));
    v[i] = Complex(draw() * env, draw() * env);
  }
  return RadialFunction(grid, std::move(v));
}

}  // namespace vanhove
