#include "vanhove/scattering.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace vanhove {

namespace {

double translation_angle(const VanHoveSystem& sys, const RadialFunction& f) {
  require_same_grid(f, sys.j());
  return 2 * pi * inner_product(f, sys.j_over_w()).real();
}

}  // namespace

WeylTerm asymptotic_character(const VanHoveSystem& sys, const RadialFunction& f, double hbar,
                              Direction) {
  if (!(hbar >= 0)) throw std::invalid_argument("hbar must be >= 0");
  return {std::polar(1.0, translation_angle(sys, f)), FunctionHandle(f)};
}

std::vector<std::pair<double, double>> decay_probe(const VanHoveSystem& sys, const RadialFunction& f,
                                                   const std::vector<double>& t_grid) {
  require_same_grid(f, sys.j());
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  const OscillatoryOverlap overlap(f, sys.j_over_w(), WeightExponent::Flat);
  for (double t : t_grid) out.emplace_back(t, std::abs(overlap(t)));
  return out;
}

ConvergenceSample convergence_probe(const VanHoveSystem& sys, const RadialFunction& f, double hbar,
                                    double t) {
  if (!(hbar >= 0)) throw std::invalid_argument("hbar must be >= 0");
  require_same_grid(f, sys.j());
  // tau(t)[W(e^{-itw} f)] = W(f) exp(2 pi i Re <e^{-itw} f, (e^{-itw} - 1) J/w>)
  const Complex moving = oscillatory_inner_product(f, sys.j_over_w(), WeightExponent::Flat, t);
  const Complex still = inner_product(f, sys.j_over_w());
  ConvergenceSample s;
  s.coefficient = std::polar(1.0, 2 * pi * (still - moving).real());
  s.target = std::polar(1.0, 2 * pi * still.real());
  s.deviation = std::abs(s.coefficient - s.target);
  s.overlap = std::abs(moving);
  return s;
}

Characteristic transport_state(const VanHoveSystem& sys, const Characteristic& s, Direction) {
  if (s.grid()->id() != sys.grid()->id()) throw std::invalid_argument("state on a foreign grid");
  auto system = std::make_shared<const VanHoveSystem>(sys);
  return Characteristic(s.grid(), s.hbar(), [s, system](const RadialFunction& f) {
    return s(f) * std::polar(1.0, translation_angle(*system, f));
  });
}

Characteristic transport_state(const VanHoveSystem& sys, const CharState& s, Direction dir) {
  return transport_state(sys, s.characteristic(), dir);
}

Characteristic inverse_transport(const VanHoveSystem& sys, const Characteristic& s, Direction) {
  if (s.grid()->id() != sys.grid()->id()) throw std::invalid_argument("state on a foreign grid");
  auto system = std::make_shared<const VanHoveSystem>(sys);
  return Characteristic(s.grid(), s.hbar(), [s, system](const RadialFunction& f) {
    return s(f) * std::polar(1.0, -translation_angle(*system, f));
  });
}

Characteristic scattering_map(const VanHoveSystem& sys, const Characteristic& s) {
  return transport_state(sys, inverse_transport(sys, s, Direction::Incoming), Direction::Outgoing);
}

}  // namespace vanhove
