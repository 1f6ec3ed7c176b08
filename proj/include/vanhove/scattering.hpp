#pragma once

#include <utility>
#include <vector>

#include "vanhove/dynamics.hpp"

namespace vanhove {

enum class Direction { Incoming = -1, Outgoing = +1 };

/// W(f) exp(2 pi i Re <f, J/w>); the same for both directions.
WeylTerm asymptotic_character(const VanHoveSystem& sys, const RadialFunction& f, double hbar,
                              Direction dir = Direction::Outgoing);

/// |<f, exp(i t w) J/w>| for each t, with oscillatory quadrature.
std::vector<std::pair<double, double>> decay_probe(const VanHoveSystem& sys, const RadialFunction& f,
                                                   const std::vector<double>& t_grid);

struct ConvergenceSample {
  Complex coefficient;  // of tau(t)[W(exp(-i t w) f)], generator f
  Complex target;       // asymptotic coefficient
  double deviation = 0;
  double overlap = 0;   // |<f, exp(i t w) J/w>|
};

ConvergenceSample convergence_probe(const VanHoveSystem& sys, const RadialFunction& f, double hbar,
                                    double t);

/// f -> omega(W(f)) exp(+-2 pi i Re <f, J/w>), + for the wave operator and
/// - for its inverse.
Characteristic transport_state(const VanHoveSystem& sys, const Characteristic& s, Direction dir);
Characteristic transport_state(const VanHoveSystem& sys, const CharState& s, Direction dir);
Characteristic inverse_transport(const VanHoveSystem& sys, const Characteristic& s, Direction dir);

/// transport(+) after transport(-)^{-1}
Characteristic scattering_map(const VanHoveSystem& sys, const Characteristic& s);

}  // namespace vanhove
