#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vanhove/dynamics.hpp"
#include "vanhove/scattering.hpp"
#include "vanhove/states.hpp"

namespace vanhove {

struct SweepReport {
  std::vector<double> hbar_values;  // decreasing
  /// per hbar: max over the panel of |omega_hbar(f) - omega_0(f)|
  std::vector<double> deviations;
  std::optional<double> fitted_order;
  bool converged = false;
  std::string label;
  /// scattering sweeps only: max |transported - untransported| deviation
  std::optional<double> diagram_defect;
};

using StateFamily = std::function<CharState(double hbar)>;

/// Gaussians exp(-sigma r^2), sigma in {0.5, 1, 2, 4}, then the same times i.
std::vector<RadialFunction> standard_panel(const GridPtr& grid);

/// 2^{-3}, ..., 2^{-14}
std::vector<double> default_hbar_ladder(int k_first = 3, int k_last = 14);

/// sup over the panel of |a(f) - b(f)|
double panel_deviation(const Characteristic& a, const Characteristic& b,
                       const std::vector<RadialFunction>& panel);

/// Least-squares slope of log(deviation) against log(hbar) over the points
/// with deviation in [1e-12, 0.1]; throws with fewer than 4 such points.
double fit_rate(const std::vector<double>& hbars, const std::vector<double>& deviations);

/// Evolve family(hbar) and the classical limit omega0 to time t and compare.
SweepReport egorov_sweep(const VanHoveSystem& sys, const StateFamily& family, const CharState& omega0,
                         double t, const std::vector<RadialFunction>& panel,
                         const std::vector<double>& hbars);

enum class Regime { GroundState, Linear, SubLinear, SuperLinear };

struct RegimeSpec {
  Regime regime = Regime::GroundState;
  double beta = 1.0;  // Linear
  double c = 1.0;     // SubLinear / SuperLinear
  double eps = 0.5;   // SubLinear / SuperLinear

  /// Quantum inverse temperature at this hbar: infinity, beta hbar,
  /// c hbar^{1-eps}, c hbar^{1+eps}.
  double beta_h(double hbar) const;
  std::string name() const;
};

/// Quantum Gibbs family of the regime against its classical target. For
/// SuperLinear the deviation is sup |omega_hbar(f)| over nonzero panel
/// members (the limit is the indicator of f = 0).
SweepReport equilibrium_sweep(const VanHoveSystem& sys, const RegimeSpec& regime,
                              const std::vector<RadialFunction>& panel, const std::vector<double>& hbars);

/// Transport family(hbar) and omega0 with the wave operator and compare;
/// also records how far the transported deviations are from the plain ones.
SweepReport scattering_sweep(const VanHoveSystem& sys, const StateFamily& family, const CharState& omega0,
                             const std::vector<RadialFunction>& panel, const std::vector<double>& hbars);

inline constexpr double kDiagramTolerance = 1e-15;

}  // namespace vanhove
