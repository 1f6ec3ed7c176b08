#pragma once

#include <vector>

#include "vanhove/grid.hpp"
#include "vanhove/sources.hpp"
#include "vanhove/states.hpp"
#include "vanhove/weyl.hpp"

namespace vanhove {

/// Classical and quantum van Hove dynamics for a source J in L^2_{1/w}.
class VanHoveSystem {
 public:
  /// Throws std::domain_error for TypeII or out-of-scope sources.
  explicit VanHoveSystem(SourceSpec source);

  const GridPtr& grid() const { return source_.grid; }
  const SourceSpec& source() const { return source_; }
  const RadialFunction& j() const { return j_; }
  const RadialFunction& j_over_w() const { return j_over_w_; }
  InfraredClass infrared() const { return class_; }

 private:
  SourceSpec source_;
  InfraredClass class_;
  RadialFunction j_;
  RadialFunction j_over_w_;
};

/// exp(-i t w)(alpha0 + J/w) - J/w
RadialFunction classical_flow(const VanHoveSystem& sys, const RadialFunction& alpha0, double t);

/// ||alpha||^2_{L^2_w} + 2 Re <alpha, J>
double classical_energy(const VanHoveSystem& sys, const RadialFunction& alpha);

/// exp(2 pi i Re <f, (exp(-i t w) - 1) J/w>), the phase picked up by W(f).
Complex evolution_phase(const VanHoveSystem& sys, const RadialFunction& f, double t);

/// W(f) -> W(exp(i t w) f) times evolution_phase(f, t), term by term.
TrigPolynomial evolve_weyl(const VanHoveSystem& sys, const TrigPolynomial& a, double t);

/// Dual action on states: f -> omega(exp(i t w) f) evolution_phase(f, t).
Characteristic evolve_state(const VanHoveSystem& sys, const Characteristic& s, double t);
Characteristic evolve_state(const VanHoveSystem& sys, const CharState& s, double t);

/// omega(W(f) tau(t)[W(g)]) computed through the algebra: evolve, compose,
/// evaluate.
Complex correlation(const VanHoveSystem& sys, const CharState& s, const RadialFunction& f,
                    const RadialFunction& g, double t);
/// omega(tau(t)[W(g)] W(f)), same route.
Complex reversed_correlation(const VanHoveSystem& sys, const CharState& s, const RadialFunction& f,
                             const RadialFunction& g, double t);

/// KMS boundary identity for a finite-temperature quantum Gibbs state:
/// the closed form of omega(W(f) tau(t + i beta_h)[W(g)]) against
/// omega(tau(t)[W(g)] W(f)). Returns max over t of
/// |lhs - rhs| / max(|lhs|, 1).
double kms_check(const VanHoveSystem& sys, const CharState& gibbs, const RadialFunction& f,
                 const RadialFunction& g, const std::vector<double>& t_grid);

/// Test function F(t) = int Fhat(s) exp(-i s t) ds whose transform is the
/// smooth bump exp(-1/(1-u^2)) on [s_lo, s_hi], u the rescaled frequency.
class KmsWindow {
 public:
  /// `tail_tol` fixes time_truncation: |F(t)| < tail_tol for all |t| beyond it.
  KmsWindow(double s_lo, double s_hi, double tail_tol = 1e-12);

  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }
  double time_truncation() const { return t_max_; }
  double profile(double s) const;
  Complex operator()(double t) const;

 private:
  double s_lo_, s_hi_, t_max_ = 0;
  RealVector u_, w_;  // quadrature over the bump
};

/// omega_inf(W(f) tau(t)[W(g)]) in closed form; the t-dependence is
/// exp(-pi^2 hbar <f, exp(i t w) g>), positive frequencies only.
Complex ground_state_correlation(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                                 const RadialFunction& g, double t);

/// int_{|t| <= T} F(t) omega_inf(W(f) tau(t)[W(g)]) dt for the zero
/// temperature Gibbs state (the coherent state at -J/w), trapezoidal in t.
Complex ground_state_integral(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                              const RadialFunction& g, const KmsWindow& window, double dt = 0.05);

/// |ground_state_integral| for a window supported on negative frequencies;
/// throws for s_hi >= 0.
double ground_state_check(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                          const RadialFunction& g, const KmsWindow& window, double dt = 0.05);

inline constexpr double kKmsTolerance = 1e-10;
inline constexpr double kWindowTolerance = 1e-6;

}  // namespace vanhove
