#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vanhove/grid.hpp"

namespace vanhove {

enum class SourceFamily { PowerLawGaussian, GaussianOnly, CustomSamples };

/// A charge distribution J on a grid. The power-law family is
/// J(r) = r^{-gamma} exp(-r^2); the Gaussian factor only controls the UV, so
/// gamma alone decides the infrared class. An active `ir_cutoff` n replaces
/// J by 1_{r >= 1/n} J.
struct SourceSpec {
  SourceFamily family = SourceFamily::GaussianOnly;
  double gamma = 0.0;
  std::optional<int> ir_cutoff;
  GridPtr grid;
  std::optional<RadialFunction> custom;

  static SourceSpec gaussian(GridPtr grid);
  static SourceSpec power_law(GridPtr grid, double gamma);
  static SourceSpec from_samples(RadialFunction samples);
  SourceSpec with_cutoff(int n) const;
  SourceSpec without_cutoff() const;
};

enum class InfraredClass { Regular, TypeI, TypeII, OutOfScope };

std::string to_string(InfraredClass c);
std::string to_string(SourceFamily f);

/// Samples of J on the grid (zero below 1/n when the cutoff is active).
RadialFunction realize(const SourceSpec& spec);

struct AnalyticClassification {
  InfraredClass tag = InfraredClass::Regular;
  std::string note;
};

/// Exponent rule: J_gamma lies in L^2_{w^{-alpha}} iff gamma < (d - alpha)/2
/// (massless). Thresholds themselves count as divergent.
AnalyticClassification classify_analytic(const SourceSpec& spec);

struct NumericClassification {
  InfraredClass tag = InfraredClass::Regular;
  /// Fitted growth exponent of the infrared tail mass
  /// m(eps) = ||1_{r >= eps} J||^2 in L^2, L^2_{1/w}, L^2_{1/w^2}; positive
  /// means m grows like eps^{-exponent}.
  double exponent_l2 = 0.0;
  double exponent_inv = 0.0;
  double exponent_inv_sq = 0.0;
  bool diverges_l2 = false;
  bool diverges_inv = false;
  bool diverges_inv_sq = false;
  /// Panel edges used as the eps-sequence and the tail masses at each.
  std::vector<double> eps;
  std::vector<double> mass_inv;
  std::vector<double> mass_inv_sq;
};

/// Largest eps at which the infrared tail is probed.
inline constexpr double kInfraredProbeScale = 1e-2;
/// An exponent above -kDivergenceMargin counts as divergent; logarithmic
/// divergence has exponent 0.
inline constexpr double kDivergenceMargin = 0.005;

NumericClassification classify_numeric(const SourceSpec& spec);

/// Infrared class of any source: the exponent rule for power laws on massless
/// grids, the numeric tail fit for everything else, Regular on grids without
/// panels (finitely many modes).
InfraredClass infrared_class(const SourceSpec& spec);

/// Fitted least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vanhove
