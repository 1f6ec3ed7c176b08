#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace vanhove {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

/// Selects the space L^2_{w^alpha}: the integrand of the weighted inner
/// product carries an extra factor w(k)^alpha.
enum class WeightExponent : int {
  InverseSquare = -2,
  Inverse = -1,
  Flat = 0,
  Dispersion = 1,
};

constexpr int exponent(WeightExponent w) { return static_cast<int>(w); }
WeightExponent weight_from_exponent(int alpha);

struct GridOptions {
  int dim = 3;
  double mass = 0.0;
  double r_min = 1e-6;
  double r_max = 12.0;
  int panels = 16;
  int points = 32;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  RealVector nodes;
  RealVector weights;
};
GaussLegendreRule gauss_legendre(int n);

class MomentumGrid;
using GridPtr = std::shared_ptr<const MomentumGrid>;

/// Radial discretization of momentum space.
///
/// Every d-dimensional integral of a radial integrand reduces to
/// sum_i measure_i * h(r_i) with measure_i = sigma_{d-1} r_i^{d-1} w_i.
/// Grids are immutable and shared; functions refer to their grid by pointer
/// and never get resampled onto another one.
class MomentumGrid {
 public:
  /// Composite Gauss-Legendre on geometrically spaced panels.
  static GridPtr make(const GridOptions& options);
  /// Arbitrary nodes with explicit integration measures (no panel
  /// structure, so oscillatory integrals fall back to the plain sum).
  static GridPtr make_discrete(int dim, double mass, RealVector nodes,
                               RealVector measures);
  /// One node with unit measure and w = omega: a single bosonic mode, where
  /// <f, g> = conj(f) g.
  static GridPtr single_mode(double omega);

  std::uint64_t id() const { return id_; }
  int dim() const { return dim_; }
  double mass() const { return mass_; }
  double angular_factor() const { return angular_factor_; }
  Eigen::Index size() const { return nodes_.size(); }

  const RealVector& nodes() const { return nodes_; }
  const RealVector& weights() const { return weights_; }
  const RealVector& measure() const { return measure_; }
  const RealVector& dispersion() const { return dispersion_; }
  /// measure_i * w_i^alpha
  const RealVector& weighted_measure(WeightExponent w) const;

  bool has_panels() const { return !panel_edges_.empty(); }
  /// Panel boundaries r_min = e_0 < e_1 < ... < e_P = r_max.
  const std::vector<double>& panel_edges() const { return panel_edges_; }
  int points_per_panel() const { return points_; }

  /// Integral of exp(i t w(r)) D(r) dr over [r_min, r_max], where `density`
  /// holds the samples D(r_i) of the integrand per unit r.
  Complex filon_sum(const ComplexVector& density, double t) const;
  /// Per-panel Legendre coefficients (in w) of density * dr/dw; reusable
  /// across t. Empty on grids without panels.
  std::vector<ComplexVector> filon_coefficients(const ComplexVector& density) const;
  Complex filon_evaluate(const ComplexVector& density, const std::vector<ComplexVector>& coeffs,
                         double t) const;

  GridOptions options() const { return options_; }

 private:
  MomentumGrid() = default;
  void finish();

  std::uint64_t id_ = 0;
  int dim_ = 3;
  double mass_ = 0.0;
  double angular_factor_ = 0.0;
  int points_ = 0;
  GridOptions options_{};
  RealVector nodes_, weights_, measure_, dispersion_;
  std::array<RealVector, 4> weighted_;
  std::vector<double> panel_edges_;
  // Per panel: LU of the Legendre-Vandermonde matrix at the nodes mapped to
  // the panel's dispersion interval.
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> filon_lu_;
};

/// Complex samples of a radial function on one grid.
class RadialFunction {
 public:
  RadialFunction(GridPtr grid, ComplexVector values);

  static RadialFunction zero(const GridPtr& grid);
  template <typename Fn>
  static RadialFunction sample(const GridPtr& grid, Fn&& fn) {
    ComplexVector v(grid->size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(fn(grid->nodes()[i]));
    return RadialFunction(grid, std::move(v));
  }

  const GridPtr& grid() const { return grid_; }
  const ComplexVector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Complex operator[](Eigen::Index i) const { return values_[i]; }
  bool is_zero() const;

  RadialFunction conj() const;
  RadialFunction operator-() const;
  RadialFunction& operator+=(const RadialFunction& other);
  RadialFunction& operator-=(const RadialFunction& other);
  RadialFunction& operator*=(Complex s);

  friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
  friend RadialFunction operator-(RadialFunction a, const RadialFunction& b) { return a -= b; }
  friend RadialFunction operator*(Complex s, RadialFunction a) { return a *= s; }
  friend RadialFunction operator*(RadialFunction a, Complex s) { return a *= s; }

 private:
  GridPtr grid_;
  ComplexVector values_;
};

void require_same_grid(const RadialFunction& f, const RadialFunction& g);

/// w(r_i) = sqrt(r_i^2 + mu^2)
double dispersion(const MomentumGrid& grid, Eigen::Index node_index);

/// sigma sum_i w_i r_i^{d-1} w(r_i)^alpha conj(f_i) g_i
Complex inner_product(const RadialFunction& f, const RadialFunction& g,
                      WeightExponent w = WeightExponent::Flat);
double weighted_norm_sq(const RadialFunction& f, WeightExponent w = WeightExponent::Flat);

/// Pointwise multiplication by exp(i t w).
RadialFunction apply_free_phase(const RadialFunction& f, double t);
/// Pointwise multiplication by w^alpha.
RadialFunction scale_by_dispersion(const RadialFunction& f, int alpha);

/// <f, exp(i t w) w^alpha g> with a Filon-type rule: on each panel the
/// smooth part is expanded in Legendre polynomials of w and integrated
/// exactly against the oscillating factor. Accurate for |t| far beyond what
/// the plain quadrature resolves; on discrete grids it is the plain sum.
Complex oscillatory_inner_product(const RadialFunction& f, const RadialFunction& g,
                                  WeightExponent w, double t);

/// t -> <f, exp(i t w) w^alpha g> with the Filon expansion built once.
class OscillatoryOverlap {
 public:
  OscillatoryOverlap(const RadialFunction& f, const RadialFunction& g, WeightExponent w);
  Complex operator()(double t) const;

 private:
  GridPtr grid_;
  ComplexVector density_;
  std::vector<ComplexVector> coeffs_;
};

/// j_0(x), ..., j_{n-1}(x) for x > 0: upward recurrence where it is stable
/// (x >= n), otherwise downward (Miller) normalized on j_0 or j_1.
void spherical_bessel_sequence(double x, int n, double* out);

}  // namespace vanhove
