#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "vanhove/grid.hpp"
#include "vanhove/sources.hpp"
#include "vanhove/weyl.hpp"

namespace vanhove {

/// A regular state seen only through its (noncommutative) Fourier transform
/// f -> omega(W_hbar(f)). Evolved and transported states are plain
/// characteristics; closed-form states are `CharState`s.
class Characteristic {
 public:
  using Fn = std::function<Complex(const RadialFunction&)>;

  Characteristic(GridPtr grid, double hbar, Fn fn);

  Complex operator()(const RadialFunction& f) const;
  double hbar() const { return hbar_; }
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  double hbar_;
  Fn fn_;
};

/// coth(x) for x > 0, with coth = 1 above x = 40 and the two-term Laurent
/// form below x = 1e-8.
double coth_stable(double x);

class CharState;

namespace kind {
struct Coherent {
  RadialFunction center;
};
struct GibbsQuantum {
  double beta_h;  // may be +infinity
  SourceSpec source;
  RadialFunction center;  // -J/w
  RealVector covariance;  // measure_i * coth(beta_h w_i / 2)
};
struct GibbsClassical {
  double beta;
  SourceSpec source;
  RadialFunction center;  // -J/w
};
struct Dirac {
  RadialFunction center;
};
struct Deformed {
  std::shared_ptr<const CharState> base;
};
}  // namespace kind

class CharState {
 public:
  using Kind = std::variant<kind::Coherent, kind::GibbsQuantum, kind::GibbsClassical, kind::Dirac,
                            kind::Deformed>;

  /// exp(-(pi^2 hbar/2) ||f||^2) exp(2 pi i Re <f, T>); hbar = 0 is delta_T.
  static CharState coherent(double hbar, RadialFunction center);
  /// Quantum Gibbs state at quantum inverse temperature beta_h <= infinity.
  static CharState gibbs_quantum(double hbar, double beta_h, const SourceSpec& source);
  static CharState gibbs_classical(double beta, const SourceSpec& source);
  static CharState dirac(RadialFunction center);
  /// Minimal deformation of a classical state: Gaussian damping times base.
  static CharState deformed(double hbar, const CharState& base);

  double hbar() const { return hbar_; }
  const GridPtr& grid() const { return grid_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  Characteristic characteristic() const;

 private:
  CharState(double hbar, GridPtr grid, Kind k) : hbar_(hbar), grid_(std::move(grid)), kind_(std::move(k)) {}

  double hbar_;
  GridPtr grid_;
  Kind kind_;
};

Complex eval_char(const CharState& s, const RadialFunction& f);

/// sum_j c_j omega(W(f_j))
Complex evaluate(const Characteristic& s, const TrigPolynomial& a);
Complex evaluate(const CharState& s, const TrigPolynomial& a);

struct GramReport {
  int size = 0;
  double min_eigenvalue = 0.0;
  bool psd = false;
};

/// M_jk = omega(W(f_j - f_k)) exp(-i pi^2 hbar sigma(f_j, f_k)).
Eigen::MatrixXcd gram_matrix(const Characteristic& s, const std::vector<RadialFunction>& panel);
/// Minimum eigenvalue against psd_tol = 1e-10 * size.
GramReport analyze_gram(const Eigen::MatrixXcd& m);
GramReport bochner_gram(const Characteristic& s, const std::vector<RadialFunction>& panel);
GramReport bochner_gram(const CharState& s, const std::vector<RadialFunction>& panel);

inline constexpr int kMaxGramPanel = 64;

}  // namespace vanhove
