#include "vanhove/grid.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vanhove {

namespace {

std::uint64_t next_grid_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

double sphere_area(int dim) {
  return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

int slot(WeightExponent w) { return exponent(w) + 2; }

// Legendre P_0..P_{n-1} at x.
void legendre_row(double x, int n, double* out) {
  out[0] = 1.0;
  if (n > 1) out[1] = x;
  for (int k = 2; k < n; ++k)
    out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

// Panels where the phase changes by less than this (half-width times |t|)
// are handled by the plain Gauss rule.
constexpr double kFilonThreshold = 20.0;

}  // namespace

WeightExponent weight_from_exponent(int alpha) {
  if (alpha < -2 || alpha > 1)
    throw std::invalid_argument("weight exponent must be in {-2,-1,0,1}, got " +
                                std::to_string(alpha));
  return static_cast<WeightExponent>(alpha);
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule{RealVector(n), RealVector(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GridPtr MomentumGrid::make(const GridOptions& o) {
  if (o.dim < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (o.mass < 0) throw std::invalid_argument("mass must be >= 0");
  if (!(o.r_min > 0) || !(o.r_max > o.r_min))
    throw std::invalid_argument("need 0 < r_min < r_max");
  if (o.panels < 1 || o.points < 2)
    throw std::invalid_argument("need >= 1 panel and >= 2 points per panel");

  auto grid = std::shared_ptr<MomentumGrid>(new MomentumGrid());
  grid->dim_ = o.dim;
  grid->mass_ = o.mass;
  grid->options_ = o;
  grid->points_ = o.points;

  const auto rule = gauss_legendre(o.points);
  const double ratio = std::pow(o.r_max / o.r_min, 1.0 / o.panels);
  grid->panel_edges_.resize(o.panels + 1);
  for (int p = 0; p <= o.panels; ++p) grid->panel_edges_[p] = o.r_min * std::pow(ratio, p);
  grid->panel_edges_.front() = o.r_min;
  grid->panel_edges_.back() = o.r_max;

  const Eigen::Index n = Eigen::Index(o.panels) * o.points;
  grid->nodes_.resize(n);
  grid->weights_.resize(n);
  for (int p = 0; p < o.panels; ++p) {
    const double a = grid->panel_edges_[p], b = grid->panel_edges_[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < o.points; ++i) {
      grid->nodes_[p * o.points + i] = mid + half * rule.nodes[i];
      grid->weights_[p * o.points + i] = half * rule.weights[i];
    }
  }
  grid->angular_factor_ = sphere_area(o.dim);
  grid->finish();

  // self-calibration: integral of sigma r^{d-1} over [r_min, r_max]
  const double exact = grid->angular_factor_ *
                       (std::pow(o.r_max, o.dim) - std::pow(o.r_min, o.dim)) / o.dim;
  const double quad = grid->measure_.sum();
  if (std::abs(quad - exact) > 1e-12 * exact)
    throw std::logic_error("radial quadrature failed its self-calibration check");

  // Filon tables
  Eigen::MatrixXd vandermonde(o.points, o.points);
  std::vector<double> row(o.points);
  for (int p = 0; p < o.panels; ++p) {
    const double ua = std::hypot(grid->panel_edges_[p], o.mass);
    const double ub = std::hypot(grid->panel_edges_[p + 1], o.mass);
    for (int i = 0; i < o.points; ++i) {
      const double u = grid->dispersion_[p * o.points + i];
      const double x = (2.0 * u - ua - ub) / (ub - ua);
      legendre_row(x, o.points, row.data());
      for (int k = 0; k < o.points; ++k) vandermonde(i, k) = row[k];
    }
    grid->filon_lu_.emplace_back(vandermonde);
  }
  return grid;
}

GridPtr MomentumGrid::make_discrete(int dim, double mass, RealVector nodes, RealVector measures) {
  if (nodes.size() == 0 || nodes.size() != measures.size())
    throw std::invalid_argument("discrete grid needs matching, non-empty nodes and measures");
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0) || !(measures[i] > 0))
      throw std::invalid_argument("discrete grid nodes and measures must be positive");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("discrete grid nodes must be strictly increasing");
  }
  auto grid = std::shared_ptr<MomentumGrid>(new MomentumGrid());
  grid->dim_ = dim;
  grid->mass_ = mass;
  grid->angular_factor_ = sphere_area(dim);
  grid->nodes_ = std::move(nodes);
  grid->weights_.resize(grid->nodes_.size());
  for (Eigen::Index i = 0; i < grid->nodes_.size(); ++i)
    grid->weights_[i] = measures[i] / (grid->angular_factor_ * std::pow(grid->nodes_[i], dim - 1));
  grid->measure_ = std::move(measures);
  grid->finish();
  grid->options_ = GridOptions{dim, mass, grid->nodes_[0], grid->nodes_[grid->nodes_.size() - 1],
                               0, 0};
  return grid;
}

GridPtr MomentumGrid::single_mode(double omega) {
  if (!(omega > 0)) throw std::invalid_argument("mode frequency must be positive");
  RealVector node(1), measure(1);
  node << omega;
  measure << 1.0;
  return make_discrete(1, 0.0, node, measure);
}

void MomentumGrid::finish() {
  id_ = id_ ? id_ : next_grid_id();
  const Eigen::Index n = nodes_.size();
  if (measure_.size() != n) {
    measure_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
      measure_[i] = angular_factor_ * std::pow(nodes_[i], dim_ - 1) * weights_[i];
  }
  dispersion_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) dispersion_[i] = std::hypot(nodes_[i], mass_);
  for (int alpha = -2; alpha <= 1; ++alpha) {
    RealVector& wm = weighted_[alpha + 2];
    wm.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) wm[i] = measure_[i] * std::pow(dispersion_[i], alpha);
  }
}

const RealVector& MomentumGrid::weighted_measure(WeightExponent w) const {
  return weighted_[slot(w)];
}

Complex MomentumGrid::filon_sum(const ComplexVector& density, double t) const {
  if (!has_panels() || t == 0.0) return filon_evaluate(density, {}, t);
  return filon_evaluate(density, filon_coefficients(density), t);
}

std::vector<ComplexVector> MomentumGrid::filon_coefficients(const ComplexVector& density) const {
  if (density.size() != size()) throw std::invalid_argument("density size does not match the grid");
  std::vector<ComplexVector> out;
  if (!has_panels()) return out;
  const int panels = static_cast<int>(panel_edges_.size()) - 1;
  Eigen::VectorXd re(points_), im(points_);
  for (int p = 0; p < panels; ++p) {
    const Eigen::Index off = Eigen::Index(p) * points_;
    // H(u) = D(r(u)) dr/du = D * w / r
    for (int i = 0; i < points_; ++i) {
      const Complex h = density[off + i] * dispersion_[off + i] / nodes_[off + i];
      re[i] = h.real();
      im[i] = h.imag();
    }
    const Eigen::VectorXd cre = filon_lu_[p].solve(re);
    const Eigen::VectorXd cim = filon_lu_[p].solve(im);
    ComplexVector c(points_);
    for (int k = 0; k < points_; ++k) c[k] = Complex(cre[k], cim[k]);
    out.push_back(std::move(c));
  }
  return out;
}

Complex MomentumGrid::filon_evaluate(const ComplexVector& density, const std::vector<ComplexVector>& coeffs,
                                     double t) const {
  if (density.size() != size()) throw std::invalid_argument("density size does not match the grid");
  if (!has_panels() || t == 0.0) {
    Complex acc = 0;
    for (Eigen::Index i = 0; i < size(); ++i)
      acc += weights_[i] * density[i] * std::polar(1.0, t * dispersion_[i]);
    return acc;
  }
  const int panels = static_cast<int>(panel_edges_.size()) - 1;
  if (static_cast<int>(coeffs.size()) != panels) throw std::invalid_argument("Filon coefficients do not match the grid");
  const double sign = t > 0 ? 1.0 : -1.0;
  std::vector<double> jk(points_);
  Complex total = 0;
  for (int p = 0; p < panels; ++p) {
    const double ua = std::hypot(panel_edges_[p], mass_);
    const double ub = std::hypot(panel_edges_[p + 1], mass_);
    const double half = 0.5 * (ub - ua);
    const double kappa = std::abs(t) * half;
    const Eigen::Index off = Eigen::Index(p) * points_;
    if (kappa <= kFilonThreshold) {
      for (int i = 0; i < points_; ++i)
        total += weights_[off + i] * density[off + i] * std::polar(1.0, t * dispersion_[off + i]);
      continue;
    }
    spherical_bessel_sequence(kappa, points_, jk.data());
    // int P_k(x) e^{i s kappa x} dx = 2 (i s)^k j_k(kappa)
    Complex sum = 0;
    Complex ipow = 1.0;
    const Complex step(0.0, sign);
    for (int k = 0; k < points_; ++k) {
      sum += coeffs[p][k] * ipow * (2.0 * jk[k]);
      ipow *= step;
    }
    total += half * std::polar(1.0, t * 0.5 * (ua + ub)) * sum;
  }
  return total;
}

void spherical_bessel_sequence(double x, int n, double* out) {
  if (!(x > 0)) throw std::invalid_argument("spherical Bessel argument must be > 0");
  if (n < 1) return;
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (x >= n) {
    out[0] = j0;
    if (n > 1) out[1] = j1;
    for (int k = 1; k + 1 < n; ++k) out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1];
    return;
  }
  const int start = n + 20 + static_cast<int>(std::sqrt(40.0 * n));
  double above = 0.0, cur = 1e-300;
  std::vector<double> seq(n, 0.0);
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k + 1.0) / x * cur - above;
    above = cur;
    cur = below;  // now j_{k-1}, unnormalized
    if (k - 1 < n) seq[k - 1] = cur;
    if (std::abs(cur) > 1e250) {
      above *= 1e-250;
      cur *= 1e-250;
      for (int m = k - 1; m < n; ++m) seq[m] *= 1e-250;
    }
  }
  const double scale = std::abs(j0) >= std::abs(j1) || n < 2 ? j0 / seq[0] : j1 / seq[1];
  for (int k = 0; k < n; ++k) out[k] = seq[k] * scale;
}

OscillatoryOverlap::OscillatoryOverlap(const RadialFunction& f, const RadialFunction& g, WeightExponent w)
    : grid_(f.grid()) {
  require_same_grid(f, g);
  const RealVector& m = grid_->weighted_measure(w);
  density_.resize(grid_->size());
  for (Eigen::Index i = 0; i < density_.size(); ++i)
    density_[i] = m[i] / grid_->weights()[i] * std::conj(f[i]) * g[i];
  coeffs_ = grid_->filon_coefficients(density_);
}

Complex OscillatoryOverlap::operator()(double t) const { return grid_->filon_evaluate(density_, coeffs_, t); }

RadialFunction::RadialFunction(GridPtr grid, ComplexVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("radial function needs a grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_->size()));
  if (!values_.allFinite()) throw std::invalid_argument("radial function samples must be finite");
}

RadialFunction RadialFunction::zero(const GridPtr& grid) {
  return RadialFunction(grid, ComplexVector::Zero(grid->size()));
}

bool RadialFunction::is_zero() const {
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (values_[i] != Complex(0.0, 0.0)) return false;
  return true;
}

RadialFunction RadialFunction::conj() const {
  return RadialFunction(grid_, values_.conjugate());
}

RadialFunction RadialFunction::operator-() const { return RadialFunction(grid_, -values_); }

RadialFunction& RadialFunction::operator+=(const RadialFunction& other) {
  require_same_grid(*this, other);
  values_ += other.values_;
  return *this;
}

RadialFunction& RadialFunction::operator-=(const RadialFunction& other) {
  require_same_grid(*this, other);
  values_ -= other.values_;
  return *this;
}

RadialFunction& RadialFunction::operator*=(Complex s) {
  values_ *= s;
  return *this;
}

void require_same_grid(const RadialFunction& f, const RadialFunction& g) {
  if (f.grid().get() != g.grid().get() && f.grid()->id() != g.grid()->id())
    throw std::invalid_argument("radial functions live on different grids");
}

double dispersion(const MomentumGrid& grid, Eigen::Index node_index) {
  if (node_index < 0 || node_index >= grid.size())
    throw std::out_of_range("node index " + std::to_string(node_index) + " out of range");
  return grid.dispersion()[node_index];
}

Complex inner_product(const RadialFunction& f, const RadialFunction& g, WeightExponent w) {
  require_same_grid(f, g);
  const RealVector& m = f.grid()->weighted_measure(w);
  Complex acc = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) acc += m[i] * std::conj(f[i]) * g[i];
  return acc;
}

double weighted_norm_sq(const RadialFunction& f, WeightExponent w) {
  const RealVector& m = f.grid()->weighted_measure(w);
  double acc = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) acc += m[i] * std::norm(f[i]);
  return acc;
}

RadialFunction apply_free_phase(const RadialFunction& f, double t) {
  if (t == 0.0) return f;
  const RealVector& w = f.grid()->dispersion();
  ComplexVector v(f.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::polar(1.0, t * w[i]) * f[i];
  return RadialFunction(f.grid(), std::move(v));
}

RadialFunction scale_by_dispersion(const RadialFunction& f, int alpha) {
  const RealVector& w = f.grid()->dispersion();
  ComplexVector v(f.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f[i] * std::pow(w[i], alpha);
  return RadialFunction(f.grid(), std::move(v));
}

Complex oscillatory_inner_product(const RadialFunction& f, const RadialFunction& g,
                                  WeightExponent w, double t) {
  return OscillatoryOverlap(f, g, w)(t);
}

}  // namespace vanhove
