#include "vanhove/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace vanhove {

VanHoveSystem::VanHoveSystem(SourceSpec source)
    : source_(std::move(source)),
      class_(infrared_class(source_)),
      j_(realize(source_)),
      j_over_w_(scale_by_dispersion(j_, -1)) {
  if (class_ == InfraredClass::TypeII || class_ == InfraredClass::OutOfScope)
    throw std::domain_error("van Hove dynamics undefined for a " + to_string(class_) + " source");
}

RadialFunction classical_flow(const VanHoveSystem& sys, const RadialFunction& alpha0, double t) {
  require_same_grid(alpha0, sys.j());
  return apply_free_phase(alpha0 + sys.j_over_w(), -t) - sys.j_over_w();
}

double classical_energy(const VanHoveSystem& sys, const RadialFunction& alpha) {
  require_same_grid(alpha, sys.j());
  return weighted_norm_sq(alpha, WeightExponent::Dispersion) + 2 * inner_product(alpha, sys.j()).real();
}

Complex evolution_phase(const VanHoveSystem& sys, const RadialFunction& f, double t) {
  if (t == 0.0) return 1.0;
  const RadialFunction shift = apply_free_phase(sys.j_over_w(), -t) - sys.j_over_w();
  return std::polar(1.0, 2 * pi * inner_product(f, shift).real());
}

TrigPolynomial evolve_weyl(const VanHoveSystem& sys, const TrigPolynomial& a, double t) {
  if (a.grid()->id() != sys.grid()->id()) throw std::invalid_argument("observable on a foreign grid");
  std::vector<WeylTerm> out;
  out.reserve(a.size());
  for (const auto& term : a.terms()) {
    const RadialFunction& f = term.generator.function();
    out.push_back({term.coeff * evolution_phase(sys, f, t), FunctionHandle(apply_free_phase(f, t))});
  }
  return TrigPolynomial(a.grid(), a.hbar(), std::move(out));
}

Characteristic evolve_state(const VanHoveSystem& sys, const Characteristic& s, double t) {
  if (s.grid()->id() != sys.grid()->id()) throw std::invalid_argument("state on a foreign grid");
  auto base = std::make_shared<const Characteristic>(s);
  auto system = std::make_shared<const VanHoveSystem>(sys);
  return Characteristic(s.grid(), s.hbar(), [base, system, t](const RadialFunction& f) {
    return (*base)(apply_free_phase(f, t)) * evolution_phase(*system, f, t);
  });
}

Characteristic evolve_state(const VanHoveSystem& sys, const CharState& s, double t) {
  return evolve_state(sys, s.characteristic(), t);
}

Complex correlation(const VanHoveSystem& sys, const CharState& s, const RadialFunction& f,
                    const RadialFunction& g, double t) {
  const TrigPolynomial wf = TrigPolynomial::character(f, s.hbar());
  const TrigPolynomial wg = evolve_weyl(sys, TrigPolynomial::character(g, s.hbar()), t);
  return evaluate(s, compose(wf, wg));
}

Complex reversed_correlation(const VanHoveSystem& sys, const CharState& s, const RadialFunction& f,
                             const RadialFunction& g, double t) {
  const TrigPolynomial wf = TrigPolynomial::character(f, s.hbar());
  const TrigPolynomial wg = evolve_weyl(sys, TrigPolynomial::character(g, s.hbar()), t);
  return evaluate(s, compose(wg, wf));
}

double kms_check(const VanHoveSystem& sys, const CharState& gibbs, const RadialFunction& f,
                 const RadialFunction& g, const std::vector<double>& t_grid) {
  const auto* k = std::get_if<kind::GibbsQuantum>(&gibbs.kind());
  if (!k) throw std::invalid_argument("KMS check needs a quantum Gibbs state");
  if (std::isinf(k->beta_h)) throw std::invalid_argument("KMS check needs a finite temperature");
  require_same_grid(f, sys.j());
  require_same_grid(g, sys.j());
  const MomentumGrid& grid = *sys.grid();
  const double hbar = gibbs.hbar();
  const double beta = k->beta_h;

  // coth(x/2) - 1 = 2 / expm1(x), kept exact for the continued weights
  const Eigen::Index n = grid.size();
  RealVector c(n), forward(n), backward(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = beta * grid.dispersion()[i];
    const double cm1 = 2.0 / std::expm1(x);
    c[i] = 1.0 + cm1;
    forward[i] = (2.0 + cm1) * std::exp(-x);
    backward[i] = cm1 * std::exp(x);
  }
  double q = 0;
  for (Eigen::Index i = 0; i < n; ++i) q += grid.measure()[i] * c[i] * (std::norm(f[i]) + std::norm(g[i]));
  const RadialFunction center = -sys.j_over_w();
  const Complex phase = std::polar(1.0, 2 * pi * inner_product(f + g, center).real());

  double worst = 0;
  for (double t : t_grid) {
    Complex cross = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex e = std::polar(1.0, t * grid.dispersion()[i]);
      cross += grid.measure()[i] * (forward[i] * std::conj(f[i]) * g[i] * e +
                                    backward[i] * std::conj(g[i]) * f[i] * std::conj(e));
    }
    const Complex lhs = phase * std::exp(-0.5 * pi * pi * hbar * (q + cross));
    const Complex rhs = reversed_correlation(sys, gibbs, f, g, t);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0));
  }
  return worst;
}

namespace {

double bump(double u) { return std::abs(u) < 1 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

}  // namespace

KmsWindow::KmsWindow(double s_lo, double s_hi, double tail_tol) : s_lo_(s_lo), s_hi_(s_hi) {
  if (!(s_hi > s_lo)) throw std::invalid_argument("window needs s_lo < s_hi");
  if (!(tail_tol > 0)) throw std::invalid_argument("tail tolerance must be > 0");
  const int panels = 256;
  const GaussLegendreRule rule = gauss_legendre(24);
  const Eigen::Index m = rule.nodes.size();
  u_.resize(panels * m);
  w_.resize(panels * m);
  const double width = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = -1.0 + p * width;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double u = a + 0.5 * width * (rule.nodes[i] + 1.0);
      u_[p * m + i] = u;
      w_[p * m + i] = 0.5 * width * rule.weights[i] * bump(u);
    }
  }

  const double h = 0.5 * (s_hi - s_lo);
  const double step = 0.5, kappa_end = 1500.0;
  double last = 0;
  for (double kappa = 0; kappa <= kappa_end; kappa += step) {
    if (std::abs((*this)(kappa / h)) >= tail_tol) last = kappa;
  }
  if (last + step > kappa_end) throw std::runtime_error("window tail does not reach the tolerance");
  t_max_ = (last + step) / h;
}

double KmsWindow::profile(double s) const {
  const double h = 0.5 * (s_hi_ - s_lo_), c = 0.5 * (s_hi_ + s_lo_);
  return bump((s - c) / h);
}

Complex KmsWindow::operator()(double t) const {
  const double h = 0.5 * (s_hi_ - s_lo_), c = 0.5 * (s_hi_ + s_lo_);
  const double kappa = h * t;
  double acc = 0;
  for (Eigen::Index i = 0; i < u_.size(); ++i) acc += w_[i] * std::cos(kappa * u_[i]);
  return h * acc * std::polar(1.0, -c * t);
}

namespace {

struct GroundCorrelation {
  Complex prefactor;
  OscillatoryOverlap overlap;

  GroundCorrelation(const VanHoveSystem& sys, double hbar, const RadialFunction& f, const RadialFunction& g)
      : overlap(f, g, WeightExponent::Flat), hbar_(hbar) {
    require_same_grid(f, sys.j());
    require_same_grid(g, sys.j());
    const RadialFunction center = -sys.j_over_w();
    prefactor = std::polar(1.0, 2 * pi * inner_product(f + g, center).real()) *
                std::exp(-0.5 * pi * pi * hbar * (weighted_norm_sq(f) + weighted_norm_sq(g)));
  }
  Complex operator()(double t) const { return prefactor * std::exp(-pi * pi * hbar_ * overlap(t)); }

 private:
  double hbar_;
};

}  // namespace

Complex ground_state_correlation(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                                 const RadialFunction& g, double t) {
  return GroundCorrelation(sys, hbar, f, g)(t);
}

Complex ground_state_integral(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                              const RadialFunction& g, const KmsWindow& window, double dt) {
  if (!(hbar > 0)) throw std::invalid_argument("hbar must be > 0");
  if (!(dt > 0)) throw std::invalid_argument("time step must be > 0");
  const GroundCorrelation corr(sys, hbar, f, g);
  const int steps = static_cast<int>(std::ceil(window.time_truncation() / dt));
  Complex acc = 0;
  for (int k = -steps; k <= steps; ++k) {
    const double t = k * dt;
    const double w = (k == -steps || k == steps) ? 0.5 * dt : dt;
    acc += w * window(t) * corr(t);
  }
  return acc;
}

double ground_state_check(const VanHoveSystem& sys, double hbar, const RadialFunction& f,
                          const RadialFunction& g, const KmsWindow& window, double dt) {
  if (!(window.s_hi() < 0)) throw std::invalid_argument("ground state check needs a window on s < 0");
  return std::abs(ground_state_integral(sys, hbar, f, g, window, dt));
}

}  // namespace vanhove
