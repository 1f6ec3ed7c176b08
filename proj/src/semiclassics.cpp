#include "vanhove/semiclassics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vanhove/parallel.hpp"

namespace vanhove {

namespace {

void require_sweep_input(const std::vector<RadialFunction>& panel, const std::vector<double>& hbars) {
  if (panel.empty()) throw std::invalid_argument("empty test-function panel");
  if (hbars.empty()) throw std::invalid_argument("empty hbar ladder");
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    if (!(hbars[i] > 0)) throw std::invalid_argument("hbar values must be > 0");
    if (i > 0 && !(hbars[i] < hbars[i - 1])) throw std::invalid_argument("hbar ladder must decrease");
  }
}

// Tends to zero: nonincreasing tail and a final value well below the first.
bool looks_converged(const std::vector<double>& dev) {
  if (dev.size() < 2) return false;
  for (std::size_t i = 1; i < dev.size(); ++i)
    if (dev[i] > dev[i - 1] * (1 + 1e-9) + 1e-15) return false;
  return dev.back() < 1e-12 || dev.back() < 0.1 * dev.front();
}

void finish(SweepReport& r) {
  try {
    r.fitted_order = fit_rate(r.hbar_values, r.deviations);
  } catch (const std::invalid_argument&) {
    r.fitted_order.reset();
  }
  r.converged = looks_converged(r.deviations);
}

}  // namespace

std::vector<RadialFunction> standard_panel(const GridPtr& grid) {
  std::vector<RadialFunction> out;
  for (Complex phase : {Complex(1, 0), Complex(0, 1)})
    for (double sigma : {0.5, 1.0, 2.0, 4.0})
      out.push_back(RadialFunction::sample(grid, [&](double r) { return phase * std::exp(-sigma * r * r); }));
  return out;
}

std::vector<double> default_hbar_ladder(int k_first, int k_last) {
  std::vector<double> out;
  for (int k = k_first; k <= k_last; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

double panel_deviation(const Characteristic& a, const Characteristic& b,
                       const std::vector<RadialFunction>& panel) {
  double worst = 0;
  for (const auto& f : panel) worst = std::max(worst, std::abs(a(f) - b(f)));
  return worst;
}

double fit_rate(const std::vector<double>& hbars, const std::vector<double>& deviations) {
  if (hbars.size() != deviations.size()) throw std::invalid_argument("hbar/deviation size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    if (deviations[i] >= 1e-12 && deviations[i] <= 0.1) {
      x.push_back(hbars[i]);
      y.push_back(deviations[i]);
    }
  }
  if (x.size() < 4) throw std::invalid_argument("fit_rate needs at least 4 points with deviation in [1e-12, 0.1]");
  return log_log_slope(x, y);
}

SweepReport egorov_sweep(const VanHoveSystem& sys, const StateFamily& family, const CharState& omega0,
                         double t, const std::vector<RadialFunction>& panel,
                         const std::vector<double>& hbars) {
  require_sweep_input(panel, hbars);
  if (omega0.hbar() != 0.0) throw std::invalid_argument("limit state must be classical");
  const Characteristic limit = evolve_state(sys, omega0, t);
  SweepReport r;
  r.label = "egorov";
  r.hbar_values = hbars;
  r.deviations.assign(hbars.size(), 0.0);
  parallel_for(hbars.size(), [&](std::size_t i) {
    const Characteristic q = evolve_state(sys, family(hbars[i]), t);
    r.deviations[i] = panel_deviation(q, limit, panel);
  });
  finish(r);
  return r;
}

double RegimeSpec::beta_h(double hbar) const {
  switch (regime) {
    case Regime::GroundState: return std::numeric_limits<double>::infinity();
    case Regime::Linear: return beta * hbar;
    case Regime::SubLinear: return c * std::pow(hbar, 1 - eps);
    case Regime::SuperLinear: return c * std::pow(hbar, 1 + eps);
  }
  return 0;
}

std::string RegimeSpec::name() const {
  switch (regime) {
    case Regime::GroundState: return "ground";
    case Regime::Linear: return "linear";
    case Regime::SubLinear: return "sublinear";
    case Regime::SuperLinear: return "superlinear";
  }
  return "?";
}

SweepReport equilibrium_sweep(const VanHoveSystem& sys, const RegimeSpec& regime,
                              const std::vector<RadialFunction>& panel, const std::vector<double>& hbars) {
  require_sweep_input(panel, hbars);
  if (regime.regime == Regime::Linear && !(regime.beta > 0)) throw std::invalid_argument("beta must be > 0");
  if ((regime.regime == Regime::SubLinear || regime.regime == Regime::SuperLinear) &&
      (!(regime.c > 0) || !(regime.eps > 0) || !(regime.eps <= 1)))
    throw std::invalid_argument("regime needs c > 0 and 0 < eps <= 1");

  const SourceSpec& src = sys.source();
  SweepReport r;
  r.label = "equilibrium/" + regime.name();
  r.hbar_values = hbars;
  r.deviations.assign(hbars.size(), 0.0);

  std::optional<Characteristic> target;
  if (regime.regime == Regime::Linear)
    target = CharState::gibbs_classical(regime.beta, src).characteristic();
  else if (regime.regime != Regime::SuperLinear)
    target = CharState::dirac(-sys.j_over_w()).characteristic();

  parallel_for(hbars.size(), [&](std::size_t i) {
    const CharState q = CharState::gibbs_quantum(hbars[i], regime.beta_h(hbars[i]), src);
    if (target) {
      r.deviations[i] = panel_deviation(q.characteristic(), *target, panel);
    } else {
      double worst = 0;
      for (const auto& f : panel)
        if (!f.is_zero()) worst = std::max(worst, std::abs(eval_char(q, f)));
      r.deviations[i] = worst;
    }
  });
  finish(r);
  return r;
}

SweepReport scattering_sweep(const VanHoveSystem& sys, const StateFamily& family, const CharState& omega0,
                             const std::vector<RadialFunction>& panel, const std::vector<double>& hbars) {
  require_sweep_input(panel, hbars);
  if (omega0.hbar() != 0.0) throw std::invalid_argument("limit state must be classical");
  const Characteristic limit = omega0.characteristic();
  const Characteristic limit_out = transport_state(sys, limit, Direction::Outgoing);
  SweepReport r;
  r.label = "scattering";
  r.hbar_values = hbars;
  r.deviations.assign(hbars.size(), 0.0);
  std::vector<double> defect(hbars.size(), 0.0);
  parallel_for(hbars.size(), [&](std::size_t i) {
    const Characteristic q = family(hbars[i]).characteristic();
    const Characteristic q_out = transport_state(sys, q, Direction::Outgoing);
    r.deviations[i] = panel_deviation(q_out, limit_out, panel);
    defect[i] = std::abs(r.deviations[i] - panel_deviation(q, limit, panel));
  });
  double worst = 0;
  for (double d : defect) worst = std::max(worst, d);
  r.diagram_defect = worst;
  finish(r);
  return r;
}

}  // namespace vanhove
