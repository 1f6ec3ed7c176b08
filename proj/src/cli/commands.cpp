#include "vanhove/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "vanhove/dynamics.hpp"
#include "vanhove/fock.hpp"
#include "vanhove/random.hpp"
#include "vanhove/scattering.hpp"
#include "vanhove/semiclassics.hpp"
#include "vanhove/sources.hpp"
#include "vanhove/states.hpp"

namespace vanhove::cli {

namespace {

using Runner = std::function<void(const RunConfig&, Report&)>;

std::vector<RadialFunction> panel_from(const RunConfig& cfg, const GridPtr& grid) {
  std::vector<RadialFunction> out;
  const auto sigmas = cfg.num_list("sigmas");
  if (sigmas.empty()) throw ConfigError("sigmas must list at least one width");
  for (Complex phase : {Complex(1, 0), Complex(0, 1)})
    for (double sigma : sigmas) {
      if (!(sigma > 0)) throw ConfigError("panel widths must be > 0");
      out.push_back(RadialFunction::sample(grid, [&](double r) { return phase * std::exp(-sigma * r * r); }));
    }
  return out;
}

VanHoveSystem system_from(const RunConfig& cfg, const GridPtr& grid) {
  try {
    return VanHoveSystem(cfg.source(grid));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void classify(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const SourceSpec spec = cfg.source(grid);
  const AnalyticClassification a = classify_analytic(spec);
  rep.summary()["analytic_class"] = to_string(a.tag);
  rep.summary()["note"] = a.note;
  rep.columns({"eps", "tail_mass_inv", "tail_mass_inv_sq"});
  bool realizable = true;
  try {
    realize(spec);
  } catch (const std::invalid_argument&) {
    realizable = false;
  }
  if (realizable && grid->has_panels() && !spec.ir_cutoff) {
    const NumericClassification n = classify_numeric(spec);
    for (std::size_t i = 0; i < n.eps.size(); ++i) rep.row({n.eps[i], n.mass_inv[i], n.mass_inv_sq[i]});
    rep.summary()["numeric_class"] = to_string(n.tag);
    rep.summary()["exponent_l2"] = n.exponent_l2;
    rep.summary()["exponent_inv"] = n.exponent_inv;
    rep.summary()["exponent_inv_sq"] = n.exponent_inv_sq;
    rep.check("numeric_matches_analytic", n.tag == a.tag,
              "numeric " + to_string(n.tag) + " vs analytic " + to_string(a.tag));
  }
  rep.summary()["class"] = to_string(a.tag);
}

void energy(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const double e0 = classical_energy(sys, -sys.j_over_w());
  const double expected = -weighted_norm_sq(sys.j(), WeightExponent::Inverse);
  rep.summary()["ground_energy"] = e0;
  rep.summary()["expected_ground_energy"] = expected;
  rep.check("ground_energy_matches_norm", std::abs(e0 - expected) <= 1e-9 * std::max(1.0, std::abs(e0)));

  SplitMix64 rng(cfg.seed());
  const int trials = cfg.integer("trials");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  rep.columns({"trial", "t", "energy_0", "energy_t", "relative_drift"});
  double worst = 0;
  for (int k = 0; k < trials; ++k) {
    const RadialFunction a0 = random_radial_function(grid, rng);
    const double t = rng.uniform(-1000.0, 1000.0);
    const double ea = classical_energy(sys, a0);
    const double eb = classical_energy(sys, classical_flow(sys, a0, t));
    const double drift = std::abs(eb - ea) / std::abs(ea);
    worst = std::max(worst, drift);
    rep.row({static_cast<long long>(k), t, ea, eb, drift});
  }
  rep.summary()["max_relative_drift"] = worst;
  rep.check("energy_conserved", worst <= 1e-10);
}

void evolve(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const double hbar = cfg.num("hbar");
  if (!(hbar > 0)) throw ConfigError("hbar must be > 0");
  SplitMix64 rng(cfg.seed());
  const CharState state = CharState::coherent(hbar, random_radial_function(grid, rng));
  const auto panel = panel_from(cfg, grid);
  rep.columns({"t", "member", "re", "im", "abs", "expected_abs"});
  double worst = 0, mass = 0;
  for (double t : cfg.num_list("t_list")) {
    const Characteristic ev = evolve_state(sys, state, t);
    mass = std::max(mass, std::abs(ev(RadialFunction::zero(grid)) - 1.0));
    for (std::size_t m = 0; m < panel.size(); ++m) {
      const Complex v = ev(panel[m]);
      const double expected = std::exp(-0.5 * pi * pi * hbar * weighted_norm_sq(panel[m]));
      worst = std::max(worst, std::abs(std::abs(v) - expected));
      rep.row({t, static_cast<long long>(m), v.real(), v.imag(), std::abs(v), expected});
    }
  }
  rep.summary()["max_modulus_error"] = worst;
  rep.summary()["mass_defect"] = mass;
  rep.check("modulus_matches_closed_form", worst <= 1e-12);
  rep.check("mass_conserved", mass <= 1e-15);
}

void kms(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const double hbar = cfg.num("hbar");
  const int trials = cfg.integer("trials"), samples = cfg.integer("t_samples");
  const double t0 = cfg.num("t_min"), t1 = cfg.num("t_max");
  if (trials < 1 || samples < 1 || !(t1 >= t0)) throw ConfigError("kms needs trials, t_samples >= 1 and t_min <= t_max");
  SplitMix64 rng(cfg.seed());
  rep.columns({"beta_h", "trial", "residual"});
  double worst = 0;
  for (double beta : cfg.num_list("betas")) {
    const CharState gibbs = CharState::gibbs_quantum(hbar, beta, sys.source());
    for (int k = 0; k < trials; ++k) {
      const RadialFunction f = random_radial_function(grid, rng), g = random_radial_function(grid, rng);
      std::vector<double> ts;
      for (int i = 0; i < samples; ++i) ts.push_back(rng.uniform(t0, t1));
      const double r = kms_check(sys, gibbs, f, g, ts);
      worst = std::max(worst, r);
      rep.row({beta, static_cast<long long>(k), r});
    }
  }
  rep.summary()["max_residual"] = worst;
  rep.check("kms_identity", worst <= kKmsTolerance);
}

void groundstate(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const double hbar = cfg.num("hbar");
  const double dt = cfg.num("window_dt");
  const RadialFunction f = RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
  const RadialFunction g = RadialFunction::sample(grid, [](double r) { return Complex(0, 1) * std::exp(-2 * r * r); });
  const KmsWindow negative(cfg.num("window_lo"), cfg.num("window_hi"));
  const KmsWindow control(cfg.num("control_lo"), cfg.num("control_hi"));
  if (!(negative.s_hi() < 0)) throw ConfigError("window_hi must be < 0");
  if (!(control.s_lo() > 0)) throw ConfigError("control_lo must be > 0");
  const double r_neg = ground_state_check(sys, hbar, f, g, negative, dt);
  const double r_pos = std::abs(ground_state_integral(sys, hbar, f, g, control, dt));
  rep.columns({"window", "s_lo", "s_hi", "time_truncation", "residual"});
  rep.row({std::string("negative"), negative.s_lo(), negative.s_hi(), negative.time_truncation(), r_neg});
  rep.row({std::string("control"), control.s_lo(), control.s_hi(), control.time_truncation(), r_pos});
  rep.summary()["negative_residual"] = r_neg;
  rep.summary()["control_residual"] = r_pos;
  rep.check("negative_window_vanishes", r_neg <= kWindowTolerance);
  rep.check("positive_control_nonzero", r_pos >= 100 * kWindowTolerance);
}

void egorov(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const auto panel = panel_from(cfg, grid);
  const auto hbars = cfg.hbar_ladder();
  const RadialFunction center = -sys.j_over_w();
  const CharState limit = CharState::dirac(center);
  const StateFamily family = [&](double h) { return CharState::coherent(h, center); };
  rep.columns({"t", "hbar", "deviation", "expected"});
  double worst = 0, order_err = 0;
  for (double t : cfg.num_list("t_list")) {
    const SweepReport r = egorov_sweep(sys, family, limit, t, panel, hbars);
    for (std::size_t i = 0; i < hbars.size(); ++i) {
      double expected = 0;
      for (const auto& f : panel)
        expected = std::max(expected, std::abs(std::exp(-0.5 * pi * pi * hbars[i] * weighted_norm_sq(f)) - 1.0));
      worst = std::max(worst, std::abs(r.deviations[i] - expected));
      rep.row({t, hbars[i], r.deviations[i], expected});
    }
    order_err = std::max(order_err, r.fitted_order ? std::abs(*r.fitted_order - 1.0) : INFINITY);
    rep.summary()["fitted_order_t" + format_number(t)] = r.fitted_order.value_or(NAN);
  }
  rep.summary()["max_closed_form_error"] = worst;
  rep.check("deviation_matches_closed_form", worst <= 1e-12);
  rep.check("first_order_rate", order_err <= 0.05);
}

void equilibrium(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  RegimeSpec reg;
  const std::string& name = cfg.str("regime");
  if (name == "ground") reg.regime = Regime::GroundState;
  else if (name == "linear") reg.regime = Regime::Linear;
  else if (name == "sublinear") reg.regime = Regime::SubLinear;
  else if (name == "superlinear") reg.regime = Regime::SuperLinear;
  else throw ConfigError("regime must be ground, linear, sublinear or superlinear");
  reg.beta = cfg.num("beta");
  reg.c = cfg.num("c");
  reg.eps = cfg.num("eps");
  const SweepReport r = equilibrium_sweep(sys, reg, panel_from(cfg, grid), cfg.hbar_ladder());
  rep.columns({"hbar", "deviation"});
  for (std::size_t i = 0; i < r.hbar_values.size(); ++i) rep.row({r.hbar_values[i], r.deviations[i]});
  rep.summary()["regime"] = reg.name();
  rep.summary()["fitted_order"] = r.fitted_order.value_or(NAN);
  rep.summary()["verdict"] = r.converged ? "converged" : "diverged";
  rep.summary()["final_deviation"] = r.deviations.back();
  if (reg.regime == Regime::Linear)
    rep.check("second_order_rate", r.fitted_order && std::abs(*r.fitted_order - 2.0) <= 0.1);
  else if (reg.regime == Regime::SuperLinear)
    rep.check("characteristic_vanishes", r.deviations.back() < 0.05);
  else
    rep.check("converged", r.converged);
}

void scattering(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const VanHoveSystem sys = system_from(cfg, grid);
  const double hbar = cfg.num("hbar");
  const RadialFunction f = RadialFunction::sample(grid, [](double r) { return std::exp(-r * r); });
  const auto ts = cfg.num_list("decay_t");
  if (ts.empty()) throw ConfigError("decay_t must list at least one time");
  const auto decay = decay_probe(sys, f, ts);
  rep.columns({"t", "overlap", "deviation", "bound"});
  bool bound_ok = true, decreasing = true;
  double prev = INFINITY;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const ConvergenceSample s = convergence_probe(sys, f, hbar, ts[i]);
    bound_ok = bound_ok && s.deviation <= 2 * pi * s.overlap * (1 + 1e-12) + 1e-15;
    decreasing = decreasing && s.deviation < prev;
    prev = s.deviation;
    rep.row({ts[i], decay[i].second, s.deviation, 2 * pi * s.overlap});
  }
  rep.summary()["final_overlap"] = decay.back().second;
  rep.check("deviation_within_bound", bound_ok);
  rep.check("deviation_decreasing", decreasing);
  rep.check("overlap_decayed", decay.back().second < 1e-2);

  const auto panel = panel_from(cfg, grid);
  const RadialFunction center = -sys.j_over_w();
  double round_trip = 0;
  for (const CharState& s : {CharState::coherent(hbar, center), CharState::dirac(center)}) {
    const Characteristic c = s.characteristic();
    const Characteristic out = scattering_map(sys, c);
    const Characteristic back = inverse_transport(sys, transport_state(sys, c, Direction::Outgoing), Direction::Outgoing);
    for (const auto& g : panel)
      round_trip = std::max({round_trip, std::abs(out(g) - c(g)), std::abs(back(g) - c(g))});
  }
  rep.summary()["s_matrix_defect"] = round_trip;
  rep.check("s_matrix_identity", round_trip <= 1e-15);

  const StateFamily family = [&](double h) { return CharState::coherent(h, center); };
  const SweepReport sw = scattering_sweep(sys, family, CharState::dirac(center), panel, cfg.hbar_ladder());
  rep.summary()["diagram_defect"] = *sw.diagram_defect;
  rep.check("diagram_commutes", *sw.diagram_defect <= kDiagramTolerance);
}

FockMode mode_from(const RunConfig& cfg) {
  FockMode m;
  m.omega = cfg.num("omega");
  m.coupling = Complex(cfg.num("coupling_re"), cfg.num("coupling_im"));
  m.cutoff = cfg.integer("fock_cutoff");
  m.hbar = cfg.num("hbar");
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return m;
}

void fock_spectrum(const RunConfig& cfg, Report& rep) {
  const FockMode mode = mode_from(cfg);
  const DenseOperator h = build_hamiltonian(mode);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h, Eigen::EigenvaluesOnly);
  const double e0 = -std::norm(mode.coupling) / mode.omega;
  rep.columns({"k", "eigenvalue", "expected"});
  double worst = 0;
  for (Eigen::Index k = 0; k < trusted_block(mode); ++k) {
    const double expected = e0 + k * mode.hbar * mode.omega;
    if (k < 4) worst = std::max(worst, std::abs(solver.eigenvalues()[k] - expected));
    rep.row({static_cast<long long>(k), solver.eigenvalues()[k], expected});
  }
  const GroundStateReport g = ground_state_analysis(mode);
  rep.summary()["ground_energy"] = g.energy;
  rep.summary()["expected_ground_energy"] = g.expected_energy;
  rep.summary()["gap"] = g.gap;
  rep.summary()["overlap_sq"] = g.overlap_sq;
  rep.summary()["number"] = g.number;
  rep.summary()["expected_number"] = g.expected_number;
  rep.check("hermitian", (h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  rep.check("ground_energy_matches", std::abs(g.energy - g.expected_energy) <= 1e-9);
  rep.check("gap_matches", std::abs(g.gap - mode.hbar * mode.omega) <= 1e-8);
  rep.check("low_levels", worst <= 1e-8);
  rep.check("coherent_ground_state", g.overlap_sq >= 1 - 1e-6);
  rep.check("number_expectation", std::abs(g.number - g.expected_number) <= 1e-8);
}

void soft_photons(const RunConfig& cfg, Report& rep) {
  const GridPtr grid = cfg.grid();
  const SourceSpec spec = cfg.source(grid);
  if (spec.family != SourceFamily::PowerLawGaussian) throw ConfigError("soft-photons needs source=powerlaw");
  if (spec.ir_cutoff) throw ConfigError("soft-photons sets its own cutoffs; use cutoff=0");
  const InfraredClass cls = classify_analytic(spec).tag;
  if (cls == InfraredClass::OutOfScope) throw ConfigError("source is not in L^2");
  SoftPhotonReport r;
  try {
    r = soft_photon_sweep(spec, cfg.int_list("cutoffs"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  rep.columns({"n", "number", "energy"});
  bool monotone = true;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i > 0) monotone = monotone && r.rows[i].number > r.rows[i - 1].number;
    rep.row({static_cast<long long>(r.rows[i].n), r.rows[i].number, r.rows[i].energy});
  }
  const double gamma = spec.gamma;
  rep.summary()["class"] = to_string(cls);
  rep.summary()["number_slope"] = r.number_slope;
  rep.summary()["energy_slope"] = r.energy_slope;
  rep.summary()["number_diverges"] = r.number_diverges;
  rep.summary()["energy_diverges"] = r.energy_diverges;
  rep.check("number_monotone", monotone);
  if (cls == InfraredClass::Regular) {
    rep.check("number_converges", !r.number_diverges);
  } else if (cls == InfraredClass::TypeI) {
    rep.check("number_slope_matches", std::abs(r.number_slope - (2 * gamma - 1)) <= 0.05);
    rep.check("energy_converges", !r.energy_diverges);
  } else {
    rep.check("energy_slope_matches", std::abs(r.energy_slope - (2 * gamma - 2)) <= 0.05);
  }
}

void garding(const RunConfig& cfg, Report& rep) {
  const GridPtr mode = MomentumGrid::single_mode(1.0);
  const TrigPolynomial symbol = garding_symbol(mode, 1.0, Complex(0, 1));
  const auto hbars = cfg.hbar_ladder("garding");
  const GardingReport w = garding_probe(symbol, hbars, Quantization::Weyl);
  const GardingReport a = garding_probe(symbol, hbars, Quantization::AntiWick);
  rep.columns({"hbar", "cutoff", "weyl_lambda_min", "weyl_lambda_min_doubled", "weyl_stable", "antiwick_lambda_min"});
  bool bound = true, positive = true;
  for (std::size_t i = 0; i < w.rows.size(); ++i) {
    const auto& r = w.rows[i];
    bound = bound && r.lambda_min >= -w.constant * r.hbar - 1e-12;
    positive = positive && a.rows[i].lambda_min >= -1e-8;
    rep.row({r.hbar, static_cast<long long>(r.cutoff), r.lambda_min, r.lambda_min_doubled,
             static_cast<long long>(r.stable), a.rows[i].lambda_min});
  }
  rep.summary()["weyl_slope"] = w.slope;
  rep.summary()["garding_constant"] = w.constant;
  rep.summary()["fit_residual"] = w.fit_residual;
  rep.summary()["fitted_rows"] = w.fitted_rows;
  rep.summary()["max_ratio"] = w.max_ratio;
  rep.check("fit_available", w.fitted_rows >= 2);
  rep.check("ratio_bounded", std::isfinite(w.max_ratio));
  rep.check("garding_bound", bound);
  rep.check("linear_fit", w.fit_residual < 0.1);
  rep.check("antiwick_positive", positive);
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r = {
      {"classify", classify},       {"energy", energy},
      {"evolve", evolve},           {"kms", kms},
      {"groundstate", groundstate}, {"egorov", egorov},
      {"equilibrium", equilibrium}, {"scattering", scattering},
      {"fock-spectrum", fock_spectrum}, {"soft-photons", soft_photons},
      {"garding", garding},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : runners()) out.push_back(k);
    return out;
  }();
  return names;
}

Report run_command(const std::string& name, const RunConfig& config) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw ConfigError("unknown command '" + name + "'");
  Report rep(name, config);
  it->second(config, rep);
  return rep;
}

}  // namespace vanhove::cli
