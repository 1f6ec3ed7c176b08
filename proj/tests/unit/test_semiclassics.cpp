#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vanhove/semiclassics.hpp"

using namespace vanhove;

namespace {
struct Setup {
  GridPtr g = MomentumGrid::make({});
  VanHoveSystem sys{SourceSpec::gaussian(g)};
  std::vector<RadialFunction> panel = standard_panel(g);
  RadialFunction center = -sys.j_over_w();
};
}  // namespace

TEST_CASE("rate fit") {
  const auto h = default_hbar_ladder(3, 10);
  std::vector<double> d;
  for (double x : h) d.push_back(0.3 * x * x);
  CHECK(fit_rate(h, d) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS(fit_rate({0.1, 0.2}, {0.01, 0.02}));
  CHECK(default_hbar_ladder(3, 5) == std::vector<double>{0.125, 0.0625, 0.03125});
}

TEST_CASE("egorov deviation is exactly the gaussian damping") {
  Setup s;
  const auto hb = default_hbar_ladder(3, 12);
  const StateFamily fam = [&](double h) { return CharState::coherent(h, s.center); };
  for (double t : {0.0, 10.0, 100.0}) {
    const SweepReport r = egorov_sweep(s.sys, fam, CharState::dirac(s.center), t, s.panel, hb);
    for (std::size_t i = 0; i < hb.size(); ++i) {
      double expected = 0;
      for (const auto& f : s.panel)
        expected = std::max(expected, std::abs(std::exp(-0.5 * pi * pi * hb[i] * weighted_norm_sq(f)) - 1));
      CHECK(std::abs(r.deviations[i] - expected) < 1e-12);
    }
    REQUIRE(r.fitted_order);
    CHECK(std::abs(*r.fitted_order - 1.0) < 0.05);
    CHECK(r.converged);
  }
  CHECK_THROWS(egorov_sweep(s.sys, fam, CharState::coherent(0.1, s.center), 0.0, s.panel, hb));
}

TEST_CASE("equilibrium regimes") {
  Setup s;
  const auto hb = default_hbar_ladder(3, 12);
  const SweepReport lin = equilibrium_sweep(s.sys, {Regime::Linear, 2.0}, s.panel, hb);
  REQUIRE(lin.fitted_order);
  CHECK(std::abs(*lin.fitted_order - 2.0) < 0.1);
  const SweepReport gs = equilibrium_sweep(s.sys, {Regime::GroundState}, s.panel, hb);
  REQUIRE(gs.fitted_order);
  CHECK(std::abs(*gs.fitted_order - 1.0) < 0.05);
  const SweepReport sup = equilibrium_sweep(s.sys, {Regime::SuperLinear, 1, 1, 0.5}, s.panel, hb);
  CHECK(sup.deviations.back() < 0.05);
  // deviations shrink along the ladder
  const SweepReport sub = equilibrium_sweep(s.sys, {Regime::SubLinear, 1, 1, 0.5}, s.panel, hb);
  for (std::size_t i = 1; i < hb.size(); ++i) CHECK(sub.deviations[i] < sub.deviations[i - 1]);
  CHECK_THROWS(equilibrium_sweep(s.sys, {Regime::SubLinear, 1, 1, 1.5}, s.panel, hb));
}

TEST_CASE("regime temperatures") {
  CHECK(std::isinf(RegimeSpec{Regime::GroundState}.beta_h(0.1)));
  CHECK(RegimeSpec{Regime::Linear, 2.0}.beta_h(0.25) == 0.5);
  CHECK(RegimeSpec{Regime::SubLinear, 1, 3, 0.5}.beta_h(0.25) == doctest::Approx(1.5));
  CHECK(RegimeSpec{Regime::SuperLinear, 1, 3, 0.5}.beta_h(0.25) == doctest::Approx(0.375));
}

TEST_CASE("scattering sweep commutes with the egorov sweep") {
  Setup s;
  const auto hb = default_hbar_ladder(3, 12);
  const StateFamily fam = [&](double h) { return CharState::coherent(h, s.center); };
  const SweepReport sc = scattering_sweep(s.sys, fam, CharState::dirac(s.center), s.panel, hb);
  const SweepReport eg = egorov_sweep(s.sys, fam, CharState::dirac(s.center), 0.0, s.panel, hb);
  REQUIRE(sc.diagram_defect);
  CHECK(*sc.diagram_defect <= kDiagramTolerance);
  for (std::size_t i = 0; i < hb.size(); ++i) CHECK(std::abs(sc.deviations[i] - eg.deviations[i]) <= 1e-15);
}
