#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vanhove/random.hpp"
#include "vanhove/semiclassics.hpp"
#include "vanhove/states.hpp"

using namespace vanhove;

namespace {

struct Setup {
  GridPtr g = MomentumGrid::make({});
  SourceSpec src = SourceSpec::gaussian(g);
  // f = (1 + i r) e^{-r^2}; source J = e^{-r^2}, so <f, -J/w> = -sigma int r (1 - i r) e^{-2r^2} dr
  RadialFunction f = RadialFunction::sample(g, [](double r) { return Complex(1, r) * std::exp(-r * r); });
  double f_norm = oracle::radial_integral([](double r) { return (1 + r * r) * std::exp(-2 * r * r); }, 3, 1e-6, 12);
  double phase_re = -oracle::radial_integral([](double r) { return std::exp(-2 * r * r) / r; }, 3, 1e-6, 12);
};

}  // namespace

TEST_CASE("coherent characteristic") {
  Setup s;
  const auto center = RadialFunction::sample(s.g, [](double r) { return -std::exp(-r * r) / r; });
  const Complex expected = std::exp(-0.5 * pi * pi * 0.2 * s.f_norm) * std::polar(1.0, 2 * pi * s.phase_re);
  CHECK(std::abs(eval_char(CharState::coherent(0.2, center), s.f) - expected) < 1e-12);
  CHECK(std::abs(eval_char(CharState::dirac(center), s.f) - std::polar(1.0, 2 * pi * s.phase_re)) < 1e-12);
  CHECK_THROWS(CharState::coherent(-1.0, center));
}

TEST_CASE("quantum gibbs characteristic against coth quadrature") {
  Setup s;
  for (double beta : {0.5, 1.0, 4.0}) {
    const double q = oracle::radial_integral(
        [&](double r) { return (1 + r * r) * std::exp(-2 * r * r) / std::tanh(0.5 * beta * r); }, 3, 1e-6, 12);
    const Complex expected = std::exp(-0.5 * pi * pi * 0.3 * q) * std::polar(1.0, 2 * pi * s.phase_re);
    CAPTURE(beta);
    CHECK(std::abs(eval_char(CharState::gibbs_quantum(0.3, beta, s.src), s.f) - expected) < 1e-11);
  }
  const Complex ground = std::exp(-0.5 * pi * pi * 0.3 * s.f_norm) * std::polar(1.0, 2 * pi * s.phase_re);
  CHECK(std::abs(eval_char(CharState::gibbs_quantum(0.3, INFINITY, s.src), s.f) - ground) < 1e-12);
}

TEST_CASE("classical gibbs and deformation") {
  Setup s;
  const double inv = oracle::radial_integral([](double r) { return (1 + r * r) * std::exp(-2 * r * r) / r; }, 3, 1e-6, 12);
  const Complex expected = std::exp(-pi * pi / 2.0 * inv) * std::polar(1.0, 2 * pi * s.phase_re);
  const CharState cl = CharState::gibbs_classical(2.0, s.src);
  CHECK(std::abs(eval_char(cl, s.f) - expected) < 1e-11);
  const CharState d = CharState::deformed(0.1, cl);
  CHECK(std::abs(eval_char(d, s.f) - std::exp(-0.05 * pi * pi * s.f_norm) * expected) < 1e-11);
  CHECK_THROWS(CharState::deformed(0.1, d));
}

TEST_CASE("gibbs states need an admissible source") {
  const GridPtr g = MomentumGrid::make({});
  CHECK_THROWS_AS(CharState::gibbs_quantum(0.1, 1.0, SourceSpec::power_law(g, 1.2)), std::domain_error);
  CHECK_THROWS_AS(CharState::gibbs_quantum(0.1, 0.0, SourceSpec::gaussian(g)), std::invalid_argument);
  CHECK_NOTHROW(CharState::gibbs_quantum(0.1, 1.0, SourceSpec::power_law(g, 0.8)));
}

TEST_CASE("bochner gram matrices") {
  Setup s;
  const auto panel = standard_panel(s.g);
  const auto center = RadialFunction::sample(s.g, [](double r) { return Complex(0.4, 0.1) * std::exp(-r * r); });
  for (const CharState& st :
       {CharState::coherent(0.5, center), CharState::gibbs_quantum(0.5, 1.0, s.src), CharState::dirac(center),
        CharState::gibbs_classical(1.0, s.src), CharState::deformed(0.5, CharState::gibbs_classical(1.0, s.src))}) {
    const GramReport r = bochner_gram(st, panel);
    CAPTURE(st.kind_name());
    CHECK(r.psd);
    CHECK(r.min_eigenvalue >= -1.2e-9);
  }
  CHECK_THROWS(bochner_gram(CharState::dirac(center), std::vector<RadialFunction>{}));
}

TEST_CASE("evaluate is linear") {
  Setup s;
  const CharState st = CharState::gibbs_quantum(0.5, 2.0, s.src);
  SplitMix64 rng(5);
  const auto a = random_radial_function(s.g, rng), b = random_radial_function(s.g, rng);
  TrigPolynomial p = TrigPolynomial::character(a, 0.5, 2.0);
  p += TrigPolynomial::character(b, 0.5, Complex(0, -1));
  CHECK(std::abs(evaluate(st, p) - (2.0 * eval_char(st, a) - Complex(0, 1) * eval_char(st, b))) < 1e-15);
  CHECK_THROWS(evaluate(st, TrigPolynomial::character(a, 0.25)));
}
