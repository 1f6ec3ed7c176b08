#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vanhove/sources.hpp"

using namespace vanhove;

TEST_CASE("power-law samples") {
  const GridPtr g = MomentumGrid::make({});
  const RadialFunction j = realize(SourceSpec::power_law(g, 0.8));
  for (Eigen::Index i = 0; i < g->size(); i += 37) {
    const double r = g->nodes()[i];
    CHECK(j[i].real() == doctest::Approx(std::pow(r, -0.8) * std::exp(-r * r)).epsilon(1e-14));
  }
  const RadialFunction jc = realize(SourceSpec::power_law(g, 0.8).with_cutoff(10));
  for (Eigen::Index i = 0; i < g->size(); ++i)
    if (g->nodes()[i] < 0.1) CHECK(jc[i] == 0.0);
    else CHECK(jc[i] == j[i]);
  CHECK_THROWS(SourceSpec::power_law(g, 0.8).with_cutoff(0));
}

TEST_CASE("exponent rule at d = 3") {
  const GridPtr g = MomentumGrid::make({});
  auto tag = [&](double gamma) { return classify_analytic(SourceSpec::power_law(g, gamma)).tag; };
  CHECK(tag(0.0) == InfraredClass::Regular);
  CHECK(tag(0.3) == InfraredClass::Regular);
  CHECK(tag(0.5) == InfraredClass::TypeI);  // threshold counts as divergent
  CHECK(tag(0.8) == InfraredClass::TypeI);
  CHECK(tag(1.0) == InfraredClass::TypeII);
  CHECK(tag(1.2) == InfraredClass::TypeII);
  CHECK(tag(1.6) == InfraredClass::OutOfScope);
  GridOptions o;
  o.mass = 0.5;
  CHECK(classify_analytic(SourceSpec::power_law(MomentumGrid::make(o), 1.2)).tag == InfraredClass::Regular);
  CHECK(classify_analytic(SourceSpec::gaussian(g)).tag == InfraredClass::Regular);
  CHECK_THROWS(classify_analytic(SourceSpec::from_samples(realize(SourceSpec::gaussian(g)))));
}

TEST_CASE("numeric tail fit reproduces the analytic exponents") {
  const GridPtr g = MomentumGrid::make({});
  for (double gamma : {0.3, 0.8, 1.2}) {
    const auto spec = SourceSpec::power_law(g, gamma);
    const NumericClassification n = classify_numeric(spec);
    CAPTURE(gamma);
    CHECK(n.tag == classify_analytic(spec).tag);
    // m(eps) ~ eps^{d - 2 gamma - alpha}, so the growth exponent is its negative
    CHECK(n.exponent_inv == doctest::Approx(2 * gamma - 2).epsilon(0.01));
    CHECK(n.exponent_inv_sq == doctest::Approx(2 * gamma - 1).epsilon(0.01));
    // tail masses against tanh-sinh at each probed eps
    for (std::size_t k = 0; k < n.eps.size(); k += 3) {
      const double e = n.eps[k];
      const double ref = oracle::radial_integral(
          [&](double r) { return std::pow(r, -2 * gamma - 1) * std::exp(-2 * r * r); }, 3, e, 12.0);
      CHECK(n.mass_inv[k] == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("gaussian source is regular everywhere") {
  const GridPtr g = MomentumGrid::make({});
  CHECK(infrared_class(SourceSpec::gaussian(g)) == InfraredClass::Regular);
  CHECK(infrared_class(SourceSpec::gaussian(MomentumGrid::single_mode(1.0))) == InfraredClass::Regular);
}

TEST_CASE("log-log slope") {
  CHECK(log_log_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2.0));
  CHECK_THROWS(log_log_slope({1}, {1}));
}
