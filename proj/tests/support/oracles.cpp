#include "oracles.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

double sphere_area(int d) { return 2 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d); }

double radial_integral(const std::function<double(double)>& h, int d, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto fn = [&](double r) { return h(r) * std::pow(r, d - 1); };
  return sphere_area(d) * ts.integrate(fn, a, b);
}

Complex oscillatory_integral(const std::function<Complex(double)>& h, int d, double a, double b, double t,
                             int pieces) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const double width = (b - a) / pieces;
  double re = 0, im = 0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * width, hi = lo + width;
    auto fn = [&](double r) { return h(r) * std::polar(1.0, t * r) * std::pow(r, d - 1); };
    re += Rule::integrate([&](double r) { return fn(r).real(); }, lo, hi);
    im += Rule::integrate([&](double r) { return fn(r).imag(); }, lo, hi);
  }
  return sphere_area(d) * Complex(re, im);
}

Eigen::MatrixXcd weyl_expm(double hbar, Complex z, int cutoff) {
  const int dim = cutoff + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
  const Eigen::MatrixXcd gen = Complex(0, pi * std::sqrt(hbar)) * (z * a.adjoint() + std::conj(z) * a);
  return gen.exp();
}

double vacuum_weyl(double hbar, Complex z) { return std::exp(-0.5 * pi * pi * hbar * std::norm(z)); }

}  // namespace oracle
