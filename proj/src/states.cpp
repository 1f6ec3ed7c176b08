#include "vanhove/states.hpp"

#include <cmath>
#include <stdexcept>

namespace vanhove {

namespace {

RadialFunction minus_j_over_w(const SourceSpec& source) {
  return -scale_by_dispersion(realize(source), -1);
}

void require_gibbs_source(const SourceSpec& source) {
  const InfraredClass c = infrared_class(source);
  if (c == InfraredClass::TypeII || c == InfraredClass::OutOfScope)
    throw std::domain_error("Gibbs state undefined: source is " + to_string(c) +
                            " (energy unbounded below)");
}

Complex gaussian_phase(double exponent, const RadialFunction& f, const RadialFunction& center) {
  return std::exp(exponent) * std::polar(1.0, 2 * pi * inner_product(f, center).real());
}

}  // namespace

Characteristic::Characteristic(GridPtr grid, double hbar, Fn fn)
    : grid_(std::move(grid)), hbar_(hbar), fn_(std::move(fn)) {}

Complex Characteristic::operator()(const RadialFunction& f) const {
  if (f.grid()->id() != grid_->id()) throw std::invalid_argument("test function on a foreign grid");
  return fn_(f);
}

double coth_stable(double x) {
  if (x > 40.0) return 1.0;
  if (x < 1e-8) return 1.0 / x + x / 3.0;
  return 1.0 / std::tanh(x);
}

CharState CharState::coherent(double hbar, RadialFunction center) {
  if (!(hbar >= 0)) throw std::invalid_argument("hbar must be >= 0");
  GridPtr g = center.grid();
  return CharState(hbar, g, kind::Coherent{std::move(center)});
}

CharState CharState::gibbs_quantum(double hbar, double beta_h, const SourceSpec& source) {
  if (!(hbar > 0)) throw std::invalid_argument("quantum Gibbs state needs hbar > 0");
  if (!(beta_h > 0)) throw std::invalid_argument("quantum inverse temperature must be > 0");
  require_gibbs_source(source);
  const MomentumGrid& grid = *source.grid;
  RealVector cov(grid.size());
  for (Eigen::Index i = 0; i < cov.size(); ++i) {
    const double c = std::isinf(beta_h) ? 1.0 : coth_stable(0.5 * beta_h * grid.dispersion()[i]);
    cov[i] = grid.measure()[i] * c;
  }
  return CharState(hbar, source.grid,
                   kind::GibbsQuantum{beta_h, source, minus_j_over_w(source), std::move(cov)});
}

CharState CharState::gibbs_classical(double beta, const SourceSpec& source) {
  if (!(beta > 0)) throw std::invalid_argument("inverse temperature must be > 0");
  require_gibbs_source(source);
  return CharState(0.0, source.grid, kind::GibbsClassical{beta, source, minus_j_over_w(source)});
}

CharState CharState::dirac(RadialFunction center) {
  GridPtr g = center.grid();
  return CharState(0.0, g, kind::Dirac{std::move(center)});
}

CharState CharState::deformed(double hbar, const CharState& base) {
  if (!(hbar > 0)) throw std::invalid_argument("deformation needs hbar > 0");
  if (base.hbar() != 0.0) throw std::invalid_argument("only classical states can be deformed");
  return CharState(hbar, base.grid(), kind::Deformed{std::make_shared<const CharState>(base)});
}

std::string CharState::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Coherent>) return "coherent";
        else if constexpr (std::is_same_v<K, kind::GibbsQuantum>) return "gibbs_quantum";
        else if constexpr (std::is_same_v<K, kind::GibbsClassical>) return "gibbs_classical";
        else if constexpr (std::is_same_v<K, kind::Dirac>) return "dirac";
        else return "deformed";
      },
      kind_);
}

Characteristic CharState::characteristic() const {
  auto self = std::make_shared<const CharState>(*this);
  return Characteristic(grid_, hbar_, [self](const RadialFunction& f) { return eval_char(*self, f); });
}

Complex eval_char(const CharState& s, const RadialFunction& f) {
  if (f.grid()->id() != s.grid()->id()) throw std::invalid_argument("test function on a foreign grid");
  const double hbar = s.hbar();
  return std::visit(
      [&](const auto& k) -> Complex {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Coherent>) {
          return gaussian_phase(-0.5 * pi * pi * hbar * weighted_norm_sq(f), f, k.center);
        } else if constexpr (std::is_same_v<K, kind::GibbsQuantum>) {
          double q = 0;
          for (Eigen::Index i = 0; i < f.size(); ++i) q += k.covariance[i] * std::norm(f[i]);
          return gaussian_phase(-0.5 * pi * pi * hbar * q, f, k.center);
        } else if constexpr (std::is_same_v<K, kind::GibbsClassical>) {
          return gaussian_phase(-pi * pi / k.beta * weighted_norm_sq(f, WeightExponent::Inverse), f,
                                k.center);
        } else if constexpr (std::is_same_v<K, kind::Dirac>) {
          return std::polar(1.0, 2 * pi * inner_product(f, k.center).real());
        } else {
          return std::exp(-0.5 * pi * pi * hbar * weighted_norm_sq(f)) * eval_char(*k.base, f);
        }
      },
      s.kind());
}

Complex evaluate(const Characteristic& s, const TrigPolynomial& a) {
  if (a.hbar() != s.hbar()) throw std::invalid_argument("hbar mismatch between state and observable");
  Complex acc = 0;
  for (const auto& t : a.terms()) acc += t.coeff * s(t.generator.function());
  return acc;
}

Complex evaluate(const CharState& s, const TrigPolynomial& a) {
  if (a.hbar() != s.hbar()) throw std::invalid_argument("hbar mismatch between state and observable");
  Complex acc = 0;
  for (const auto& t : a.terms()) acc += t.coeff * eval_char(s, t.generator.function());
  return acc;
}

Eigen::MatrixXcd gram_matrix(const Characteristic& s, const std::vector<RadialFunction>& panel) {
  const int n = static_cast<int>(panel.size());
  if (n == 0 || n > kMaxGramPanel)
    throw std::invalid_argument("Gram panel size must be in [1, 64]");
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Complex v = s(panel[j] - panel[k]);
      if (s.hbar() != 0.0)
        v *= std::polar(1.0, -pi * pi * s.hbar() * symplectic_form(panel[j], panel[k]));
      m(j, k) = v;
    }
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::logic_error("Gram matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  return m;
}

GramReport analyze_gram(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  GramReport r;
  r.size = static_cast<int>(m.rows());
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.psd = r.min_eigenvalue >= -1e-10 * r.size;
  return r;
}

GramReport bochner_gram(const Characteristic& s, const std::vector<RadialFunction>& panel) {
  return analyze_gram(gram_matrix(s, panel));
}

GramReport bochner_gram(const CharState& s, const std::vector<RadialFunction>& panel) {
  return bochner_gram(s.characteristic(), panel);
}

}  // namespace vanhove
