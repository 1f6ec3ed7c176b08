#include "vanhove/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace vanhove {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void mix(std::uint64_t& h, std::uint64_t word) {
  for (int b = 0; b < 8; ++b) {
    h ^= (word >> (8 * b)) & 0xffu;
    h *= kFnvPrime;
  }
}

std::uint64_t bits(double x) {
  if (x == 0.0) x = 0.0;  // -0 and +0 are the same sample
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof u);
  return u;
}

bool bitwise_equal(const RadialFunction& a, const RadialFunction& b) {
  if (a.grid()->id() != b.grid()->id()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

void require_classical(const TrigPolynomial& a, double hbar) {
  if (a.hbar() != 0.0) throw std::invalid_argument("quantization expects a classical polynomial");
  if (!(hbar > 0)) throw std::invalid_argument("quantization needs hbar > 0");
}

}  // namespace

std::uint64_t content_hash(const RadialFunction& f) {
  std::uint64_t h = kFnvOffset;
  mix(h, f.grid()->id());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    mix(h, bits(f[i].real()));
    mix(h, bits(f[i].imag()));
  }
  return h;
}

FunctionHandle::FunctionHandle(RadialFunction f)
    : id_(content_hash(f)), payload_(std::make_shared<const RadialFunction>(std::move(f))) {}

TrigPolynomial::TrigPolynomial(GridPtr grid, double hbar, std::vector<WeylTerm> terms)
    : grid_(std::move(grid)), hbar_(hbar), terms_(std::move(terms)) {
  if (!(hbar_ >= 0)) throw std::invalid_argument("hbar must be >= 0");
  for (const auto& t : terms_) {
    if (t.generator.grid()->id() != grid_->id())
      throw std::invalid_argument("trigonometric polynomial mixes grids");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw std::invalid_argument("coefficients must be finite");
  }
  canonicalize();
}

TrigPolynomial TrigPolynomial::identity(const GridPtr& grid, double hbar) {
  return TrigPolynomial(grid, hbar, {WeylTerm{1.0, FunctionHandle(RadialFunction::zero(grid))}});
}

TrigPolynomial TrigPolynomial::character(const RadialFunction& f, double hbar, Complex coeff) {
  return TrigPolynomial(f.grid(), hbar, {WeylTerm{coeff, FunctionHandle(f)}});
}

void TrigPolynomial::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(), [](const WeylTerm& a, const WeylTerm& b) {
    return a.generator.id() < b.generator.id();
  });
  std::vector<WeylTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().generator.id() == t.generator.id()) {
      if (!bitwise_equal(merged.back().generator.function(), t.generator.function()))
        throw std::logic_error("generator hash collision");
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const WeylTerm& t) { return t.coeff == Complex(0.0, 0.0); });
  terms_ = std::move(merged);
}

Complex TrigPolynomial::coefficient(std::uint64_t id) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), id,
                             [](const WeylTerm& t, std::uint64_t v) { return t.generator.id() < v; });
  return (it != terms_.end() && it->generator.id() == id) ? it->coeff : Complex(0.0);
}

double TrigPolynomial::l1_norm() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
  if (other.hbar_ != hbar_) throw std::invalid_argument("hbar mismatch");
  if (other.grid_->id() != grid_->id()) throw std::invalid_argument("grid mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(Complex s) {
  for (auto& t : terms_) t.coeff *= s;
  canonicalize();
  return *this;
}

double symplectic_form(const RadialFunction& f, const RadialFunction& g) {
  return inner_product(f, g, WeightExponent::Flat).imag();
}

TrigPolynomial compose(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.hbar() != b.hbar()) throw std::invalid_argument("hbar mismatch in compose");
  if (a.grid()->id() != b.grid()->id()) throw std::invalid_argument("grid mismatch in compose");
  const double hbar = a.hbar();
  std::vector<WeylTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    const RadialFunction& f = ta.generator.function();
    for (const auto& tb : b.terms()) {
      const RadialFunction& g = tb.generator.function();
      Complex c = ta.coeff * tb.coeff;
      if (hbar != 0.0) c *= std::polar(1.0, -pi * pi * hbar * symplectic_form(f, g));
      out.push_back(WeylTerm{c, FunctionHandle(f + g)});
    }
  }
  return TrigPolynomial(a.grid(), hbar, std::move(out));
}

TrigPolynomial adjoint(const TrigPolynomial& a) {
  std::vector<WeylTerm> out;
  out.reserve(a.size());
  for (const auto& t : a.terms())
    out.push_back(WeylTerm{std::conj(t.coeff), FunctionHandle(-t.generator.function())});
  return TrigPolynomial(a.grid(), a.hbar(), std::move(out));
}

TrigPolynomial quantize(const TrigPolynomial& classical, double hbar) {
  require_classical(classical, hbar);
  return TrigPolynomial(classical.grid(), hbar, classical.terms());
}

TrigPolynomial antiwick(const TrigPolynomial& classical, double hbar) {
  require_classical(classical, hbar);
  std::vector<WeylTerm> out = classical.terms();
  for (auto& t : out)
    t.coeff *= std::exp(-0.5 * pi * pi * hbar * weighted_norm_sq(t.generator.function()));
  return TrigPolynomial(classical.grid(), hbar, std::move(out));
}

Complex evaluate_at(const TrigPolynomial& classical, const RadialFunction& point) {
  if (classical.hbar() != 0.0)
    throw std::invalid_argument("pointwise evaluation is only defined for classical polynomials");
  Complex acc = 0;
  for (const auto& t : classical.terms())
    acc += t.coeff * std::polar(1.0, 2 * pi * inner_product(t.generator.function(), point).real());
  return acc;
}

}  // namespace vanhove
