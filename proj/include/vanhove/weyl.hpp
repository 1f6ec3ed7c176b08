#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vanhove/grid.hpp"

namespace vanhove {

/// A generator f of a Weyl character W(f).
///
/// Handles are content-addressed: the id is a hash of the grid and the exact
/// bit pattern of the samples, so two handles name the same generator iff
/// their samples are bitwise equal. Nothing is ever merged by tolerance.
class FunctionHandle {
 public:
  explicit FunctionHandle(RadialFunction f);

  std::uint64_t id() const { return id_; }
  const RadialFunction& function() const { return *payload_; }
  const GridPtr& grid() const { return payload_->grid(); }

  friend bool operator==(const FunctionHandle& a, const FunctionHandle& b) { return a.id_ == b.id_; }

 private:
  std::uint64_t id_;
  std::shared_ptr<const RadialFunction> payload_;
};

std::uint64_t content_hash(const RadialFunction& f);

struct WeylTerm {
  Complex coeff;
  FunctionHandle generator;
};

/// Finite combination sum_j c_j W_hbar(f_j). hbar == 0 is the commutative
/// algebra of classical characters.
///
/// Canonical form: terms sorted by generator id, at most one term per
/// generator, no exactly-zero coefficients.
class TrigPolynomial {
 public:
  TrigPolynomial(GridPtr grid, double hbar, std::vector<WeylTerm> terms = {});

  static TrigPolynomial identity(const GridPtr& grid, double hbar);
  static TrigPolynomial character(const RadialFunction& f, double hbar, Complex coeff = 1.0);

  double hbar() const { return hbar_; }
  const GridPtr& grid() const { return grid_; }
  const std::vector<WeylTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of the generator with this id, zero if absent.
  Complex coefficient(std::uint64_t id) const;
  /// sum |c_j|, an upper bound for the C*-norm.
  double l1_norm() const;

  TrigPolynomial& operator+=(const TrigPolynomial& other);
  TrigPolynomial& operator*=(Complex s);
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator*(Complex s, TrigPolynomial a) { return a *= s; }

 private:
  void canonicalize();

  GridPtr grid_;
  double hbar_;
  std::vector<WeylTerm> terms_;
};

/// Im <f, g>_2
double symplectic_form(const RadialFunction& f, const RadialFunction& g);

/// Bilinear extension of W(f) W(g) = W(f + g) exp(-i pi^2 hbar sigma(f, g)).
TrigPolynomial compose(const TrigPolynomial& a, const TrigPolynomial& b);

/// c W(f) -> conj(c) W(-f)
TrigPolynomial adjoint(const TrigPolynomial& a);

/// Weyl quantization of a classical polynomial: W_0(f) -> W_hbar(f).
TrigPolynomial quantize(const TrigPolynomial& classical, double hbar);

/// Anti-Wick quantization: W_0(f) -> W_hbar(f) exp(-(pi^2 hbar / 2) ||f||^2).
TrigPolynomial antiwick(const TrigPolynomial& classical, double hbar);

/// Value of a classical polynomial at the field point T:
/// sum_j c_j exp(2 pi i Re <f_j, T>).
Complex evaluate_at(const TrigPolynomial& classical, const RadialFunction& point);

}  // namespace vanhove
