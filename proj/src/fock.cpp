#include "vanhove/fock.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vanhove {

int adequate_cutoff(const FockMode& mode) {
  return static_cast<int>(std::ceil(4 * std::norm(mode.coupling) / (mode.hbar * mode.omega * mode.omega))) + 20;
}

void validate(const FockMode& mode) {
  if (mode.cutoff < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
  if (!(mode.omega > 0)) throw std::invalid_argument("mode frequency must be > 0");
  if (!(mode.hbar > 0)) throw std::invalid_argument("hbar must be > 0");
  if (mode.coupling != 0.0 && mode.cutoff < adequate_cutoff(mode))
    throw std::invalid_argument("cutoff " + std::to_string(mode.cutoff) + " too small for the displaced ground state (need " +
                                std::to_string(adequate_cutoff(mode)) + ")");
}

Ladder build_ladder(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("Fock cutoff must be >= 2");
  const int dim = cutoff + 1;
  Ladder l;
  l.a = DenseOperator::Zero(dim, dim);
  l.number = DenseOperator::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) l.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  for (int k = 0; k < dim; ++k) l.number(k, k) = k;
  l.adag = l.a.adjoint();
  return l;
}

DenseOperator build_hamiltonian(const FockMode& mode) {
  validate(mode);
  const Ladder l = build_ladder(mode.cutoff);
  const double sh = std::sqrt(mode.hbar);
  DenseOperator h = mode.hbar * mode.omega * l.number + sh * (mode.coupling * l.adag + std::conj(mode.coupling) * l.a);
  return h;
}

WeylFactory::WeylFactory(const FockMode& mode) : mode_(mode), dim_(mode.cutoff + 1) {
  validate(mode);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd sub(dim_ - 1);
  const double sh = std::sqrt(mode.hbar);
  for (Eigen::Index k = 0; k + 1 < dim_; ++k) sub[k] = sh * std::sqrt(static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed for the field operator");
  values_ = solver.eigenvalues();
  // Eigenvectors of the Jacobi matrix by its three-term recurrence (Hermite
  // functions at the nodes), normalized; O(n^2) instead of O(n^3).
  vectors_.resize(dim_, dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    const double lambda = values_[k];
    double prev = 0.0, cur = 1.0;
    vectors_(0, k) = cur;
    for (Eigen::Index n = 0; n + 1 < dim_; ++n) {
      const double next = (lambda * cur - (n > 0 ? sub[n - 1] * prev : 0.0)) / sub[n];
      prev = cur;
      cur = next;
      vectors_(n + 1, k) = cur;
      if (std::abs(cur) > 1e100) {
        vectors_.col(k).head(n + 2) *= 1e-100;
        prev *= 1e-100;
        cur *= 1e-100;
      }
    }
    vectors_.col(k).stableNormalize();
  }
}

DenseOperator WeylFactory::radial_block(double s, Eigen::Index rows) const {
  if (rows < 1 || rows > dim_) throw std::invalid_argument("block size out of range");
  if (pi * pi * mode_.hbar * s * s > 0.25 * mode_.cutoff)
    throw std::invalid_argument("displacement too large for the cutoff: pi^2 hbar |z|^2 > N/4");
  Eigen::VectorXd c(dim_), sn(dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    c[k] = std::cos(pi * s * values_[k]);
    sn[k] = std::sin(pi * s * values_[k]);
  }
  const Eigen::MatrixXd top = vectors_.topRows(rows);
  const Eigen::MatrixXd re = top * c.asDiagonal() * top.transpose();
  const Eigen::MatrixXd im = top * sn.asDiagonal() * top.transpose();
  DenseOperator m(rows, rows);
  m.real() = re;
  m.imag() = im;
  return m;
}

DenseOperator WeylFactory::rotate(const DenseOperator& m, double theta) {
  if (theta == 0.0) return m;
  DenseOperator out = m;
  for (Eigen::Index q = 0; q < m.cols(); ++q)
    for (Eigen::Index p = 0; p < m.rows(); ++p) out(p, q) *= std::polar(1.0, theta * static_cast<double>(p - q));
  return out;
}

DenseOperator WeylFactory::block(Complex z, Eigen::Index rows) const {
  const double s = std::abs(z);
  return rotate(radial_block(s, rows), s > 0 ? std::arg(z) : 0.0);
}

DenseOperator weyl_matrix(const FockMode& mode, Complex z) { return WeylFactory(mode).full(z); }

Eigen::Index trusted_block(const FockMode& mode) { return (mode.cutoff + 1) / 2; }

double unitarity_defect(const DenseOperator& w, Eigen::Index block) {
  const DenseOperator p = w.adjoint() * w;
  return (p.topLeftCorner(block, block) - DenseOperator::Identity(block, block)).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd coherent_ground_vector(const FockMode& mode) {
  const Complex z = -mode.coupling / (Complex(0, pi) * mode.hbar * mode.omega);
  return WeylFactory(mode).full(z).col(0);
}

GroundStateReport ground_state_analysis(const FockMode& mode) {
  const DenseOperator h = build_hamiltonian(mode);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed for the Hamiltonian");
  GroundStateReport r;
  r.energy = solver.eigenvalues()[0];
  r.gap = solver.eigenvalues()[1] - solver.eigenvalues()[0];
  r.expected_energy = -std::norm(mode.coupling) / mode.omega;
  const Eigen::VectorXcd v = solver.eigenvectors().col(0);
  r.overlap_sq = std::norm(v.dot(coherent_ground_vector(mode)));
  double n = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) n += k * std::norm(v[k]);
  r.number = mode.hbar * n;
  r.expected_number = std::norm(mode.coupling / mode.omega);
  return r;
}

std::vector<FockMode> modes_from_source(const SourceSpec& spec, double hbar) {
  if (!(hbar > 0)) throw std::invalid_argument("hbar must be > 0");
  const RadialFunction j = realize(spec);
  const MomentumGrid& grid = *spec.grid;
  std::vector<FockMode> out;
  out.reserve(grid.size());
  for (Eigen::Index m = 0; m < grid.size(); ++m) {
    FockMode mode;
    mode.omega = grid.dispersion()[m];
    mode.coupling = j[m] * std::sqrt(grid.measure()[m]);
    mode.hbar = hbar;
    mode.cutoff = std::max(adequate_cutoff(mode), 8);
    out.push_back(mode);
  }
  return out;
}

MultiModeReport multimode_ground_state(const SourceSpec& spec, double hbar) {
  const std::vector<FockMode> modes = modes_from_source(spec, hbar);
  MultiModeReport r;
  r.expected_energy = -weighted_norm_sq(realize(spec), WeightExponent::Inverse);
  for (const auto& mode : modes) {
    const GroundStateReport g = ground_state_analysis(mode);
    r.energy += g.energy;
    r.overlap_sq *= g.overlap_sq;
    r.max_cutoff = std::max(r.max_cutoff, mode.cutoff);
  }
  r.modes = static_cast<int>(modes.size());
  return r;
}

namespace {

double increment_slope(const std::vector<double>& n, const std::vector<double>& v) {
  std::vector<double> x, y;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double d = std::abs(v[k] - v[k - 1]);
    if (d > 0) {
      x.push_back(n[k]);
      y.push_back(d);
    }
  }
  if (x.size() < 2) return -std::numeric_limits<double>::infinity();
  return log_log_slope(x, y);
}

}  // namespace

SoftPhotonReport soft_photon_sweep(const SourceSpec& spec, const std::vector<int>& n_list) {
  if (n_list.size() < 3) throw std::invalid_argument("soft-photon sweep needs at least 3 cutoffs");
  const double r_min = spec.grid->nodes().minCoeff();
  SoftPhotonReport r;
  std::vector<double> n, num, en;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (k > 0 && n_list[k] <= n_list[k - 1]) throw std::invalid_argument("cutoffs must increase");
    if (1.0 / n_list[k] < r_min) throw std::invalid_argument("cutoff 1/n below the grid's smallest node");
    const RadialFunction jn = realize(spec.with_cutoff(n_list[k]));
    SoftPhotonRow row;
    row.n = n_list[k];
    row.number = weighted_norm_sq(jn, WeightExponent::InverseSquare);
    row.energy = -weighted_norm_sq(jn, WeightExponent::Inverse);
    r.rows.push_back(row);
    n.push_back(row.n);
    num.push_back(row.number);
    en.push_back(-row.energy);
  }
  r.number_slope = log_log_slope(n, num);
  r.energy_slope = log_log_slope(n, en);
  r.number_increment_slope = increment_slope(n, num);
  r.energy_increment_slope = increment_slope(n, en);
  r.number_diverges = r.number_increment_slope > -kDivergenceMargin;
  r.energy_diverges = r.energy_increment_slope > -kDivergenceMargin;
  return r;
}

OverlapSample weak_vanishing_overlap(const FockMode& mode, Complex f) {
  const WeylFactory factory(mode);
  const Complex z0 = -mode.coupling / (Complex(0, pi) * mode.hbar * mode.omega);
  const Eigen::VectorXcd c = factory.full(z0).col(0);
  const Eigen::VectorXcd wf = factory.full(f).col(0);
  OverlapSample s;
  s.matrix = std::abs(wf.dot(c));
  s.closed_form = std::exp(-0.5 * pi * pi * mode.hbar * std::norm(f - z0));
  return s;
}

LadderBoundReport ladder_bound_ratios(const FockMode& mode, double s, Complex g, const Eigen::VectorXcd& psi) {
  if (!(s > 0)) throw std::invalid_argument("S must be > 0");
  if (!(mode.hbar > 0)) throw std::invalid_argument("hbar must be > 0");
  const Eigen::Index dim = mode.cutoff + 1;
  if (psi.size() != dim) throw std::invalid_argument("vector size does not match the cutoff");
  if (psi[dim - 1] != 0.0 || psi[dim - 2] != 0.0)
    throw std::invalid_argument("top two components must vanish");
  const Ladder l = build_ladder(mode.cutoff);
  const double sh = std::sqrt(mode.hbar);
  const double dgamma = std::sqrt(mode.hbar * s) * (l.number.real().diagonal().cwiseSqrt().asDiagonal() * psi).norm();
  const double bound = std::abs(g) / std::sqrt(s) * dgamma;
  const double ann = (sh * std::conj(g) * (l.a * psi)).norm();
  const double cre = (sh * g * (l.adag * psi)).norm();
  LadderBoundReport r;
  r.trials = 1;
  r.annihilation = bound > 0 ? ann / bound : (ann > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  r.creation = cre / (bound + sh * std::abs(g) * psi.norm());
  return r;
}

LadderBoundReport ladder_bound_check(const FockMode& mode, double s, Complex g, int trials, SplitMix64& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Eigen::Index dim = mode.cutoff + 1;
  LadderBoundReport r;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    const double decay = rng.uniform(0.0, 0.3);
    for (Eigen::Index k = 0; k + 2 < dim; ++k)
      psi[k] = Complex(rng.normal(), rng.normal()) * std::exp(-decay * static_cast<double>(k));
    const LadderBoundReport one = ladder_bound_ratios(mode, s, g, psi);
    r.annihilation = std::max(r.annihilation, one.annihilation);
    r.creation = std::max(r.creation, one.creation);
  }
  r.trials = trials;
  return r;
}

int garding_cutoff(double hbar) {
  int n = std::max(64, static_cast<int>(std::ceil(1.2 / hbar)));
  return n + (n % 2);
}

namespace {

Complex single_sample(const FunctionHandle& h) {
  if (h.function().size() != 1) throw std::invalid_argument("symbol must live on a single-mode grid");
  return h.function()[0];
}

}  // namespace

void require_nonnegative_symbol(const TrigPolynomial& symbol) {
  if (symbol.hbar() != 0.0) throw std::invalid_argument("symbol must be classical");
  if (symbol.grid()->size() != 1) throw std::invalid_argument("symbol must live on a single-mode grid");
  bool integral = true;
  for (const auto& t : symbol.terms()) {
    const Complex z = single_sample(t.generator);
    integral = integral && z.real() == std::round(z.real()) && z.imag() == std::round(z.imag());
  }
  const double lo = integral ? 0.0 : -4.0, width = integral ? 1.0 : 8.0;
  const double tol = 1e-12 * std::max(1.0, symbol.l1_norm());
  const int m = 100;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Complex T(lo + width * a / m, lo + width * b / m);
      const Complex v = evaluate_at(symbol, RadialFunction(symbol.grid(), ComplexVector::Constant(1, T)));
      if (v.real() < -tol || std::abs(v.imag()) > tol)
        throw std::invalid_argument("symbol is not a nonnegative function (value " + std::to_string(v.real()) +
                                    " at T = " + std::to_string(T.real()) + "+" + std::to_string(T.imag()) + "i)");
    }
  }
}

namespace {

double quantized_lambda_min(const TrigPolynomial& symbol, double hbar, int cutoff, Quantization q) {
  FockMode mode;
  mode.omega = 1.0;
  mode.hbar = hbar;
  mode.cutoff = cutoff;
  const WeylFactory factory(mode);
  const Eigen::Index rows = trusted_block(mode);
  const TrigPolynomial op = q == Quantization::Weyl ? quantize(symbol, hbar) : antiwick(symbol, hbar);
  DenseOperator m = DenseOperator::Zero(rows, rows);
  std::map<double, DenseOperator> radial;
  for (const auto& t : op.terms()) {
    const Complex z = single_sample(t.generator);
    const double s = std::abs(z);
    auto it = radial.find(s);
    if (it == radial.end()) it = radial.emplace(s, factory.radial_block(s, rows)).first;
    m += t.coeff * WeylFactory::rotate(it->second, s > 0 ? std::arg(z) : 0.0);
  }
  const DenseOperator herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

}  // namespace

GardingReport garding_probe(const TrigPolynomial& symbol, const std::vector<double>& hbars, Quantization q) {
  require_nonnegative_symbol(symbol);
  if (hbars.empty()) throw std::invalid_argument("empty hbar list");
  GardingReport r;
  for (double hbar : hbars) {
    if (!(hbar > 0)) throw std::invalid_argument("hbar must be > 0");
    GardingRow row;
    row.hbar = hbar;
    row.cutoff = garding_cutoff(hbar);
    row.lambda_min = quantized_lambda_min(symbol, hbar, row.cutoff, q);
    row.lambda_min_doubled = quantized_lambda_min(symbol, hbar, 2 * row.cutoff, q);
    row.stable = std::abs(row.lambda_min - row.lambda_min_doubled) <= kTruncationTolerance;
    r.max_ratio = std::max(r.max_ratio, std::abs(row.lambda_min / hbar));
    r.rows.push_back(row);
  }
  double num = 0, den = 0;
  for (const auto& row : r.rows) {
    if (!row.stable) continue;
    num += row.lambda_min * row.hbar;
    den += row.hbar * row.hbar;
    ++r.fitted_rows;
  }
  if (r.fitted_rows == 0) {
    r.slope = r.constant = r.fit_residual = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.slope = num / den;
  r.constant = std::max(0.0, -r.slope);
  double res = 0, norm = 0;
  for (const auto& row : r.rows) {
    if (!row.stable) continue;
    res += std::pow(row.lambda_min - r.slope * row.hbar, 2);
    norm += row.lambda_min * row.lambda_min;
  }
  r.fit_residual = norm > 0 ? std::sqrt(res / norm) : 0.0;
  return r;
}

TrigPolynomial garding_symbol(const GridPtr& single_mode, Complex z1, Complex z2) {
  if (single_mode->size() != 1) throw std::invalid_argument("symbol needs a single-mode grid");
  auto point = [&](Complex z) { return RadialFunction(single_mode, ComplexVector::Constant(1, z)); };
  TrigPolynomial p = TrigPolynomial::identity(single_mode, 0.0);
  p += TrigPolynomial::character(point(z1), 0.0);
  p += TrigPolynomial::character(point(z2), 0.0);
  return compose(adjoint(p), p);
}

}  // namespace vanhove
