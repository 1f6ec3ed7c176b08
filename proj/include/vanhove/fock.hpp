#pragma once

#include <vector>

#include "vanhove/grid.hpp"
#include "vanhove/random.hpp"
#include "vanhove/sources.hpp"
#include "vanhove/weyl.hpp"

namespace vanhove {

using DenseOperator = Eigen::MatrixXcd;

/// One bosonic mode truncated at occupation N (dimension N + 1).
struct FockMode {
  double omega = 1.0;
  Complex coupling = 0.0;
  int cutoff = 60;
  double hbar = 1.0;
};

/// Cutoff large enough for the displaced ground state: 4|j|^2/(hbar w^2) + 20.
int adequate_cutoff(const FockMode& mode);
/// Throws std::invalid_argument for N < 2, omega <= 0, hbar <= 0 or an
/// inadequate cutoff.
void validate(const FockMode& mode);

struct Ladder {
  DenseOperator a, adag, number;
};

/// Unscaled number-basis matrices; a_hbar = sqrt(hbar) a.
Ladder build_ladder(int cutoff);

/// hbar w n + sqrt(hbar) (j a* + conj(j) a)
DenseOperator build_hamiltonian(const FockMode& mode);

/// exp(i pi phi_hbar(z)), phi_hbar(z) = sqrt(hbar)(z a* + conj(z) a). Built
/// from the eigendecomposition of phi_hbar(1) and the rotation
/// exp(i theta n) phi(|z|) exp(-i theta n) = phi(|z| e^{i theta}).
/// Requires pi^2 hbar |z|^2 <= N/4.
DenseOperator weyl_matrix(const FockMode& mode, Complex z);

/// Same, but several displacements share one eigendecomposition; only the
/// leading `rows` x `rows` block is formed (rows <= N + 1).
class WeylFactory {
 public:
  explicit WeylFactory(const FockMode& mode);
  DenseOperator block(Complex z, Eigen::Index rows) const;
  DenseOperator full(Complex z) const { return block(z, dim_); }
  /// exp(i pi s phi(1)) on the leading block, s >= 0
  DenseOperator radial_block(double s, Eigen::Index rows) const;
  /// exp(i theta n) m exp(-i theta n)
  static DenseOperator rotate(const DenseOperator& m, double theta);

 private:
  FockMode mode_;
  Eigen::Index dim_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd values_;
};

/// Lower half block size (N + 1) / 2 used for all matrix assertions.
Eigen::Index trusted_block(const FockMode& mode);
/// max-entry of W^dagger W - I on the trusted block
double unitarity_defect(const DenseOperator& w, Eigen::Index block);

/// Coherent vector W_hbar(g / (pi i hbar)) e_0 at g = -j/w.
Eigen::VectorXcd coherent_ground_vector(const FockMode& mode);

struct GroundStateReport {
  double energy = 0;           // min eigenvalue
  double expected_energy = 0;  // -|j|^2 / w
  double gap = 0;
  double overlap_sq = 0;       // with the coherent vector
  double number = 0;           // <dGamma_hbar(1)> in the ground state
  double expected_number = 0;  // |j/w|^2
};

GroundStateReport ground_state_analysis(const FockMode& mode);

/// One mode per grid node: w_m = w(r_m), j_m = J(r_m) sqrt(measure_m).
std::vector<FockMode> modes_from_source(const SourceSpec& spec, double hbar);

struct MultiModeReport {
  double energy = 0;           // sum of per-mode minimum eigenvalues
  double expected_energy = 0;  // -||J||^2_{1/w}
  double overlap_sq = 1;       // product of per-mode ground/coherent overlaps
  int modes = 0;
  int max_cutoff = 0;
};

/// Decoupled modes solved one at a time; no tensor products.
MultiModeReport multimode_ground_state(const SourceSpec& spec, double hbar);

struct SoftPhotonRow {
  int n = 0;
  double number = 0;  // ||J_n||^2_{1/w^2}
  double energy = 0;  // -||J_n||^2_{1/w}
};

struct SoftPhotonReport {
  std::vector<SoftPhotonRow> rows;
  double number_slope = 0;  // log-log slope of number vs n
  double energy_slope = 0;  // log-log slope of |energy| vs n
  /// slopes of successive increments; negative means convergence
  double number_increment_slope = 0;
  double energy_increment_slope = 0;
  bool number_diverges = false;
  bool energy_diverges = false;
};

/// Closed forms over the cutoff sequence n (increasing, 1/n inside the grid).
SoftPhotonReport soft_photon_sweep(const SourceSpec& spec, const std::vector<int>& n_list);

/// |<W(f) e_0, C(-j/w)>| from matrices and from
/// exp(-(pi^2 hbar/2)|f + j/(pi i hbar w)|^2).
struct OverlapSample {
  double matrix = 0;
  double closed_form = 0;
};
OverlapSample weak_vanishing_overlap(const FockMode& mode, Complex f);

struct LadderBoundReport {
  double annihilation = 0;  // max ||a(g)Psi|| / (|g|/sqrt(S) ||dGamma(S)^{1/2} Psi||)
  double creation = 0;      // max ||a*(g)Psi|| / (that + sqrt(hbar)|g| ||Psi||)
  int trials = 0;
};

/// Both ratios for one vector (its top two components must vanish).
LadderBoundReport ladder_bound_ratios(const FockMode& mode, double s, Complex g, const Eigen::VectorXcd& psi);

/// Random vectors with the top two components zero; S is a single positive
/// number on one mode.
LadderBoundReport ladder_bound_check(const FockMode& mode, double s, Complex g, int trials,
                                     SplitMix64& rng);

struct GardingRow {
  double hbar = 0;
  int cutoff = 0;
  double lambda_min = 0;
  double lambda_min_doubled = 0;  // same at twice the cutoff
  bool stable = false;            // the two agree to kTruncationTolerance
};

struct GardingReport {
  std::vector<GardingRow> rows;
  /// least-squares slope s of lambda_min ~ s hbar over the stable rows
  double slope = 0;
  /// C = max(0, -s): the fitted constant in lambda_min >= -C hbar
  double constant = 0;
  double fit_residual = 0;  // relative rms residual of that fit
  int fitted_rows = 0;
  double max_ratio = 0;     // max |lambda_min / hbar| over all rows
};

inline constexpr double kTruncationTolerance = 1e-8;

/// Cutoff for the probe at this hbar: max(64, ceil(1.2/hbar)) rounded up to even.
int garding_cutoff(double hbar);

/// Checks a classical single-mode symbol for pointwise nonnegativity on a
/// 100 x 100 sample of its period cell; throws std::invalid_argument if not.
void require_nonnegative_symbol(const TrigPolynomial& symbol);

enum class Quantization { Weyl, AntiWick };

/// Minimum eigenvalue of the quantized symbol on the trusted block, at the
/// probe cutoff and at twice that.
GardingReport garding_probe(const TrigPolynomial& symbol, const std::vector<double>& hbars,
                            Quantization q = Quantization::Weyl);

/// |1 + W_0(z1) + W_0(z2)|^2 expanded on a single-mode grid.
TrigPolynomial garding_symbol(const GridPtr& single_mode, Complex z1, Complex z2);

}  // namespace vanhove
