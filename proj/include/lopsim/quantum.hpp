#pragma once

#include <map>
#include <vector>

#include "lopsim/classical.hpp"
#include "lopsim/transfer.hpp"

namespace lopsim {

// Photon counts per mode, e.g. {1, 1} for one photon in each of two modes.
using FockOccupation = std::vector<int>;

// Photon budget for exact Fock evolution (permanent-based).
inline constexpr int kMaxFockPhotons = 6;
// Photon/mode budget for the brute-force cross-check.
inline constexpr int kMaxBruteforcePhotons = 4;
inline constexpr int kMaxBruteforceModes = 6;
// Largest matrix accepted by permanent().
inline constexpr int kMaxPermanentDim = 20;
// Default truncation for single-mode operator work.
inline constexpr int kDefaultCutoff = 40;

// A pure state in the photon-number basis, restricted to one total-photon
// sector (passive circuits conserve photon number). Stored sparsely; the
// amplitude of any occupation not present is zero. Map ordering makes
// iteration (and hence any serialized output) deterministic.
class FockBasisVector {
 public:
  FockBasisVector(int modes, int total_photons);

  int modes() const { return modes_; }
  int total_photons() const { return total_photons_; }
  bool is_normalized() const { return normalized_; }

  // occ must have modes() entries, all >= 0, summing to total_photons().
  void set_amplitude(const FockOccupation& occ, Complex amplitude);
  void add_amplitude(const FockOccupation& occ, Complex amplitude);
  Complex amplitude(const FockOccupation& occ) const;

  double norm_sq() const;
  const std::map<FockOccupation, Complex>& terms() const { return terms_; }
  std::map<FockOccupation, double> probabilities() const;

  // Asserts |norm_sq - 1| <= tol (ValidationError otherwise) and flags the
  // state so downstream consumers may treat amplitudes as probabilities.
  void mark_normalized(double tol = kUnitarityTol);

 private:
  void check_occupation(const FockOccupation& occ) const;

  int modes_;
  int total_photons_;
  bool normalized_ = false;
  std::map<FockOccupation, Complex> terms_;
};

// Single-mode operator on the truncated number basis {|0>, ..., |cutoff>}.
struct TruncatedModeOperator {
  int cutoff = 0;
  Eigen::MatrixXcd matrix;  // (cutoff + 1) x (cutoff + 1)
};

struct PoissonDistribution {
  std::vector<double> probability;  // P(0) ... P(n_max)
  double tail_mass = 0.0;           // 1 - sum(probability)
};

struct DisplacedAnnihilation {
  TruncatedModeOperator op;     // D(alpha)^dag a D(alpha) on the truncated basis
  double tail_mass = 0.0;       // coherent-state mass beyond the cutoff
  bool cutoff_adequate = true;  // tail_mass <= 1e-12
};

// Coherent amplitudes transform exactly like classical field amplitudes;
// this is the same computation as propagate_classical, re-exported so both
// semantics visibly share one code path.
CoherentField propagate_coherent(const TransferMatrix& u, const CoherentField& alphas);

// Photon-number statistics of |alpha>: P(n) = e^{-|alpha|^2} |alpha|^{2n} / n!.
PoissonDistribution poisson_number_distribution(Complex alpha, int n_max);

// Detection probabilities for one photon injected into in_mode: entry i is
// |U_{i,in_mode}|^2.
Eigen::VectorXd single_photon_distribution(const TransferMatrix& u, int in_mode);

// Matrix permanent, Ryser's formula with Gray-code subset updates, O(2^n n).
// Accepts any square complex matrix up to kMaxPermanentDim; per(empty) = 1.
Complex permanent(const Eigen::MatrixXcd& a);

// Exact evolution of the occupation |in> through u. A creation operator on
// input mode j maps to sum_i U_{ij} b_i^dag, so the output amplitude on
// occupation m is per(U[m|n]) / sqrt(prod m_i! prod n_j!) with column j of u
// repeated n_j times and row i repeated m_i times. Enumerates the full
// photon-number sector (zeros included). Budget: total photons <=
// kMaxFockPhotons, modes <= kMaxModes.
FockBasisVector fock_evolve(const TransferMatrix& u, const FockOccupation& in);

// Independent oracle for fock_evolve: multiplies out prod_j (sum_i U_{ij}
// b_i^dag)^{n_j} symbolically, monomial by monomial. Exponential cost; budget
// kMaxBruteforcePhotons photons on kMaxBruteforceModes modes.
FockBasisVector fock_evolve_bruteforce(const TransferMatrix& u, const FockOccupation& in);

// Two-photon sector of the product coherent state |alpha1>|alpha2>, with the
// overall Poisson prefactor dropped:
//
//   alpha1^2/sqrt(2) |2,0> + alpha1 alpha2 |1,1> + alpha2^2/sqrt(2) |0,2>
//
// Exactly zero components are omitted. Not normalized.
FockBasisVector two_photon_component_coherent(Complex alpha1, Complex alpha2);

// Coefficient of the |1,1> coincidence term after a (t, r) beam splitter acts
// on coherent inputs (alpha1, alpha2):
//
//   (alpha1 t + alpha2 r)(alpha1 r + alpha2 t)
//
// i.e. the product of the two output-port amplitudes. It vanishes iff an
// output port is dark. (t, r) must satisfy the beam-splitter constraints
// |t|^2 + |r|^2 = 1 and conj(t) r + conj(r) t = 0 to kUnitarityTol.
Complex coincidence_coefficient(Complex t, Complex r, Complex alpha1, Complex alpha2);

// <n-1| a |n> = sqrt(n) on the truncated basis.
Eigen::MatrixXcd annihilation_matrix(int cutoff);

// D(alpha) = exp(alpha a^dag - conj(alpha) a), via scaling-and-squaring on a
// truncated-Taylor exponential.
Eigen::MatrixXcd displacement_matrix(Complex alpha, int cutoff);

// D^dag a D, evaluated in a doubled working space and compressed back to the
// requested cutoff so the result matches a + alpha 1 to machine precision on
// the low-lying block. Guidance: cutoff >= 8 (1 + |alpha|^2) keeps the
// reported coherent-state tail mass negligible; cutoff_adequate reports the
// tail <= 1e-12 check.
DisplacedAnnihilation displaced_annihilation(Complex alpha, int cutoff = kDefaultCutoff);

}  // namespace lopsim
