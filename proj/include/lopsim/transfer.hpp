#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace lopsim {

using Complex = std::complex<double>;

// Max-norm tolerance for unitarity checks throughout the library.
inline constexpr double kUnitarityTol = 1e-10;

// Largest mode count handled by the dense representation.
inline constexpr int kMaxModes = 16;

struct UnitarityReport {
  double max_deviation = 0.0;  // max_ij |(U^dag U - I)_ij|
  double tolerance = 0.0;
  bool pass = false;
};

UnitarityReport validate_unitary(const Eigen::MatrixXcd& matrix,
                                 double tol = kUnitarityTol);

// A one- or two-mode passive element in matrix form, prior to embedding.
struct ElementMatrix {
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// Symmetric beam splitter
//
//   [ t  r ]        t = cos(theta) e^{i aux_phase}
//   [ r  t ]        r = i sin(theta) e^{i aux_phase}
//
// so |t|^2 + |r|^2 = 1 and conj(t) r + conj(r) t = 0: photon flux through the
// two ports is conserved whatever the splitting ratio. theta = 0 transmits
// fully, theta = pi/2 reflects fully, theta = pi/4 is balanced.
ElementMatrix make_beam_splitter(double theta, double aux_phase = 0.0);

// Single-mode phase shifter, the 1x1 matrix [e^{i phi}].
ElementMatrix make_phase(double phi);

// An M-mode transfer matrix: amplitudes propagate as out = U * in. Construction
// and composition enforce unitarity to kUnitarityTol and throw ValidationError
// on violation, so a held TransferMatrix is always energy conserving.
class TransferMatrix {
 public:
  explicit TransferMatrix(Eigen::MatrixXcd matrix);

  static TransferMatrix identity(int modes);

  int modes() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

// Places a 1- or 2-mode element onto the listed modes of an M-mode identity.
// modes.size() must equal element.dim(), indices must be distinct and within
// [0, total_modes).
TransferMatrix embed(const ElementMatrix& element, const std::vector<int>& modes,
                     int total_modes);

// Matrix product in application order: compose(later, earlier) acts as
// "earlier first, then later", i.e. later.matrix() * earlier.matrix().
TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier);

}  // namespace lopsim
