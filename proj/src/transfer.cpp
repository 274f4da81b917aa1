#include "lopsim/transfer.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "lopsim/errors.hpp"
#include "lopsim/text.hpp"

namespace lopsim {
namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

UnitarityReport validate_unitary(const Eigen::MatrixXcd& matrix, double tol) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols())
    throw std::invalid_argument("validate_unitary: matrix must be square and nonempty");
  Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
  gram -= Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
  UnitarityReport report;
  report.max_deviation = gram.cwiseAbs().maxCoeff();
  report.tolerance = tol;
  report.pass = report.max_deviation <= tol;
  return report;
}

ElementMatrix make_beam_splitter(double theta, double aux_phase) {
  require_finite(theta, "theta");
  require_finite(aux_phase, "aux_phase");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Complex t, r;
  if (aux_phase == 0.0) {
    // Keep t real and r purely imaginary, so conj(t) r + conj(r) t is an
    // exact floating-point zero.
    t = Complex(c, 0.0);
    r = Complex(0.0, s);
  } else {
    const Complex w = std::polar(1.0, aux_phase);
    const Complex sw = s * w;
    t = c * w;
    r = Complex(-sw.imag(), sw.real());  // i * s * w
  }
  ElementMatrix element;
  element.matrix.resize(2, 2);
  element.matrix << t, r, r, t;
  return element;
}

ElementMatrix make_phase(double phi) {
  require_finite(phi, "phi");
  ElementMatrix element;
  element.matrix.resize(1, 1);
  element.matrix(0, 0) = std::polar(1.0, phi);
  return element;
}

TransferMatrix::TransferMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("transfer matrix must be square and nonempty");
  if (matrix_.rows() > kMaxModes)
    throw std::invalid_argument("transfer matrix exceeds " +
                                std::to_string(kMaxModes) + " modes");
  const UnitarityReport report = validate_unitary(matrix_, kUnitarityTol);
  if (!report.pass)
    throw ValidationError("transfer matrix is not unitary: |U^H U - I| reaches " +
                          format_double(report.max_deviation));
}

TransferMatrix TransferMatrix::identity(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  return TransferMatrix(Eigen::MatrixXcd::Identity(modes, modes));
}

TransferMatrix embed(const ElementMatrix& element, const std::vector<int>& modes,
                     int total_modes) {
  if (total_modes < 1)
    throw std::invalid_argument("embed: total mode count must be positive");
  if (static_cast<int>(modes.size()) != element.dim())
    throw std::invalid_argument("embed: need one target mode per element port");
  for (int m : modes) {
    if (m < 0 || m >= total_modes)
      throw std::invalid_argument("embed: mode index " + std::to_string(m) +
                                  " out of range");
  }
  if (modes.size() == 2 && modes[0] == modes[1])
    throw std::invalid_argument("embed: repeated mode index " +
                                std::to_string(modes[0]));

  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(total_modes, total_modes);
  for (int i = 0; i < element.dim(); ++i)
    for (int j = 0; j < element.dim(); ++j)
      full(modes[i], modes[j]) = element.matrix(i, j);
  return TransferMatrix(std::move(full));
}

TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier) {
  if (later.modes() != earlier.modes())
    throw std::invalid_argument("compose: mode count mismatch (" +
                                std::to_string(later.modes()) + " vs " +
                                std::to_string(earlier.modes()) + ")");
  return TransferMatrix(later.matrix() * earlier.matrix());
}

}  // namespace lopsim
