#include "lopsim/classical.hpp"

#include <stdexcept>

namespace lopsim {

CoherentField propagate_classical(const TransferMatrix& u, const CoherentField& in) {
  if (in.size() != u.modes())
    throw std::invalid_argument("propagate_classical: field has " +
                                std::to_string(in.size()) + " entries for " +
                                std::to_string(u.modes()) + " modes");
  if (!in.allFinite())
    throw std::invalid_argument("propagate_classical: field amplitudes must be finite");
  return u.matrix() * in;
}

Eigen::VectorXd intensities(const CoherentField& field) { return field.cwiseAbs2(); }

Eigen::VectorXd output_fractions(const TransferMatrix& u, const CoherentField& in) {
  if (in.size() == u.modes() && in.squaredNorm() == 0.0)
    throw std::invalid_argument("output_fractions: input field must be nonzero");
  const Eigen::VectorXd out = intensities(propagate_classical(u, in));
  return out / out.sum();
}

}  // namespace lopsim
