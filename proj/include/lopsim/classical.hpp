#pragma once

#include "lopsim/transfer.hpp"

namespace lopsim {

// Complex mode amplitudes. The same vector type serves as the classical field
// and as the coherent-state amplitude vector; both propagate as out = U * in.
using CoherentField = Eigen::VectorXcd;

// out = u * in; entries must be finite and sized to the mode count.
CoherentField propagate_classical(const TransferMatrix& u, const CoherentField& in);

// Per-mode intensity |amplitude|^2.
Eigen::VectorXd intensities(const CoherentField& field);

// Output intensities normalized to total 1. Requires a nonzero input field.
Eigen::VectorXd output_fractions(const TransferMatrix& u, const CoherentField& in);

}  // namespace lopsim
