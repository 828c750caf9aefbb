#pragma once

#include "unruhent/entanglement_core.hpp"

namespace unruh {

// Symmetrized quadrature moments obtained by expanding the transformed detector
// operators in ladder operators and contracting pairwise against the vacuum.
CovarianceMatrix4 second_moment_oracle(const OverlapSet& o, double n_mean, double s);

}  // namespace unruh
