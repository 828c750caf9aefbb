#pragma once

#include "unruhent/mode_builder.hpp"

namespace unruh {

struct OverlapSet {
    cplx alpha = 1;
    cplx beta = 0;
    cplx beta_prime = 0;
};

// (f, g) = i * integral (conj(f) dg - g conj(df)) on the slice. Same-chart pairs are
// integrated on f's grid; a Minkowski/Rindler pair is integrated on the Rindler grid.
cplx kg_inner(const ModeFunction& f, const ModeFunction& g);

// beta = (psi_B, phi_B), beta' = (psi_B, conj(phi_B)).
OverlapSet compute_overlaps(const ModeFunction& psi_B, const ModeFunction& phi_B, cplx alpha);

ModeFunction kg_normalize(const ModeFunction& f);

}  // namespace unruh
