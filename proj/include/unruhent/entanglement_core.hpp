#pragma once

#include <array>

#include "unruhent/kg_algebra.hpp"
#include "unruhent/rindler_spectral.hpp"

namespace unruh {

// Quadrature order (x_A, p_A, x_B, p_B); vacuum is the identity.
using CovarianceMatrix4 = std::array<std::array<double, 4>, 4>;

struct UnruhNoise {
    double n_mean = 0;
};

double bose_einstein_occupation(double k, const PhysicalParams& p);

// sc must carry the detector's own region-I positive family, (w_Ik, psi_B) up to phase.
UnruhNoise unruh_noise(const SpectralCoefficients& psi_B_coeffs, const PhysicalParams& p);
UnruhNoise unruh_noise(const Spectrum& psi_B, const PhysicalParams& p);

CovarianceMatrix4 build_covariance(const OverlapSet& o, const UnruhNoise& noise, double s);
CovarianceMatrix4 ideal_covariance(double s);

// Delta of the partial transpose as printed in the negativity formula.
double negativity_delta(const CovarianceMatrix4& sigma);
double determinant(const CovarianceMatrix4& sigma);
// Smallest symplectic eigenvalue of the partial transpose.
double min_pt_symplectic_eigenvalue(const CovarianceMatrix4& sigma);
double log_negativity(const CovarianceMatrix4& sigma);
// Same quantity straight from the overlaps, evaluated in extended precision.
double log_negativity(const OverlapSet& o, const UnruhNoise& noise, double s);

struct PhysicalityResult {
    bool pass = false;
    double min_eigenvalue = 0;
};
PhysicalityResult physicality_check(const CovarianceMatrix4& sigma, double tol = 1e-9);

}  // namespace unruh
