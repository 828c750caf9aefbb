#pragma once

#include <random>
#include <string>
#include <vector>

#include "unruhent/kg_algebra.hpp"

namespace unruh {

// Minkowski families use the mode's own box nodes (signed k: k > 0 right-moving);
// Rindler families share one k grid for regions I and II.
struct SpectralCoefficients {
    double a = 0;
    double c = 1;
    bool has_minkowski = false;
    bool has_rindler = false;

    std::vector<double> k_mink;
    std::vector<cplx> mink_pos;  // (u_k, phi)
    std::vector<cplx> mink_neg;  // (u_k*, phi)

    std::vector<double> k_grid;
    std::vector<cplx> rindI_pos;   // (w_Ik, phi)
    std::vector<cplx> rindI_neg;   // (w_Ik*, phi)
    std::vector<cplx> rindII_pos;  // (w_IIk, phi), direct x < 0 quadrature
    std::vector<cplx> rindII_neg;  // (w_IIk*, phi)
    std::vector<cplx> rindII_pos_from_identity;  // -exp(pi k c^2/a) * rindI_neg
    RindlerGrid rgrid;
};

SpectralCoefficients decompose(const ModeFunction& mode, Chart family, const PhysicalParams& p, const GridSpec& g);

double minkowski_parseval(const SpectralCoefficients& sc);       // sum |mink_pos|^2
double minkowski_negative_weight(const SpectralCoefficients& sc); // sum |mink_neg|^2
double rindler_completeness(const SpectralCoefficients& sc);     // I+ - I- + II+ - II-
double horizon_leakage(const SpectralCoefficients& sc);          // sum |II+|^2 + |II-|^2

// How the region-I negative family is tied to the region-II positive family.
//  thermal: (w_Ik*, phi) = -exp(-pi k c^2/a) (w_IIk, phi)   (Unruh's combination w_I + e^{-pi nu} w_II*)
//  inverse: (w_Ik*, phi) = -exp(+pi k c^2/a) (w_IIk, phi)
enum class HorizonRelation { thermal, inverse };

// |rindI_neg + e^{s pi k c^2/a} rindII_pos| / max(|rindI_neg|, floor) per k.
std::vector<double> horizon_identity_residual(const SpectralCoefficients& sc, const PhysicalParams& p,
                                              HorizonRelation rel = HorizonRelation::thermal,
                                              double floor = 1e-300);

struct OptimizedMode {
    ModeFunction mode;
    double normalization = 0;  // |N|
};
OptimizedMode build_optimized_mode(const ModeFunction& phi_B, const PhysicalParams& p, const GridSpec& g);
// Same, from an existing decomposition (avoids recomputing the Rindler families).
OptimizedMode build_optimized_mode(const SpectralCoefficients& sc, const PhysicalParams& p);

double beta_estimate(const PhysicalParams& p);

// Overlaps of a region-I spectral detector with phi from its Rindler families.
cplx spectral_beta(const Spectrum& det, const SpectralCoefficients& sc);
cplx spectral_beta_prime(const Spectrum& det, const SpectralCoefficients& sc);

// Gaussian-envelope region-I packet with random centre in [-2Lt, 2Lt], width in
// [Lt/2, 2Lt] and carrier in [k_min_detector, 4N/Lt]; hard-filtered, unit norm.
Spectrum random_trial_mode(std::mt19937_64& rng, const PhysicalParams& p, const RindlerGrid& rg);

// Writes <prefix>_<family>.tsv tables with columns k re im.
void write_spectral_tables(const SpectralCoefficients& sc, const std::string& prefix);

}  // namespace unruh
