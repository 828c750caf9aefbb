#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "unruhent/parameters.hpp"

namespace unruh {

using cplx = std::complex<double>;

enum class Chart { Minkowski, RindlerI, RindlerII };
const char* chart_name(Chart c);

// Uniform grid lo + j*h, j < M. Its box is antiperiodic, so the spectral nodes
// are (n + 1/2) * dk with dk = 2*pi/(M*h).
struct BoxGrid {
    double lo = 0;
    double h = 0;
    std::size_t M = 0;
    double dk() const;
    double coord(std::size_t j) const { return lo + h * static_cast<double>(j); }
    double width() const { return h * static_cast<double>(M); }
    std::vector<double> coords() const;
};

// Positive-frequency right-moving content. coef[j] multiplies the box-normalized
// plane wave at k = (first + j + 1/2) * dk, phase-referenced to `center`.
struct Spectrum {
    double dk = 0;
    std::size_t first = 0;
    double center = 0;
    std::vector<cplx> coef;
    double k(std::size_t j) const { return (static_cast<double>(first + j) + 0.5) * dk; }
    bool empty() const { return coef.empty(); }
};

struct ModeFunction {
    Chart chart = Chart::Minkowski;
    double a = 0;  // chart acceleration (Rindler charts)
    double c = 1;
    BoxGrid grid;
    std::vector<double> coords;
    std::vector<cplx> values;
    std::vector<cplx> d_time;  // d/dt, or the future-directed d/dtau on Rindler charts
    Spectrum spectrum;         // may be empty for sample-only modes
    bool conjugated = false;   // spectrum describes conj(mode)
    // Minkowski modes: smooth roll-off from core to edge around the centre, zero beyond.
    double taper_core = 0;
    double taper_edge = 0;
};

struct PlaneWaveBasis {
    Chart chart = Chart::Minkowski;
    std::vector<double> k_grid;
    double box_length = 0;
    double a = 0;
    double c = 1;
    BoxGrid grid;
};

// Window of the Rindler charts: one xi-grid serves regions I and II.
struct RindlerGrid {
    double a = 0;
    double c = 1;
    BoxGrid grid;
};
RindlerGrid rindler_grid(const PhysicalParams& p, const GridSpec& g, double x_center);
RindlerGrid rindler_grid(const PhysicalParams& p, const GridSpec& g);  // centre c^2/a

// Box grid of a Minkowski mode centred at x0.
BoxGrid minkowski_grid(const GridSpec& g, double x0);

// Gaussian packet exp(-(u-u0)^2/w^2 + i*kappa*(u-u0)) with d/dt = -i*kappa*c, projected on
// right-moving positive-frequency nodes k >= k_lo (and k <= k_hi), unit KG norm.
Spectrum gaussian_packet_spectrum(double w, double kappa, double u0, double c, double dk,
                                  double k_lo, double k_hi, std::size_t n_nodes);

ModeFunction build_state_mode(const PhysicalParams& p, const GridSpec& g);
ModeFunction build_gaussian_detector_mode(const PhysicalParams& p, const GridSpec& g);
ModeFunction translate_mode(const ModeFunction& m, double shift);
ModeFunction conjugate(const ModeFunction& m);
ModeFunction scaled(const ModeFunction& m, cplx factor);
ModeFunction combine(cplx c1, const ModeFunction& f1, cplx c2, const ModeFunction& f2);

PlaneWaveBasis minkowski_basis(const GridSpec& g, double x0 = 0);
PlaneWaveBasis rindler_basis(const RindlerGrid& rg, Chart chart);
ModeFunction sample_plane_wave(const PlaneWaveBasis& b, double k, const GridSpec& g);

// Spectral mode sampled on its grid (synthesis); chart decides the sign of k*xi.
ModeFunction mode_from_spectrum(Chart chart, const BoxGrid& grid, Spectrum sp, double a, double c);

// Hard filter on the spectrum: zero every node with k < k_min.
Spectrum low_frequency_filter(Spectrum sp, double k_min);
double spectral_norm2(const Spectrum& sp);
Spectrum normalized(Spectrum sp);

// Value and d/dt of a Minkowski mode at arbitrary x, with the roll-off applied.
void evaluate_minkowski(const ModeFunction& m, const std::vector<double>& x,
                        std::vector<cplx>& value, std::vector<cplx>& dt);

// Minkowski mode pulled back onto a Rindler grid as a sample-only mode
// (value, and future-directed d/dtau = (a|x|/c^2) d/dt).
ModeFunction to_rindler(const ModeFunction& m, const RindlerGrid& rg, Chart chart);

// Plain-text table: coord re_value im_value re_dtime im_dtime
void write_mode_table(const ModeFunction& m, const std::string& path);

}  // namespace unruh
