#include "unruhent/rindler_spectral.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "fft.hpp"

namespace unruh {

using detail::half_analysis;
using detail::KahanSum;
using detail::KahanSumC;

namespace {

void minkowski_families(const ModeFunction& m, SpectralCoefficients& sc) {
    const BoxGrid& g = m.grid;
    const std::size_t M = g.M;
    const double dk = g.dk(), c = m.c;
    auto F = half_analysis(g, m.values, +1);
    auto G = half_analysis(g, m.d_time, +1);
    sc.k_mink.clear();
    sc.mink_pos.clear();
    sc.mink_neg.clear();
    const cplx I(0, 1);
    for (std::size_t i = 0; i < M; ++i) {
        std::size_t n = (i + M / 2) % M;  // ascending signed k
        std::size_t r = M - 1 - n;        // node at -k
        double k = detail::signed_node(n, M, dk), ak = std::abs(k);
        double nrm = std::sqrt(dk / (4 * M_PI * ak * c));
        sc.k_mink.push_back(k);
        sc.mink_pos.push_back(nrm * (I * G[n] + ak * c * F[n]));
        sc.mink_neg.push_back(nrm * (I * G[r] - ak * c * F[r]));
    }
    sc.has_minkowski = true;
}

void rindler_families(const ModeFunction& m, const PhysicalParams& p, const GridSpec& gs, SpectralCoefficients& sc) {
    if (!(p.a > 0)) throw DomainError("decompose: Rindler families need a > 0");
    const double x0 = m.grid.lo + 0.5 * m.grid.width();
    RindlerGrid rg = rindler_grid(p, gs, x0);
    const BoxGrid& g = rg.grid;
    const std::size_t M = g.M, K = M / 2;
    const double a = p.a, c = p.c, c2 = c * c, dk = g.dk();
    auto xi = g.coords();

    std::vector<double> x(M);
    std::vector<cplx> v, d;
    for (std::size_t j = 0; j < M; ++j) x[j] = c2 / a * std::exp(a * xi[j] / c2);
    evaluate_minkowski(m, x, v, d);
    for (std::size_t j = 0; j < M; ++j) d[j] *= a * x[j] / c2;
    auto Fp = half_analysis(g, d, +1);
    auto Fm = half_analysis(g, d, -1);

    std::vector<cplx> Fp2(M), Fm2(M);
    const bool behind = m.grid.lo < 0;
    if (behind) {
        for (std::size_t j = 0; j < M; ++j) x[j] = -x[j];
        evaluate_minkowski(m, x, v, d);
        for (std::size_t j = 0; j < M; ++j) d[j] *= a * std::abs(x[j]) / c2;
        Fp2 = half_analysis(g, d, +1);
        Fm2 = half_analysis(g, d, -1);
    }

    sc.rgrid = rg;
    sc.a = a;
    sc.c = c;
    sc.k_grid.resize(K);
    sc.rindI_pos.resize(K);
    sc.rindI_neg.resize(K);
    sc.rindII_pos.resize(K);
    sc.rindII_neg.resize(K);
    sc.rindII_pos_from_identity.resize(K);
    for (std::size_t n = 0; n < K; ++n) {
        double k = (static_cast<double>(n) + 0.5) * dk;
        cplx nrm = cplx(0, 2) * std::sqrt(dk / (4 * M_PI * k * c));
        sc.k_grid[n] = k;
        sc.rindI_pos[n] = nrm * Fp[n];
        sc.rindI_neg[n] = nrm * Fm[n];
        sc.rindII_pos[n] = nrm * Fm2[n];
        sc.rindII_neg[n] = nrm * Fp2[n];
        double e = M_PI * k * c2 / a;
        sc.rindII_pos_from_identity[n] = sc.rindI_neg[n] == 0.0 ? cplx(0) : -std::exp(e) * sc.rindI_neg[n];
    }
    sc.has_rindler = true;
}

// Region-I mode decomposed on its own grid by full KG quadrature.
void own_region_I(const ModeFunction& m, SpectralCoefficients& sc) {
    const BoxGrid& g = m.grid;
    const std::size_t M = g.M, K = M / 2;
    const double dk = g.dk(), c = m.c;
    auto F = half_analysis(g, m.values, +1);
    auto G = half_analysis(g, m.d_time, +1);
    const cplx I(0, 1);
    sc.a = m.a;
    sc.c = c;
    sc.rgrid = RindlerGrid{m.a, c, g};
    sc.k_grid.resize(K);
    sc.rindI_pos.resize(K);
    sc.rindI_neg.resize(K);
    sc.rindII_pos.assign(K, 0);
    sc.rindII_neg.assign(K, 0);
    sc.rindII_pos_from_identity.assign(K, 0);
    for (std::size_t n = 0; n < K; ++n) {
        double k = (static_cast<double>(n) + 0.5) * dk;
        double nrm = std::sqrt(dk / (4 * M_PI * k * c));
        std::size_t r = M - 1 - n;
        sc.k_grid[n] = k;
        sc.rindI_pos[n] = nrm * (I * G[n] + k * c * F[n]);
        sc.rindI_neg[n] = nrm * (I * G[r] - k * c * F[r]);
    }
    sc.has_rindler = true;
}

double sum_norm(const std::vector<cplx>& v) {
    KahanSum s;
    for (auto z : v) s.add(std::norm(z));
    return s.value();
}

}  // namespace

SpectralCoefficients decompose(const ModeFunction& mode, Chart family, const PhysicalParams& p, const GridSpec& g) {
    SpectralCoefficients sc;
    if (mode.chart == Chart::RindlerI && family == Chart::RindlerI) {
        own_region_I(mode, sc);
        return sc;
    }
    if (mode.chart != Chart::Minkowski) throw DomainError("decompose: mode must be on the Minkowski chart");
    sc.c = p.c;
    if (family == Chart::Minkowski) minkowski_families(mode, sc);
    else rindler_families(mode, p, g, sc);
    return sc;
}

double minkowski_parseval(const SpectralCoefficients& sc) { return sum_norm(sc.mink_pos); }
double minkowski_negative_weight(const SpectralCoefficients& sc) { return sum_norm(sc.mink_neg); }

double rindler_completeness(const SpectralCoefficients& sc) {
    KahanSum s;
    for (std::size_t n = 0; n < sc.k_grid.size(); ++n) {
        s.add(std::norm(sc.rindI_pos[n]));
        s.add(-std::norm(sc.rindI_neg[n]));
        s.add(std::norm(sc.rindII_pos[n]));
        s.add(-std::norm(sc.rindII_neg[n]));
    }
    return s.value();
}

double horizon_leakage(const SpectralCoefficients& sc) { return sum_norm(sc.rindII_pos) + sum_norm(sc.rindII_neg); }

std::vector<double> horizon_identity_residual(const SpectralCoefficients& sc, const PhysicalParams& p,
                                              HorizonRelation rel, double floor) {
    std::vector<double> r(sc.k_grid.size());
    const double sgn = rel == HorizonRelation::thermal ? -1.0 : 1.0;
    for (std::size_t n = 0; n < r.size(); ++n) {
        double e = sgn * M_PI * sc.k_grid[n] * p.c * p.c / p.a;
        r[n] = std::abs(sc.rindI_neg[n] + std::exp(e) * sc.rindII_pos[n]) /
               std::max(std::abs(sc.rindI_neg[n]), floor);
    }
    return r;
}

OptimizedMode build_optimized_mode(const SpectralCoefficients& sc, const PhysicalParams& p) {
    if (!sc.has_rindler) throw DomainError("build_optimized_mode: region-I family missing");
    Spectrum sp;
    sp.dk = sc.rgrid.grid.dk();
    sp.coef.assign(sc.k_grid.size(), 0);
    for (std::size_t n = 0; n < sc.k_grid.size(); ++n)
        if (sc.k_grid[n] >= p.kmin_detector()) sp.coef[n] = sc.rindI_pos[n];
    double n2 = spectral_norm2(sp);
    if (!(n2 >= 1e-12)) throw DomainError("build_optimized_mode: mode is essentially behind the horizon");
    OptimizedMode out;
    out.normalization = 1 / std::sqrt(n2);
    for (auto& z : sp.coef) z *= out.normalization;
    out.mode = mode_from_spectrum(Chart::RindlerI, sc.rgrid.grid, std::move(sp), p.a, p.c);
    return out;
}

OptimizedMode build_optimized_mode(const ModeFunction& phi_B, const PhysicalParams& p, const GridSpec& g) {
    if (!(p.a > 0)) throw DomainError("build_optimized_mode: a > 0 required");
    return build_optimized_mode(decompose(phi_B, Chart::RindlerI, p, g), p);
}

double beta_estimate(const PhysicalParams& p) {
    double q = p.n_char * p.a * p.L / (4 * p.c * p.c);
    return std::pow(1 + q * q, -0.25);
}

static void check_layout(const Spectrum& det, const SpectralCoefficients& sc) {
    if (!sc.has_rindler) throw DomainError("spectral overlap: region-I family missing");
    if (std::abs(det.dk - sc.rgrid.grid.dk()) > 1e-12 * det.dk || det.first + det.coef.size() > sc.k_grid.size())
        throw DomainError("spectral overlap: detector and decomposition use different k grids");
}

cplx spectral_beta(const Spectrum& det, const SpectralCoefficients& sc) {
    check_layout(det, sc);
    KahanSumC acc;
    for (std::size_t j = 0; j < det.coef.size(); ++j) {
        double k = det.k(j);
        acc.add(std::conj(det.coef[j]) * std::polar(1.0, k * det.center) * sc.rindI_pos[det.first + j]);
    }
    return acc.value();
}

cplx spectral_beta_prime(const Spectrum& det, const SpectralCoefficients& sc) {
    check_layout(det, sc);
    KahanSumC acc;
    for (std::size_t j = 0; j < det.coef.size(); ++j) {
        double k = det.k(j);
        acc.add(std::conj(det.coef[j]) * std::polar(1.0, k * det.center) * std::conj(sc.rindI_neg[det.first + j]));
    }
    return -acc.value();
}

Spectrum random_trial_mode(std::mt19937_64& rng, const PhysicalParams& p, const RindlerGrid& rg) {
    const double Lt = conformal_length(p);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double centre = Lt * (4 * u(rng) - 2);
    double width = Lt * (0.5 + 1.5 * u(rng));
    double kmin = p.kmin_detector(), kmax = 4 * p.n_char / Lt;
    double carrier = kmin + (kmax - kmin) * u(rng);
    Spectrum sp = gaussian_packet_spectrum(width, carrier, centre, p.c, rg.grid.dk(), 0,
                                           std::numeric_limits<double>::infinity(), rg.grid.M / 2);
    return normalized(low_frequency_filter(std::move(sp), kmin));
}

static void write_family(const std::string& path, const std::vector<double>& k, const std::vector<cplx>& v) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, "k re im\n");
    for (std::size_t n = 0; n < k.size(); ++n) std::fprintf(f, "%.12g %.12g %.12g\n", k[n], v[n].real(), v[n].imag());
    std::fclose(f);
}

void write_spectral_tables(const SpectralCoefficients& sc, const std::string& prefix) {
    if (sc.has_minkowski) {
        write_family(prefix + "_mink_pos.tsv", sc.k_mink, sc.mink_pos);
        write_family(prefix + "_mink_neg.tsv", sc.k_mink, sc.mink_neg);
    }
    if (sc.has_rindler) {
        write_family(prefix + "_rindI_pos.tsv", sc.k_grid, sc.rindI_pos);
        write_family(prefix + "_rindI_neg.tsv", sc.k_grid, sc.rindI_neg);
        write_family(prefix + "_rindII_pos.tsv", sc.k_grid, sc.rindII_pos);
        write_family(prefix + "_rindII_neg.tsv", sc.k_grid, sc.rindII_neg);
    }
}

}  // namespace unruh
