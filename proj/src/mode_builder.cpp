#include "unruhent/mode_builder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fft.hpp"

namespace unruh {

using detail::half_synthesis;

const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Minkowski: return "Minkowski";
        case Chart::RindlerI: return "RindlerI";
        case Chart::RindlerII: return "RindlerII";
    }
    return "?";
}

double BoxGrid::dk() const { return 2 * M_PI / width(); }

std::vector<double> BoxGrid::coords() const {
    std::vector<double> x(M);
    for (std::size_t j = 0; j < M; ++j) x[j] = coord(j);
    return x;
}

static int chart_sign(Chart c) { return c == Chart::RindlerII ? -1 : 1; }

BoxGrid minkowski_grid(const GridSpec& g, double x0) {
    return BoxGrid{x0 - g.x_extent, g.dx(), g.x_points};
}

RindlerGrid rindler_grid(const PhysicalParams& p, const GridSpec& g, double x0) {
    if (!(p.a > 0)) throw DomainError("Rindler chart requested at a = 0");
    const double a = p.a, c2 = p.c * p.c, L = p.L;
    const double reach = 0.95 * g.x_extent;
    const double Lt = conformal_length(p);
    const double floor_lo = c2 / a * std::log(1e-17 * a * L / c2);
    double lo = x0 - reach > 0 ? std::max(floor_lo, c2 / a * std::log(a * (x0 - reach) / c2)) : floor_lo;
    double hi = c2 / a * std::log(a * (x0 + reach) / c2);
    lo = std::min(lo, -10 * Lt);
    hi = std::max(hi, 10 * Lt);
    const double W = (hi - lo) * 1.02;

    const double N = p.n_char;
    const double kc_hi = std::min(g.k_cut(), (N + 16) / L);
    const double kloc = std::max({a * (x0 + 8 * L) / c2 * kc_hi, 3 * a * (x0 + reach) * p.kmin_state() / c2,
                                  (4 * N + 16) / Lt});
    const double ovs = 0.75 * (M_PI / g.dx()) / g.k_cut();
    std::size_t M = std::max<std::size_t>(64, next_pow2(W * kloc * ovs / M_PI));
    RindlerGrid rg;
    rg.a = a;
    rg.c = p.c;
    rg.grid = BoxGrid{lo, W / static_cast<double>(M), M};
    return rg;
}

RindlerGrid rindler_grid(const PhysicalParams& p, const GridSpec& g) {
    if (!(p.a > 0)) throw DomainError("Rindler chart requested at a = 0");
    return rindler_grid(p, g, p.c * p.c / p.a);
}

Spectrum gaussian_packet_spectrum(double w, double kappa, double u0, double c, double dk, double k_lo,
                                  double k_hi, std::size_t n_nodes) {
    Spectrum sp;
    sp.dk = dk;
    sp.center = u0;
    sp.first = static_cast<std::size_t>(std::max(0.0, std::ceil(k_lo / dk - 0.5)));
    for (std::size_t n = sp.first; n < n_nodes; ++n) {
        double k = (static_cast<double>(n) + 0.5) * dk;
        if (k > k_hi) break;
        double q = (k - kappa) * w;
        double ft = w * std::sqrt(M_PI) * std::exp(-q * q / 4);
        sp.coef.push_back(std::sqrt(dk) * (kappa + k) * c / std::sqrt(4 * M_PI * k * c) * ft);
    }
    return sp;
}

Spectrum low_frequency_filter(Spectrum sp, double k_min) {
    for (std::size_t j = 0; j < sp.coef.size(); ++j)
        if (sp.k(j) < k_min) sp.coef[j] = 0;
    return sp;
}

double spectral_norm2(const Spectrum& sp) {
    detail::KahanSum s;
    for (auto z : sp.coef) s.add(std::norm(z));
    return s.value();
}

Spectrum normalized(Spectrum sp) {
    double n2 = spectral_norm2(sp);
    if (!(n2 > 1e-24)) throw DomainError("degenerate mode: norm below 1e-12");
    double f = 1 / std::sqrt(n2);
    for (auto& z : sp.coef) z *= f;
    return sp;
}

ModeFunction mode_from_spectrum(Chart chart, const BoxGrid& grid, Spectrum sp, double a, double c) {
    const std::size_t M = grid.M;
    if (std::abs(sp.dk - grid.dk()) > 1e-12 * grid.dk())
        throw ConfigError("spectrum node spacing does not match the grid box");
    if (sp.first + sp.coef.size() > M / 2) throw ConfigError("spectrum exceeds the grid Nyquist range");
    const int s = chart_sign(chart);
    std::vector<cplx> C(M), D(M);
    for (std::size_t j = 0; j < sp.coef.size(); ++j) {
        double k = sp.k(j);
        cplx v = sp.coef[j] * std::sqrt(sp.dk / (4 * M_PI * k * c)) * std::polar(1.0, -s * k * sp.center);
        C[sp.first + j] = v;
        D[sp.first + j] = cplx(0, -k * c) * v;
    }
    ModeFunction m;
    m.chart = chart;
    m.a = a;
    m.c = c;
    m.grid = grid;
    m.coords = grid.coords();
    m.values = half_synthesis(grid, C, s);
    m.d_time = half_synthesis(grid, D, s);
    m.spectrum = std::move(sp);
    return m;
}

ModeFunction build_state_mode(const PhysicalParams& p, const GridSpec& g) {
    p.validate();
    g.validate(p);
    const double N = p.n_char;
    Spectrum sp = gaussian_packet_spectrum(p.L, N / p.L, 0, p.c, g.dk(), 0, g.k_cut(), g.k_points);
    sp = normalized(low_frequency_filter(std::move(sp), p.kmin_state()));
    ModeFunction m = mode_from_spectrum(Chart::Minkowski, minkowski_grid(g, 0), std::move(sp), 0, p.c);
    m.taper_core = 8 * p.L;
    m.taper_edge = 0.95 * g.x_extent;
    return m;
}

ModeFunction build_gaussian_detector_mode(const PhysicalParams& p, const GridSpec& g) {
    p.validate();
    g.validate(p);
    const double N = p.n_char;
    if (p.a == 0) {
        Spectrum sp = gaussian_packet_spectrum(p.L, N / p.L, 0, p.c, g.dk(), 0, g.k_cut(), g.k_points);
        sp = normalized(low_frequency_filter(std::move(sp), p.kmin_detector()));
        ModeFunction m = mode_from_spectrum(Chart::Minkowski, minkowski_grid(g, 0), std::move(sp), 0, p.c);
        m.taper_core = 8 * p.L;
        m.taper_edge = 0.95 * g.x_extent;
        return m;
    }
    RindlerGrid rg = rindler_grid(p, g);
    const double Lt = conformal_length(p);
    Spectrum sp = gaussian_packet_spectrum(Lt, N / Lt, 0, p.c, rg.grid.dk(), 0,
                                           std::numeric_limits<double>::infinity(), rg.grid.M / 2);
    sp = normalized(low_frequency_filter(std::move(sp), p.kmin_detector()));
    return mode_from_spectrum(Chart::RindlerI, rg.grid, std::move(sp), p.a, p.c);
}

ModeFunction translate_mode(const ModeFunction& m, double shift) {
    if (m.chart != Chart::Minkowski) throw ConfigError("translate_mode: mode must be on the Minkowski chart");
    if (!std::isfinite(shift)) throw ConfigError("translate_mode: non-finite shift");
    ModeFunction r = m;
    r.grid.lo += shift;
    for (auto& x : r.coords) x += shift;
    r.spectrum.center += shift;
    return r;
}

ModeFunction conjugate(const ModeFunction& m) {
    ModeFunction r = m;
    for (auto& v : r.values) v = std::conj(v);
    for (auto& v : r.d_time) v = std::conj(v);
    r.conjugated = !m.conjugated;
    return r;
}

ModeFunction scaled(const ModeFunction& m, cplx f) {
    ModeFunction r = m;
    for (auto& v : r.values) v *= f;
    for (auto& v : r.d_time) v *= f;
    cplx fs = m.conjugated ? std::conj(f) : f;
    for (auto& z : r.spectrum.coef) z *= fs;
    return r;
}

ModeFunction combine(cplx c1, const ModeFunction& f1, cplx c2, const ModeFunction& f2) {
    if (f1.chart != f2.chart || f1.grid.M != f2.grid.M || std::abs(f1.grid.lo - f2.grid.lo) > 1e-12 ||
        std::abs(f1.grid.h - f2.grid.h) > 1e-15)
        throw DomainError("combine: modes live on different grids");
    ModeFunction r = f1;
    for (std::size_t j = 0; j < r.values.size(); ++j) {
        r.values[j] = c1 * f1.values[j] + c2 * f2.values[j];
        r.d_time[j] = c1 * f1.d_time[j] + c2 * f2.d_time[j];
    }
    const auto &s1 = f1.spectrum, &s2 = f2.spectrum;
    bool same_layout = !s1.empty() && !s2.empty() && !f1.conjugated && !f2.conjugated &&
                       s1.first == s2.first && s1.coef.size() == s2.coef.size() && s1.center == s2.center;
    if (same_layout) {
        for (std::size_t j = 0; j < s1.coef.size(); ++j) r.spectrum.coef[j] = c1 * s1.coef[j] + c2 * s2.coef[j];
    } else {
        r.spectrum = Spectrum{};
    }
    r.taper_core = std::max(f1.taper_core, f2.taper_core);
    r.taper_edge = std::max(f1.taper_edge, f2.taper_edge);
    return r;
}

PlaneWaveBasis minkowski_basis(const GridSpec& g, double x0) {
    PlaneWaveBasis b;
    b.chart = Chart::Minkowski;
    b.grid = minkowski_grid(g, x0);
    b.box_length = b.grid.width();
    const double dk = g.dk();
    for (std::size_t n = 0; n < g.k_points; ++n) {
        double k = (static_cast<double>(n) + 0.5) * dk;
        if (k > g.k_cut()) break;
        b.k_grid.push_back(k);
    }
    return b;
}

PlaneWaveBasis rindler_basis(const RindlerGrid& rg, Chart chart) {
    if (chart == Chart::Minkowski) throw ConfigError("rindler_basis: Rindler chart expected");
    PlaneWaveBasis b;
    b.chart = chart;
    b.grid = rg.grid;
    b.a = rg.a;
    b.c = rg.c;
    b.box_length = rg.grid.width();
    for (std::size_t n = 0; n < rg.grid.M / 2; ++n) b.k_grid.push_back((static_cast<double>(n) + 0.5) * rg.grid.dk());
    return b;
}

ModeFunction sample_plane_wave(const PlaneWaveBasis& b, double k, const GridSpec& g) {
    (void)g;
    if (k == 0) throw DomainError("plane wave at k = 0 is not normalizable");
    const double dk = b.grid.dk();
    double idx = k / dk - 0.5;
    long n = std::lround(idx);
    if (n < 0 || std::abs(idx - static_cast<double>(n)) > 1e-9 || static_cast<std::size_t>(n) >= b.k_grid.size())
        throw ConfigError("sample_plane_wave: k is not a node of the basis");
    Spectrum sp;
    sp.dk = dk;
    sp.first = static_cast<std::size_t>(n);
    sp.coef = {1.0};
    return mode_from_spectrum(b.chart, b.grid, sp, b.a, b.c);
}

void evaluate_minkowski(const ModeFunction& m, const std::vector<double>& x, std::vector<cplx>& value,
                        std::vector<cplx>& dt) {
    if (m.chart != Chart::Minkowski) throw DomainError("evaluate_minkowski: Minkowski mode expected");
    value.assign(x.size(), 0);
    dt.assign(x.size(), 0);
    const Spectrum& sp = m.spectrum;
    const double X = 0.5 * m.grid.width();
    const double xc = 0.5 * (m.grid.lo + m.grid.lo + m.grid.width());
    const bool taper = m.taper_core > 0 && m.taper_edge > m.taper_core;
    const double xm = 0.5 * (m.taper_core + m.taper_edge), sig = (m.taper_edge - m.taper_core) / 13;
    const double c = m.c;

    if (sp.empty()) {
        // sample-only mode: Catmull-Rom interpolation on the grid
        const BoxGrid& g = m.grid;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double t = (x[i] - g.lo) / g.h;
            if (t < 1 || t > static_cast<double>(g.M) - 3) continue;
            auto j = static_cast<std::size_t>(t);
            double u = t - static_cast<double>(j);
            auto cr = [&](const std::vector<cplx>& f) {
                cplx p0 = f[j - 1], p1 = f[j], p2 = f[j + 1], p3 = f[j + 2];
                return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
            };
            value[i] = cr(m.values);
            dt[i] = cr(m.d_time);
        }
        return;
    }

    double cmax = 0;
    for (auto z : sp.coef) cmax = std::max(cmax, std::abs(z));
    std::size_t jlo = sp.coef.size(), jhi = 0;
    for (std::size_t j = 0; j < sp.coef.size(); ++j)
        if (std::abs(sp.coef[j]) > 1e-18 * cmax) {
            jlo = std::min(jlo, j);
            jhi = j + 1;
        }
    if (jlo >= jhi) return;
    std::vector<cplx> amp(jhi - jlo);
    std::vector<double> kk(jhi - jlo);
    for (std::size_t j = jlo; j < jhi; ++j) {
        kk[j - jlo] = sp.k(j);
        amp[j - jlo] = sp.coef[j] * std::sqrt(sp.dk / (4 * M_PI * kk[j - jlo] * c));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - xc) >= X) continue;
        const double u = x[i] - sp.center;
        double w = 1;
        if (taper) {
            w = 0.5 * std::erfc((std::abs(x[i] - xc) - xm) / sig);
            if (w < 1e-300) continue;
        }
        const cplx step = std::polar(1.0, sp.dk * u);
        cplx ph;
        cplx v = 0, d = 0;
        for (std::size_t j = 0; j < amp.size(); ++j) {
            if (j % 64 == 0) ph = std::polar(1.0, kk[j] * u);
            cplx t = amp[j] * ph;
            v += t;
            d += kk[j] * t;
            ph *= step;
        }
        d *= cplx(0, -c);
        if (m.conjugated) {
            v = std::conj(v);
            d = std::conj(d);
        }
        value[i] = w * v;
        dt[i] = w * d;
    }
}

ModeFunction to_rindler(const ModeFunction& m, const RindlerGrid& rg, Chart chart) {
    if (chart == Chart::Minkowski) throw DomainError("to_rindler: Rindler chart expected");
    const double a = rg.a, c2 = rg.c * rg.c, sgn = chart == Chart::RindlerII ? -1.0 : 1.0;
    ModeFunction r;
    r.chart = chart;
    r.a = a;
    r.c = rg.c;
    r.grid = rg.grid;
    r.coords = rg.grid.coords();
    std::vector<double> x(r.coords.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = sgn * c2 / a * std::exp(a * r.coords[j] / c2);
    evaluate_minkowski(m, x, r.values, r.d_time);
    for (std::size_t j = 0; j < x.size(); ++j) r.d_time[j] *= a * std::abs(x[j]) / c2;
    return r;
}

void write_mode_table(const ModeFunction& m, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + path);
    std::fprintf(f, "# chart=%s a=%.12g c=%.12g\n", chart_name(m.chart), m.a, m.c);
    std::fprintf(f, "coord re_value im_value re_dtime im_dtime\n");
    for (std::size_t j = 0; j < m.coords.size(); ++j)
        std::fprintf(f, "%.12g %.12g %.12g %.12g %.12g\n", m.coords[j], m.values[j].real(), m.values[j].imag(),
                     m.d_time[j].real(), m.d_time[j].imag());
    std::fclose(f);
}

}  // namespace unruh
