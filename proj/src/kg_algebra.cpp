#include "unruhent/kg_algebra.hpp"

#include <cmath>

#include "fft.hpp"

namespace unruh {

namespace {

cplx same_grid_inner(const std::vector<cplx>& fv, const std::vector<cplx>& fd, const std::vector<cplx>& gv,
                     const std::vector<cplx>& gd, double h) {
    detail::KahanSumC acc;
    for (std::size_t j = 0; j < fv.size(); ++j) acc.add(std::conj(fv[j]) * gd[j] - gv[j] * std::conj(fd[j]));
    return cplx(0, 1) * h * acc.value();
}

bool same_grid(const BoxGrid& a, const BoxGrid& b) {
    return a.M == b.M && std::abs(a.lo - b.lo) <= 1e-12 * (1 + std::abs(a.lo)) &&
           std::abs(a.h - b.h) <= 1e-12 * a.h;
}

// Minkowski mode m seen on the Rindler grid of r: value and future-directed d/dtau.
void pull_back(const ModeFunction& m, const ModeFunction& r, std::vector<cplx>& v, std::vector<cplx>& d) {
    const double a = r.a, c2 = r.c * r.c;
    const double sgn = r.chart == Chart::RindlerII ? -1.0 : 1.0;
    std::vector<double> x(r.coords.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = sgn * c2 / a * std::exp(a * r.coords[j] / c2);
    evaluate_minkowski(m, x, v, d);
    for (std::size_t j = 0; j < x.size(); ++j) d[j] *= a * std::abs(x[j]) / c2;
}

}  // namespace

cplx kg_inner(const ModeFunction& f, const ModeFunction& g) {
    if (f.chart == g.chart) {
        if (f.chart != Chart::Minkowski && f.a != g.a)
            throw DomainError("kg_inner: Rindler charts with different accelerations");
        if (same_grid(f.grid, g.grid)) return same_grid_inner(f.values, f.d_time, g.values, g.d_time, f.grid.h);
        if (f.chart != Chart::Minkowski) throw DomainError("kg_inner: incompatible Rindler grids");
        double f_lo = f.grid.lo, f_hi = f.grid.lo + f.grid.width();
        double g_lo = g.grid.lo, g_hi = g.grid.lo + g.grid.width();
        if (f_hi <= g_lo || g_hi <= f_lo) throw DomainError("kg_inner: supports do not overlap");
        std::vector<cplx> gv, gd;
        evaluate_minkowski(g, f.coords, gv, gd);
        return same_grid_inner(f.values, f.d_time, gv, gd, f.grid.h);
    }
    if (f.chart != Chart::Minkowski && g.chart != Chart::Minkowski)
        throw DomainError("kg_inner: regions I and II are causally disjoint charts");
    if (f.chart == Chart::Minkowski) return std::conj(kg_inner(g, f));
    if (!(f.a > 0)) throw DomainError("kg_inner: Rindler chart with a = 0");
    std::vector<cplx> gv, gd;
    pull_back(g, f, gv, gd);
    return same_grid_inner(f.values, f.d_time, gv, gd, f.grid.h);
}

OverlapSet compute_overlaps(const ModeFunction& psi_B, const ModeFunction& phi_B, cplx alpha) {
    OverlapSet o;
    o.alpha = alpha;
    o.beta = kg_inner(psi_B, phi_B);
    o.beta_prime = kg_inner(psi_B, conjugate(phi_B));
    return o;
}

ModeFunction kg_normalize(const ModeFunction& f) {
    double n = kg_inner(f, f).real();
    if (!(n >= 1e-12)) throw DomainError("kg_normalize: non-positive or vanishing norm");
    return scaled(f, 1 / std::sqrt(n));
}

}  // namespace unruh
