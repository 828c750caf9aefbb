#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "unruhent/kg_algebra.hpp"
#include "unruhent/rindler_spectral.hpp"

using namespace unruh;

namespace {
PhysicalParams params(int N, double aL = 0) {
    PhysicalParams p;
    p.n_char = N;
    return with_aL(p, aL);
}

// (u_k, f) for the raw Gaussian by brute-force trapezoid, no FFT involved.
cplx raw_projection(int N, double k) {
    const double L = 1, c = 1, h = 1e-3;
    cplx acc = 0;
    for (double x = -12; x <= 12; x += h) {
        cplx f = std::exp(-x * x / (L * L)) * std::polar(1.0, N * x / L);
        cplx dt = cplx(0, -N * c / L) * f;
        acc += std::polar(1.0, -k * x) * (cplx(0, 1) * dt + k * c * f) * h;
    }
    return acc / std::sqrt(4 * M_PI * k * c);
}
}  // namespace

TEST_CASE("state mode is unit norm and peaked at N/L") {
    auto p = params(100);
    auto g = default_grid(p);
    auto phi = build_state_mode(p, g);
    CHECK(std::abs(kg_inner(phi, phi) - 1.0) < 1e-6);
    auto sc = decompose(phi, Chart::Minkowski, p, g);
    auto it = std::max_element(sc.mink_pos.begin(), sc.mink_pos.end(),
                               [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    double kpk = sc.k_mink[static_cast<std::size_t>(it - sc.mink_pos.begin())];
    CHECK(std::abs(kpk - 100.0) <= g.dk());
    CHECK(minkowski_negative_weight(sc) < 1e-8);
}

TEST_CASE("state mode spectrum matches direct quadrature of the raw Gaussian") {
    auto p = params(6);
    auto g = default_grid(p);
    auto phi = build_state_mode(p, g);
    const auto& sp = phi.spectrum;
    // ratios remove the renormalization constant
    std::size_t ref = static_cast<std::size_t>(std::lround(6.0 / sp.dk - 0.5)) - sp.first;
    cplx r_ref = raw_projection(6, sp.k(ref));
    for (std::size_t j : {ref - 10, ref - 3, ref + 4, ref + 12}) {
        cplx want = raw_projection(6, sp.k(j)) / r_ref;
        cplx got = sp.coef[j] / sp.coef[ref];
        CHECK(std::abs(got - want) < 1e-9);
    }
}

TEST_CASE("low-frequency filter removes content below the cutoff and is idempotent") {
    auto p = params(6);
    auto g = default_grid(p);
    auto phi = build_state_mode(p, g);
    auto sc = decompose(phi, Chart::Minkowski, p, g);
    double below = 0, left = 0;
    for (std::size_t i = 0; i < sc.k_mink.size(); ++i) {
        if (sc.k_mink[i] < 0) left += std::norm(sc.mink_pos[i]);
        else if (sc.k_mink[i] < p.kmin_state()) below += std::norm(sc.mink_pos[i]);
    }
    CHECK(below < 1e-24);
    CHECK(left < 1e-24);

    Spectrum once = low_frequency_filter(phi.spectrum, 1.0);
    Spectrum twice = low_frequency_filter(once, 1.0);
    CHECK(once.coef == twice.coef);
}

TEST_CASE("inertial detector reproduces the state mode") {
    auto p = params(6);
    p.k_min_detector = p.kmin_state();
    auto g = default_grid(p);
    auto phi = build_state_mode(p, g);
    auto psi = build_gaussian_detector_mode(p, g);
    CHECK(psi.chart == Chart::Minkowski);
    double worst = 0;
    for (std::size_t j = 0; j < phi.values.size(); ++j) {
        worst = std::max(worst, std::abs(phi.values[j] - psi.values[j]));
        worst = std::max(worst, std::abs(phi.d_time[j] - psi.d_time[j]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("detector mode converges to the state mode as a -> 0") {
    auto p = params(6, 1e-4);
    auto g = default_grid(p);
    auto psi = build_gaussian_detector_mode(p, g);
    auto phi = build_state_mode(params(6), g);
    std::vector<cplx> v, d;
    evaluate_minkowski(phi, psi.coords, v, d);
    double worst = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (std::abs(psi.coords[j]) < 8) worst = std::max(worst, std::abs(v[j] - psi.values[j]));
    CHECK(worst < 1e-3);
}

TEST_CASE("accelerated detector envelope has the conformal width") {
    auto p = params(40, 2.0);
    auto g = default_grid(p);
    auto psi = build_gaussian_detector_mode(p, g);
    CHECK(psi.chart == Chart::RindlerI);
    CHECK(std::abs(kg_inner(psi, psi) - 1.0) < 1e-6);
    double m0 = 0, m2 = 0;
    for (std::size_t j = 0; j < psi.values.size(); ++j) {
        double w = std::norm(psi.values[j]), xi = psi.coords[j];
        m0 += w;
        m2 += w * xi * xi;
    }
    // |psi|^2 ~ exp(-2 xi^2 / Lt^2) has variance Lt^2 / 4; a high carrier keeps the
    // positive-frequency projection from reshaping the envelope
    double width = 2 * std::sqrt(m2 / m0);
    CHECK(width == doctest::Approx(std::asinh(1.0)).epsilon(1e-3));
}

TEST_CASE("translation is rigid and norm preserving") {
    auto p = params(6, 0.5);
    auto g = default_grid(p);
    auto phi = build_state_mode(p, g);
    auto same = translate_mode(phi, 0);
    CHECK(same.values == phi.values);
    auto t = translate_mode(phi, p.c * p.c / p.a);
    CHECK(std::abs(kg_inner(t, t) - kg_inner(phi, phi)) < 1e-12);
    auto it = std::max_element(t.values.begin(), t.values.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    CHECK(std::abs(t.coords[static_cast<std::size_t>(it - t.values.begin())] - 2.0) <= g.dx());
    CHECK_THROWS_AS(translate_mode(phi, NAN), ConfigError);
}

TEST_CASE("box plane waves are KG orthonormal") {
    auto p = params(6, 0.5);
    auto g = default_grid(p);
    auto b = minkowski_basis(g);
    auto w1 = sample_plane_wave(b, b.k_grid[3], g);
    auto w2 = sample_plane_wave(b, b.k_grid[40], g);
    CHECK(std::abs(kg_inner(w1, w1) - 1.0) < 1e-6);
    CHECK(std::abs(kg_inner(w1, w2)) < 1e-6);
    CHECK(std::abs(kg_inner(conjugate(w1), conjugate(w1)) + 1.0) < 1e-6);
    CHECK_THROWS_AS(sample_plane_wave(b, 0.0, g), DomainError);
    CHECK_THROWS_AS(sample_plane_wave(b, 0.3, g), ConfigError);

    auto rg = rindler_grid(p, g);
    for (Chart ch : {Chart::RindlerI, Chart::RindlerII}) {
        auto rb = rindler_basis(rg, ch);
        auto r1 = sample_plane_wave(rb, rb.k_grid[5], g);
        auto r2 = sample_plane_wave(rb, rb.k_grid[77], g);
        CHECK(std::abs(kg_inner(r1, r1) - 1.0) < 1e-6);
        CHECK(std::abs(kg_inner(r1, r2)) < 1e-6);
        CHECK(std::abs(kg_inner(conjugate(r2), conjugate(r2)) + 1.0) < 1e-6);
    }
}

TEST_CASE("mode table format") {
    auto p = params(6);
    auto g = default_grid(p);
    write_mode_table(build_state_mode(p, g), "mode_table_test.tsv");
    std::ifstream in("mode_table_test.tsv");
    std::string meta, header;
    std::getline(in, meta);
    std::getline(in, header);
    CHECK(meta.rfind("# chart=Minkowski", 0) == 0);
    CHECK(header == "coord re_value im_value re_dtime im_dtime");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == g.x_points);
}
