#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "unruhent/rindler_spectral.hpp"
#include "unruhent/sweep.hpp"

using namespace unruh;

namespace {
PhysicalParams params(int N, double aL = 0) {
    PhysicalParams p;
    p.n_char = N;
    return with_aL(p, aL);
}

ModeFunction placed_state(const PhysicalParams& p, const GridSpec& g) {
    return translate_mode(build_state_mode(p, g), p.c * p.c / p.a);
}

// 2i * integral over x < 0 of conj(phi) dphi/dt, by plain midpoint quadrature.
double region_two_charge(const ModeFunction& phi) {
    const double lo = phi.grid.lo, h = 2e-4;
    std::vector<double> x;
    for (double t = lo + 0.5 * h; t < 0; t += h) x.push_back(t);
    std::vector<cplx> v, dt;
    evaluate_minkowski(phi, x, v, dt);
    cplx acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(v[i]) * dt[i];
    return (cplx(0, 2) * acc * h).real();
}
}  // namespace

TEST_CASE("a plane wave decomposes onto its own node") {
    auto p = params(6);
    auto g = default_grid(p);
    auto b = minkowski_basis(g);
    double k = g.dk() * 12.5;
    auto sc = decompose(sample_plane_wave(b, k, g), Chart::Minkowski, p, g);
    for (std::size_t n = 0; n < sc.k_mink.size(); ++n) {
        double want = std::abs(sc.k_mink[n] - k) < 1e-9 ? 1.0 : 0.0;
        CHECK(std::abs(sc.mink_pos[n] - want) < 1e-9);
        CHECK(std::abs(sc.mink_neg[n]) < 1e-9);
    }

    auto q = params(6, 0.5);
    auto rg = rindler_grid(q, g);
    double kr = rg.grid.dk() * 20.5;
    auto sr = decompose(sample_plane_wave(rindler_basis(rg, Chart::RindlerI), kr, g), Chart::RindlerI, q, g);
    for (std::size_t n = 0; n < sr.k_grid.size(); ++n) {
        double want = std::abs(sr.k_grid[n] - kr) < 1e-9 ? 1.0 : 0.0;
        CHECK(std::abs(sr.rindI_pos[n] - want) < 1e-9);
    }
}

TEST_CASE("Minkowski Parseval") {
    for (int N : {6, 100}) {
        auto p = params(N);
        auto g = default_grid(p);
        auto sc = decompose(build_state_mode(p, g), Chart::Minkowski, p, g);
        CHECK(std::abs(minkowski_parseval(sc) - 1) < 1e-6);
        CHECK(minkowski_negative_weight(sc) < 1e-10);
    }
}

TEST_CASE("Rindler completeness and leakage across the horizon") {
    auto small = params(6, 0.5);
    auto gs = default_grid(small);
    auto phs = placed_state(small, gs);
    auto ss = decompose(phs, Chart::RindlerI, small, gs);
    CHECK(std::abs(rindler_completeness(ss) - 1) < 1e-3);
    CHECK(horizon_leakage(ss) < 1e-3);

    auto big = params(6, 2.0);
    auto gb = default_grid(big);
    auto phb = placed_state(big, gb);
    auto sb = decompose(phb, Chart::RindlerI, big, gb);
    CHECK(std::abs(rindler_completeness(sb) - 1) < 1e-3);
    CHECK(horizon_leakage(sb) > 100 * horizon_leakage(ss));

    // region-II signed weight against direct quadrature behind the horizon
    double signed_two = 0;
    for (std::size_t n = 0; n < sb.k_grid.size(); ++n)
        signed_two += std::norm(sb.rindII_pos[n]) - std::norm(sb.rindII_neg[n]);
    CHECK(std::abs(signed_two - region_two_charge(phb)) < 1e-3 * std::abs(signed_two) + 1e-8);
}

TEST_CASE("horizon relation holds in thermal form on a wide box") {
    auto p = params(6, 1.0);
    GridOverrides wide;
    wide.x_extent = 300 * p.L;
    auto g = wide.resolve(p);
    auto sc = decompose(placed_state(p, g), Chart::RindlerI, p, g);
    auto th = horizon_identity_residual(sc, p, HorizonRelation::thermal, 1e-5);
    CHECK(*std::max_element(th.begin(), th.end()) < 1e-5);
    auto inv = horizon_identity_residual(sc, p, HorizonRelation::inverse, 1e-5);
    CHECK(*std::max_element(inv.begin(), inv.end()) > 0.5);

    // near k -> 0 the two families coincide up to sign
    std::size_t n = 0;
    while (std::abs(sc.rindII_pos[n]) < 1e-3) ++n;
    double nu = M_PI * sc.k_grid[n] * p.c * p.c / p.a;
    CHECK(nu < 0.2);
    CHECK(std::abs(sc.rindI_neg[n] + sc.rindII_pos[n]) < 1.1 * nu * std::abs(sc.rindII_pos[n]));
}

TEST_CASE("optimized detector") {
    auto p = params(6, 0.1);
    p.k_min_detector = 0.5;
    auto g = default_grid(p);
    auto sc = decompose(placed_state(p, g), Chart::RindlerI, p, g);
    auto opt = build_optimized_mode(sc, p);
    cplx b = spectral_beta(opt.mode.spectrum, sc);
    CHECK(std::abs(b.imag()) < 1e-12);
    CHECK(std::abs(b.real() * opt.normalization - 1) < 1e-9);
    CHECK(b.real() > 0.99);
    CHECK(std::abs(spectral_norm2(opt.mode.spectrum) - 1) < 1e-12);

    for (std::size_t j = 0; j < opt.mode.spectrum.coef.size(); ++j)
        if (opt.mode.spectrum.k(j) < 0.5) CHECK(opt.mode.spectrum.coef[j] == cplx(0));

    auto own = decompose(opt.mode, Chart::RindlerI, p, g);
    double neg = 0;
    for (auto v : own.rindI_neg) neg += std::norm(v);
    CHECK(neg < 1e-10);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        auto tr = random_trial_mode(rng, p, sc.rgrid);
        CHECK(std::abs(spectral_norm2(tr) - 1) < 1e-9);
        CHECK(std::abs(spectral_beta(tr, sc)) <= b.real() + 1e-12);
    }

    auto direct = build_optimized_mode(placed_state(p, g), p, g);
    CHECK(std::abs(direct.normalization - opt.normalization) < 1e-12 * opt.normalization);
}

TEST_CASE("closed-form overlap estimate") {
    CHECK(beta_estimate(params(100)) == 1.0);
    CHECK(beta_estimate(params(100, 0.04)) == doctest::Approx(0.8408964152537145).epsilon(1e-14));
    CHECK(beta_estimate(params(100, 0.01)) == doctest::Approx(0.9849581210109046).epsilon(1e-14));

    for (double aL : {0.01, 0.04, 0.1}) {
        auto p = params(100, aL);
        auto g = default_grid(p);
        auto sc = decompose(placed_state(p, g), Chart::RindlerI, p, g);
        cplx b = spectral_beta(build_gaussian_detector_mode(p, g).spectrum, sc);
        CHECK(std::abs(std::abs(b) - beta_estimate(p)) < 0.02 * beta_estimate(p));
    }
}

TEST_CASE("spectral overlap rejects mismatched grids") {
    auto p = params(6, 0.5);
    auto g = default_grid(p);
    auto sc = decompose(placed_state(p, g), Chart::RindlerI, p, g);
    Spectrum off;
    off.dk = sc.rgrid.grid.dk() * 1.5;
    off.coef = {1.0};
    CHECK_THROWS_AS(spectral_beta(off, sc), DomainError);
    auto mink = decompose(build_state_mode(p, g), Chart::Minkowski, p, g);
    CHECK_THROWS_AS(spectral_beta(build_gaussian_detector_mode(p, g).spectrum, mink), DomainError);
}
