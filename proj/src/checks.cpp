#include <algorithm>
#include <cmath>
#include <random>

#include "unruhent/moment_oracle.hpp"
#include "unruhent/sweep.hpp"

namespace unruh {

namespace {

CheckResult verdict(std::string suite, double worst, double tol, std::string detail = {}) {
    CheckResult r;
    r.suite = std::move(suite);
    r.worst = worst;
    r.tolerance = tol;
    r.status = worst <= tol ? "pass" : "fail";
    r.detail = std::move(detail);
    return r;
}

CheckResult skipped(std::string suite, std::string why) {
    CheckResult r;
    r.suite = std::move(suite);
    r.status = "skipped: " + why;
    return r;
}

GridSpec halved(const GridSpec& g) {
    GridSpec h = g;
    h.x_extent = g.x_extent / 2;
    h.x_points = g.x_points / 2;
    h.k_points = g.k_points / 2;
    return h;
}

double orthonormality_residual(const PlaneWaveBasis& b, const GridSpec& g, std::size_t stride) {
    double worst = 0;
    std::vector<ModeFunction> w;
    for (std::size_t i = 0; i < b.k_grid.size(); i += stride) w.push_back(sample_plane_wave(b, b.k_grid[i], g));
    for (std::size_t i = 0; i < w.size(); ++i) {
        worst = std::max(worst, std::abs(kg_inner(conjugate(w[i]), conjugate(w[i])) + 1.0));
        for (std::size_t j = i; j < w.size(); ++j)
            worst = std::max(worst, std::abs(kg_inner(w[i], w[j]) - (i == j ? 1.0 : 0.0)));
    }
    return worst;
}

}  // namespace

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
    std::vector<CheckResult> out;
    const PhysicalParams p = cfg.point_params();
    p.validate();
    const GridSpec g = cfg.grid.resolve(p);
    g.validate(p);
    const bool inertial = p.a == 0;
    const bool full = cfg.level == "full";

    // plane-wave orthonormality
    {
        auto b = minkowski_basis(g);
        double w = orthonormality_residual(b, g, std::max<std::size_t>(1, b.k_grid.size() / 12));
        out.push_back(verdict("orthonormality/minkowski", w, 1e-6));
        if (inertial) {
            out.push_back(skipped("orthonormality/rindler", "inertial"));
        } else {
            auto rg = rindler_grid(p, g);
            double wr = 0;
            for (Chart ch : {Chart::RindlerI, Chart::RindlerII}) {
                auto rb = rindler_basis(rg, ch);
                wr = std::max(wr, orthonormality_residual(rb, g, std::max<std::size_t>(1, rb.k_grid.size() / 12)));
            }
            out.push_back(verdict("orthonormality/rindler", wr, 1e-6));
        }
    }

    ModeFunction phi = build_state_mode(p, g);
    // Parseval, negative-frequency weight, and the same at a halved grid
    {
        auto sm = decompose(phi, Chart::Minkowski, p, g);
        double r = std::abs(minkowski_parseval(sm) - 1);
        out.push_back(verdict("parseval", r, 1e-4));
        out.push_back(verdict("negative_frequency_weight", minkowski_negative_weight(sm), 1e-6));
        GridSpec h = halved(g);
        try {
            h.validate(p);
            auto sh = decompose(build_state_mode(p, h), Chart::Minkowski, p, h);
            out.push_back(verdict("parseval/halved_grid", std::abs(minkowski_parseval(sh) - 1), 4e-4));
        } catch (const ConfigError& e) {
            out.push_back(skipped("parseval/halved_grid", e.what()));
        }
    }

    if (inertial) {
        for (auto s : {"completeness", "horizon_identity", "optimality"}) out.push_back(skipped(s, "inertial"));
    } else {
        ModeFunction tphi = translate_mode(phi, p.c * p.c / p.a);
        auto sc = decompose(tphi, Chart::RindlerI, p, g);
        out.push_back(verdict("completeness", std::abs(rindler_completeness(sc) - 1), 1e-3));

        // The relation only survives on a wide box: the filtered mode has slowly
        // decaying tails whose truncation feeds the tiny negative-frequency family.
        {
            GridOverrides wide = cfg.grid;
            wide.x_extent = std::max(g.x_extent, 300 * p.L);
            wide.x_points.reset();
            wide.k_points.reset();
            GridSpec gw = wide.resolve(p);
            if (p.c * p.c / p.a >= 0.95 * gw.x_extent) {
                out.push_back(skipped("horizon_identity", "horizon outside the integration box"));
            } else {
                auto sw = decompose(translate_mode(build_state_mode(p, gw), p.c * p.c / p.a), Chart::RindlerI, p, gw);
                auto res = horizon_identity_residual(sw, p, HorizonRelation::thermal, 1e-5);
                double worst = *std::max_element(res.begin(), res.end());
                out.push_back(verdict("horizon_identity", worst, 1e-5,
                                      "thermal relation on a 300L box, relative with floor 1e-5"));
            }
        }

        auto opt = build_optimized_mode(sc, p);
        double ov = spectral_beta(opt.mode.spectrum, sc).real();
        std::mt19937_64 rng(20240601);
        double excess = -1;
        for (int i = 0; i < 200; ++i) {
            auto tr = random_trial_mode(rng, p, sc.rgrid);
            excess = std::max(excess, std::abs(spectral_beta(tr, sc)) - ov);
        }
        out.push_back(verdict("optimality/bound", std::max(0.0, excess), 1e-9,
                              "max trial overlap minus optimized overlap"));
        out.push_back(verdict("optimality/normalization", std::abs(ov * opt.normalization - 1), 1e-6));
    }

    // covariance builder against the second-moment oracle
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0, 1);
        double worst = 0;
        for (int i = 0; i < 300; ++i) {
            OverlapSet o;
            o.alpha = std::polar(u(rng), 2 * M_PI * u(rng));
            double bp = 0.8 * u(rng);
            double bmax = std::sqrt(1 + bp * bp);
            o.beta = std::polar(bmax * u(rng), 2 * M_PI * u(rng));
            o.beta_prime = std::polar(bp, 2 * M_PI * u(rng));
            double s = 2 * u(rng), n = u(rng);
            auto A = build_covariance(o, {n}, s), B = second_moment_oracle(o, n, s);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) worst = std::max(worst, std::abs(A[a][b] - B[a][b]));
        }
        out.push_back(verdict("covariance_oracle", worst, 1e-12));
    }

    // physicality and convergence of the pipeline at this point
    {
        std::vector<double> ss = cfg.s_values.empty() ? std::vector<double>{0.25, 0.5, 1, 2, 4} : cfg.s_values;
        double worst_eig = 0, worst_conv = 0;
        for (auto m : {DetectorModel::gaussian, DetectorModel::optimized}) {
            auto d = detector_overlap(p, m, g, cfg.alpha);
            std::optional<DetectorOverlap> dr;
            if (full) dr = detector_overlap(p, m, refined(g), cfg.alpha);
            for (double s : ss) {
                auto row = row_from_overlap(p, d, s);
                worst_eig = std::max(worst_eig, -row.min_physicality_eig);
                if (dr && row.e_n > 0) {
                    auto rr = row_from_overlap(p, *dr, s);
                    worst_conv = std::max(worst_conv, std::abs(rr.e_n - row.e_n) / row.e_n);
                }
            }
        }
        out.push_back(verdict("physicality", std::max(0.0, worst_eig), 1e-9, "negated min eigenvalue of sigma + i Omega"));
        if (full) out.push_back(verdict("grid_convergence", worst_conv, 5e-3, "relative E_N change, refined grid"));
        else out.push_back(skipped("grid_convergence", "fast level"));
    }
    return out;
}

}  // namespace unruh
