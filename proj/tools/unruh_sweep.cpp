// Command-line front end: point, sweep, decompose, modes, check.
#include <CLI11.hpp>

#include <cstdio>
#include <map>

#include "unruhent/sweep.hpp"

using namespace unruh;

namespace {

int run(const std::string& cmd, const RunConfig& cfg) {
    if (cmd == "point") {
        RunConfig c = cfg;
        if (c.aL_values.empty()) c.aL_values = {c.point_params().aL_over_c2()};
        if (c.aL_values.size() > 1) c.aL_values.resize(1);
        run_sweep(c);
        return 0;
    }
    if (cmd == "sweep") {
        run_sweep(cfg);
        return 0;
    }
    const PhysicalParams p = cfg.point_params();
    p.validate();
    const GridSpec g = cfg.grid.resolve(p);
    if (cmd == "decompose") {
        ModeFunction phi = build_state_mode(p, g);
        if (p.a > 0) phi = translate_mode(phi, p.c * p.c / p.a);
        SpectralCoefficients sc = decompose(phi, Chart::Minkowski, p, g);
        std::printf("parseval %.12g\nnegative_weight %.12g\n", minkowski_parseval(sc), minkowski_negative_weight(sc));
        if (p.a > 0) {
            SpectralCoefficients r = decompose(phi, Chart::RindlerI, p, g);
            r.k_mink = sc.k_mink;
            r.mink_pos = sc.mink_pos;
            r.mink_neg = sc.mink_neg;
            r.has_minkowski = true;
            sc = std::move(r);
            std::printf("completeness %.12g\nhorizon_leakage %.12g\n", rindler_completeness(sc), horizon_leakage(sc));
        }
        write_spectral_tables(sc, cfg.prefix);
        return 0;
    }
    if (cmd == "modes") {
        ModeFunction phi = build_state_mode(p, g);
        if (p.a > 0) phi = translate_mode(phi, p.c * p.c / p.a);
        write_mode_table(phi, cfg.prefix + "_phi.tsv");
        write_mode_table(build_gaussian_detector_mode(p, g), cfg.prefix + "_psi_gauss.tsv");
        if (p.a > 0) {
            auto opt = build_optimized_mode(phi, p, g);
            write_mode_table(opt.mode, cfg.prefix + "_psi_opt.tsv");
            std::printf("normalization %.12g\n", opt.normalization);
        }
        return 0;
    }
    if (cmd == "check") {
        bool failed = false;
        for (auto& r : run_checks(cfg)) {
            std::printf("%-28s %-10s worst=%.3e tol=%.1e %s\n", r.suite.c_str(), r.status.c_str(), r.worst, r.tolerance,
                        r.detail.c_str());
            failed |= r.status == "fail";
        }
        return failed ? 1 : 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement degradation for an accelerated detector"};
    app.require_subcommand(1, 1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    std::map<std::string, std::string> flags;
    for (const auto& k : known_keys()) app.add_option("--" + k, flags[k], "config key " + k);
    app.fallthrough();
    for (auto name : {"point", "sweep", "decompose", "modes", "check"}) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        KeyValues kv;
        if (!config_path.empty()) kv = read_config_file(config_path);
        for (const auto& k : known_keys())
            if (app.count("--" + k)) kv[k] = flags[k];
        RunConfig cfg = config_from(kv);
        return run(app.get_subcommands().front()->get_name(), cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "numerical-domain error: %s\n", e.what());
        return 3;
    }
}
