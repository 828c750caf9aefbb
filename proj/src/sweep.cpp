#include "unruhent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "unruhent/moment_oracle.hpp"

namespace unruh {

const char* model_name(DetectorModel m) { return m == DetectorModel::gaussian ? "gaussian" : "optimized"; }

DetectorModel parse_model(const std::string& s) {
    if (s == "gaussian") return DetectorModel::gaussian;
    if (s == "optimized") return DetectorModel::optimized;
    throw ConfigError("unknown detector model '" + s + "'");
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(name) + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

DetectorOverlap detector_overlap(const PhysicalParams& p, DetectorModel model, const GridSpec& g, cplx alpha) {
    stage("parameters", [&] {
        p.validate();
        g.validate(p);
    });
    DetectorOverlap d;
    d.aL_over_c2 = p.aL_over_c2();
    d.model = model;
    d.beta_est = beta_estimate(p);
    d.overlaps.alpha = alpha;
    if (p.a == 0) {
        if (model == DetectorModel::optimized) {
            d.overlaps.beta = 1;
            d.overlaps.beta_prime = 0;
            return d;
        }
        ModeFunction phi = stage("state mode", [&] { return build_state_mode(p, g); });
        ModeFunction psi = stage("detector mode", [&] { return build_gaussian_detector_mode(p, g); });
        d.overlaps = stage("overlaps", [&] { return compute_overlaps(psi, phi, alpha); });
        return d;
    }
    ModeFunction phi = stage("state mode", [&] { return translate_mode(build_state_mode(p, g), p.c * p.c / p.a); });
    SpectralCoefficients sc = stage("decompose", [&] { return decompose(phi, Chart::RindlerI, p, g); });
    Spectrum det;
    if (model == DetectorModel::gaussian) {
        det = stage("detector mode", [&] { return build_gaussian_detector_mode(p, g).spectrum; });
    } else {
        det = stage("optimized mode", [&] { return build_optimized_mode(sc, p).mode.spectrum; });
    }
    stage("overlaps", [&] {
        d.overlaps.beta = spectral_beta(det, sc);
        d.overlaps.beta_prime = spectral_beta_prime(det, sc);
        d.noise = unruh_noise(det, p);
    });
    return d;
}

SweepRow row_from_overlap(const PhysicalParams& p, const DetectorOverlap& d, double s, bool with_noise) {
    SweepRow r;
    r.aL_over_c2 = d.aL_over_c2;
    r.s = s;
    r.n_char = p.n_char;
    r.detector_model = d.model;
    r.abs_alpha = std::abs(d.overlaps.alpha);
    r.abs_beta = std::abs(d.overlaps.beta);
    r.abs_beta_prime = std::abs(d.overlaps.beta_prime);
    r.n_unruh = d.noise.n_mean;
    r.beta_estimate = d.beta_est;
    UnruhNoise n = with_noise ? d.noise : UnruhNoise{};
    CovarianceMatrix4 sigma = build_covariance(d.overlaps, n, s);
    r.min_physicality_eig = physicality_check(sigma).min_eigenvalue;
    r.e_n = stage("negativity", [&] { return log_negativity(d.overlaps, n, s); });
    return r;
}

SweepRow evaluate_point(const PhysicalParams& p, DetectorModel model, const GridSpec& g, cplx alpha) {
    return row_from_overlap(p, detector_overlap(p, model, g, alpha), p.s);
}

GridSpec GridOverrides::resolve(const PhysicalParams& p) const {
    GridSpec g = default_grid(p);
    if (x_extent) g.x_extent = *x_extent;
    if (k_max) g.k_max = *k_max;
    if (x_extent || k_max) {
        g.k_points = static_cast<std::size_t>(std::ceil(g.k_max / g.dk()));
        g.x_points = next_pow2(3.0 * static_cast<double>(g.k_points));
    }
    if (k_points) {
        if (*k_points <= 0) throw ConfigError("k_points must be positive");
        g.k_points = static_cast<std::size_t>(*k_points);
    }
    if (x_points) {
        if (*x_points <= 0) throw ConfigError("x_points must be positive");
        g.x_points = static_cast<std::size_t>(*x_points);
    }
    for (int i = 0; i < refine; ++i) g = refined(g);
    return g;
}

PhysicalParams RunConfig::point_params() const {
    PhysicalParams p = base;
    if (aL_single) p = with_aL(p, *aL_single);
    return p;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> v;
    if (n == 1) return {lo};
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / static_cast<double>(n - 1)));
    return v;
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

struct Spacing {
    std::optional<double> lo, hi;
    std::optional<long> count;
};
thread_local Spacing* pending = nullptr;

}  // namespace

std::vector<std::string> known_keys() {
    return {"c",          "a",         "L",         "n_char",     "s",       "k_min_state", "k_min_detector",
            "a_over_c2_times_L",       "x_extent",  "x_points",   "k_max",   "k_points",    "grid_refine",
            "aL_values",  "aL_min",    "aL_max",    "aL_count",   "s_values", "models",     "alpha",
            "output",     "prefix",    "level",     "threads"};
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& v) {
    auto& p = cfg.base;
    if (key == "c") p.c = parse_double(key, v);
    else if (key == "a") {
        p.a = parse_double(key, v);
        cfg.aL_single.reset();
    } else if (key == "L") p.L = parse_double(key, v);
    else if (key == "n_char") p.n_char = static_cast<int>(parse_int(key, v));
    else if (key == "s") p.s = parse_double(key, v);
    else if (key == "k_min_state") p.k_min_state = parse_double(key, v);
    else if (key == "k_min_detector") p.k_min_detector = parse_double(key, v);
    else if (key == "a_over_c2_times_L") cfg.aL_single = parse_double(key, v);
    else if (key == "x_extent") cfg.grid.x_extent = parse_double(key, v);
    else if (key == "x_points") cfg.grid.x_points = parse_int(key, v);
    else if (key == "k_max") cfg.grid.k_max = parse_double(key, v);
    else if (key == "k_points") cfg.grid.k_points = parse_int(key, v);
    else if (key == "grid_refine") cfg.grid.refine = static_cast<int>(parse_int(key, v));
    else if (key == "aL_values") {
        cfg.aL_values.clear();
        for (auto& x : split_list(v)) cfg.aL_values.push_back(parse_double(key, x));
    } else if (key == "aL_min" || key == "aL_max" || key == "aL_count") {
        if (!pending) throw ConfigError(key + " is only valid inside a config file or flag set");
        if (key == "aL_min") pending->lo = parse_double(key, v);
        else if (key == "aL_max") pending->hi = parse_double(key, v);
        else pending->count = parse_int(key, v);
    } else if (key == "s_values") {
        cfg.s_values.clear();
        for (auto& x : split_list(v)) cfg.s_values.push_back(parse_double(key, x));
    } else if (key == "models") {
        cfg.models.clear();
        for (auto& x : split_list(v)) cfg.models.push_back(parse_model(x));
    } else if (key == "alpha") cfg.alpha = parse_double(key, v);
    else if (key == "output") cfg.output = v;
    else if (key == "prefix") cfg.prefix = v;
    else if (key == "level") {
        if (v != "fast" && v != "full") throw ConfigError("level must be fast or full");
        cfg.level = v;
    } else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_int(key, v));
    else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig config_from(const KeyValues& kv, RunConfig cfg) {
    Spacing sp;
    pending = &sp;
    try {
        // aL_single depends on c and L only at use time, so order does not matter
        for (auto& [k, v] : kv) apply_key(cfg, k, v);
    } catch (...) {
        pending = nullptr;
        throw;
    }
    pending = nullptr;
    if (sp.lo || sp.hi || sp.count) {
        if (!(sp.lo && sp.hi && sp.count)) throw ConfigError("aL_min, aL_max and aL_count go together");
        if (!(*sp.lo > 0 && *sp.hi >= *sp.lo) || *sp.count < 0)
            throw ConfigError("aL range must satisfy 0 < aL_min <= aL_max, aL_count >= 0");
        cfg.aL_values = log_spaced(*sp.lo, *sp.hi, static_cast<std::size_t>(*sp.count));
    }
    if (cfg.alpha < 0 || cfg.alpha > 1) throw ConfigError("alpha must lie in [0, 1]");
    return cfg;
}

SweepResult sweep(const RunConfig& cfg) {
    std::vector<double> aLs = cfg.aL_values;
    if (aLs.empty() && cfg.aL_single) aLs = {*cfg.aL_single};
    std::vector<double> ss = cfg.s_values.empty() ? std::vector<double>{cfg.base.s} : cfg.s_values;
    for (double x : aLs)
        if (!(x >= 0) || !std::isfinite(x)) throw ConfigError("aL values must be finite and >= 0");
    for (double s : ss)
        if (!(s >= 0) || !std::isfinite(s)) throw ConfigError("s values must be finite and >= 0");

    struct Job {
        DetectorModel model;
        double aL;
    };
    std::vector<Job> jobs;
    for (auto m : cfg.models)
        for (double x : aLs) jobs.push_back({m, x});

    SweepResult res;
    res.overlaps.resize(jobs.size());
    std::vector<std::vector<SweepRow>> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next++;
            if (i >= jobs.size()) return;
            try {
                PhysicalParams p = with_aL(cfg.base, jobs[i].aL);
                GridSpec g = cfg.grid.resolve(p);
                res.overlaps[i] = detector_overlap(p, jobs[i].model, g, cfg.alpha);
                for (double s : ss) rows[i].push_back(row_from_overlap(p, res.overlaps[i], s));
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next = jobs.size();
            }
        }
    };
    unsigned nt = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min<unsigned>(nt, std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);

    for (auto& r : rows) res.rows.insert(res.rows.end(), r.begin(), r.end());
    auto key = [](const SweepRow& r) { return std::make_tuple(static_cast<int>(r.detector_model), r.s, r.aL_over_c2); };
    std::stable_sort(res.rows.begin(), res.rows.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
    std::stable_sort(res.overlaps.begin(), res.overlaps.end(), [](auto& x, auto& y) {
        return std::make_pair(static_cast<int>(x.model), x.aL_over_c2) < std::make_pair(static_cast<int>(y.model), y.aL_over_c2);
    });
    return res;
}

std::string csv_header() {
    return "aL_over_c2,s,n_char,detector_model,abs_alpha,abs_beta,abs_beta_prime,n_unruh,beta_estimate,e_n,"
           "min_physicality_eig";
}

std::string csv_line(const SweepRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%d,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g", r.aL_over_c2, r.s,
                  r.n_char, model_name(r.detector_model), r.abs_alpha, r.abs_beta, r.abs_beta_prime, r.n_unruh,
                  r.beta_estimate, r.e_n, r.min_physicality_eig);
    return buf;
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::FILE* f = path.empty() || path == "-" ? stdout : std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write output file " + path);
    std::fprintf(f, "%s\n", csv_header().c_str());
    for (auto& r : rows) std::fprintf(f, "%s\n", csv_line(r).c_str());
    if (f != stdout) std::fclose(f);
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
    if (!cfg.output.empty() && cfg.output != "-") {
        std::FILE* probe = std::fopen(cfg.output.c_str(), "w");
        if (!probe) throw ConfigError("cannot write output file " + cfg.output);
        std::fclose(probe);
    }
    auto res = sweep(cfg);
    write_csv(res.rows, cfg.output);
    return res.rows;
}

}  // namespace unruh
