#include "unruhent/parameters.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace unruh {

void PhysicalParams::validate() const {
    if (!(c > 0) || !std::isfinite(c)) throw ConfigError("c must be positive");
    if (!(L > 0) || !std::isfinite(L)) throw ConfigError("L must be positive");
    if (!(a >= 0) || !std::isfinite(a)) throw ConfigError("a must be finite and >= 0");
    if (n_char <= 3) throw ConfigError("n_char must be > 3");
    if (!(s >= 0) || !std::isfinite(s)) throw ConfigError("s must be >= 0");
    if (!(kmin_state() > 0)) throw ConfigError("k_min_state must be positive");
    if (!(kmin_detector() > 0)) throw ConfigError("k_min_detector must be positive");
}

PhysicalParams with_aL(PhysicalParams p, double aL_over_c2) {
    p.a = aL_over_c2 * p.c * p.c / p.L;
    return p;
}

double GridSpec::dk() const { return M_PI / x_extent; }

double GridSpec::k_cut() const {
    return std::min(k_max, static_cast<double>(k_points) * dk());
}

void GridSpec::validate(const PhysicalParams& p) const {
    if (!(x_extent > 0) || x_points < 16 || k_points < 1 || !(k_max > 0))
        throw ConfigError("grid: sizes must be positive");
    if (x_extent < 8 * p.L) throw ConfigError("grid: x_extent must cover 8 mode widths");
    double peak = p.n_char / p.L;
    if (k_cut() < 4 * peak)
        throw ConfigError("grid: k range must reach 4*n_char/L (raise k_max or k_points)");
    // samples must carry every retained node, positive and negative
    if (x_points < 2 * k_points || !(dx() < M_PI / k_cut()))
        throw ConfigError("grid too coarse for Nyquist at k_max");
}

std::size_t next_pow2(double n) {
    std::size_t m = 1;
    while (static_cast<double>(m) < n) m <<= 1;
    return m;
}

GridSpec default_grid(const PhysicalParams& p) {
    GridSpec g;
    g.x_extent = 16 * p.L;
    g.k_max = 8.0 * p.n_char / p.L;
    g.k_points = static_cast<std::size_t>(std::ceil(g.k_max / g.dk()));
    g.x_points = next_pow2(3.0 * static_cast<double>(g.k_points));
    return g;
}

GridSpec refined(const GridSpec& g) {
    GridSpec r = g;
    r.x_extent = 2 * g.x_extent;
    r.x_points = 4 * g.x_points;
    r.k_points = 2 * g.k_points;
    return r;
}

GridSpec coarsened(const GridSpec& g) {
    GridSpec r = g;
    r.x_extent = g.x_extent / 2;
    r.x_points = g.x_points / 4;
    r.k_points = g.k_points / 2;
    return r;
}

double conformal_length(const PhysicalParams& p) {
    if (p.a == 0) return p.L;
    double c2 = p.c * p.c;
    return 2 * c2 / p.a * std::asinh(p.a * p.L / (2 * c2));
}

DimensionlessGroups dimensionless_groups(const PhysicalParams& p) {
    double c2 = p.c * p.c;
    DimensionlessGroups d;
    d.aL_over_c2 = p.a * p.L / c2;
    d.aLtilde_over_c2 = 2 * std::asinh(d.aL_over_c2 / 2);
    d.NaL_over_4c2 = p.n_char * d.aL_over_c2 / 4;
    d.k_c = p.a / (2 * M_PI * c2);
    return d;
}

static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + v + "'");
    }
}

}  // namespace unruh
