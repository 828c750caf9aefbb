#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

namespace unruh {

// Error taxonomy mirrors the CLI exit codes (2 config, 3 numerical domain).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PhysicalParams {
    double c = 1.0;
    double a = 0.0;
    double L = 1.0;
    int n_char = 6;
    double s = 1.0;
    double k_min_state = -1.0;     // < 0 means 1/(3L)
    double k_min_detector = -1.0;  // < 0 means 1/(2L)

    double kmin_state() const { return k_min_state < 0 ? 1.0 / (3.0 * L) : k_min_state; }
    double kmin_detector() const { return k_min_detector < 0 ? 1.0 / (2.0 * L) : k_min_detector; }
    double aL_over_c2() const { return a * L / (c * c); }

    // Throws ConfigError.
    void validate() const;
};

// Builds params from the dimensionless acceleration aL/c^2.
PhysicalParams with_aL(PhysicalParams p, double aL_over_c2);

// Box of half-width x_extent; wavenumber nodes are (n + 1/2) * pi / x_extent.
struct GridSpec {
    double x_extent = 0;
    std::size_t x_points = 0;
    double k_max = 0;
    std::size_t k_points = 0;

    double dk() const;
    double dx() const { return 2.0 * x_extent / static_cast<double>(x_points); }
    double k_cut() const;  // min(k_max, k_points * dk)
    void validate(const PhysicalParams& p) const;
};

GridSpec default_grid(const PhysicalParams& p);
// Doubles the sample density in x and in k (box doubles, spacing halves).
GridSpec refined(const GridSpec& g);
// Inverse of refined(); used for the coarse-grid Parseval report.
GridSpec coarsened(const GridSpec& g);

double conformal_length(const PhysicalParams& p);

struct DimensionlessGroups {
    double aL_over_c2;
    double aLtilde_over_c2;
    double NaL_over_4c2;
    double k_c;
};
DimensionlessGroups dimensionless_groups(const PhysicalParams& p);

// key=value text; '#' starts a comment. Duplicate keys: last wins.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

double parse_double(const std::string& key, const std::string& v);
long parse_int(const std::string& key, const std::string& v);

std::size_t next_pow2(double n);

}  // namespace unruh
