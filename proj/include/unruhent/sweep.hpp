#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unruhent/entanglement_core.hpp"

namespace unruh {

enum class DetectorModel { gaussian, optimized };
const char* model_name(DetectorModel m);
DetectorModel parse_model(const std::string& s);

struct SweepRow {
    double aL_over_c2 = 0;
    double s = 0;
    int n_char = 0;
    DetectorModel detector_model = DetectorModel::gaussian;
    double abs_alpha = 0;
    double abs_beta = 0;
    double abs_beta_prime = 0;
    double n_unruh = 0;
    double beta_estimate = 0;
    double e_n = 0;
    double min_physicality_eig = 0;
};

// Everything that does not depend on s, for one (aL, model) pair.
struct DetectorOverlap {
    double aL_over_c2 = 0;
    DetectorModel model = DetectorModel::gaussian;
    OverlapSet overlaps;
    UnruhNoise noise;
    double beta_est = 1;
};

DetectorOverlap detector_overlap(const PhysicalParams& p, DetectorModel model, const GridSpec& g, cplx alpha = 1);
SweepRow row_from_overlap(const PhysicalParams& p, const DetectorOverlap& d, double s, bool with_noise = true);
SweepRow evaluate_point(const PhysicalParams& p, DetectorModel model, const GridSpec& g, cplx alpha = 1);

// Explicit grid settings; unset fields fall back to default_grid(params).
struct GridOverrides {
    std::optional<double> x_extent, k_max;
    std::optional<long> x_points, k_points;
    int refine = 0;
    GridSpec resolve(const PhysicalParams& p) const;
};

struct RunConfig {
    PhysicalParams base;
    std::optional<double> aL_single;
    std::vector<double> aL_values;
    std::vector<double> s_values;
    std::vector<DetectorModel> models{DetectorModel::gaussian};
    GridOverrides grid;
    double alpha = 1;
    std::string output;
    std::string prefix = "out";
    std::string level = "fast";
    unsigned threads = 0;

    PhysicalParams point_params() const;  // base with aL_single applied
};

// Applies one key=value; throws ConfigError on unknown keys or bad values.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig config_from(const KeyValues& kv, RunConfig cfg = {});
std::vector<std::string> known_keys();

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<DetectorOverlap> overlaps;  // one per (aL, model), sorted by (model, aL)
};
SweepResult sweep(const RunConfig& cfg);

std::string csv_header();
std::string csv_line(const SweepRow& r);
// Writes the rows; returns them too.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

struct CheckResult {
    std::string suite;
    std::string status;  // pass, fail, skipped: <reason>
    double worst = 0;
    double tolerance = 0;
    std::string detail;
};
std::vector<CheckResult> run_checks(const RunConfig& cfg);

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace unruh
