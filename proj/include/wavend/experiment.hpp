#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavend/dense_matrix.hpp"

namespace wavend {

/// One experiment: a coefficient pair, a grid, and the (lambda, alpha, noise,
/// replicate) job grid. Defaults reproduce the Euclidean benchmark setup.
struct ExperimentConfig {
    std::string preset = "custom";

    /// Coefficient specs: "const:V" or an expression in x (see parse_expression).
    std::string c_spec = "1";
    std::string q_spec = "1/(x+2)";

    double x_min = -1.0;
    double x_max = 1.0;
    int n_x = 401;
    double t_final = 4.0;

    std::vector<Complex> lambdas{Complex(0.0)};
    std::vector<double> alphas{1e-4};
    std::vector<double> noise_levels{0.0};
    int replicates = 1;
    std::optional<std::uint64_t> seed;

    /// Boundary data whose control and snapshot are written per job.
    std::array<double, 2> boundary_data{1.0, 2.0};

    std::filesystem::path out_dir = "out";
    bool snapshot = false;
    std::string profile = "full";  // full | ci (ci overrides n_x to 101)
    int workers = 1;
    std::optional<std::filesystem::path> cache_dir;
};

/// Named configurations: exp1 (Euclidean, noise ladder), exp2 (alpha sweep),
/// exp3 (non-Euclidean speed), exp4-real / exp4-imag (frequency sweeps at
/// q = pi). Throws ConfigError for unknown names.
ExperimentConfig preset_config(const std::string& name);

/// "const:V" or an expression in x.
std::function<double(double)> resolve_coefficient(const std::string& spec);

/// Installs a named coefficient pair: "euclid-q" (c = 1, q = 1/(x+2)),
/// "conformal" (c = cos((x+1)/2), same q) or "eigen-sweep" (c = 1, q = pi).
void apply_coefficient_preset(ExperimentConfig& cfg, const std::string& name);

struct ReportRow {
    std::string preset;
    Complex lambda{0.0};
    double alpha = 0;
    double noise = 0;
    int replicate = 0;
    std::optional<std::uint64_t> row_seed;  // sub-seed of the noise draw
    std::array<Complex, 4> L{};             // reconstructed 2x2, row-major
    std::array<Complex, 4> truth{};         // elliptic ground truth
    double rel_frob_err = 0;
    std::optional<double> snapshot_rel_err;
    double wall_ms = 0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::filesystem::path report_path;
};

/// Runs the full pipeline: grid, hyperbolic map (cached when requested),
/// noise, connecting operator, one regularized solve per (lambda, alpha),
/// metrics against the elliptic ground truth. Writes report.csv plus
/// control_<job>.csv and snapshot_<job>.csv files into out_dir, flushing
/// after every job so partial results survive an abort.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace wavend
