#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wavend/errors.hpp"
#include "wavend/experiment.hpp"

namespace {

struct CliOpts {
    int nx = 0;                       // 0 = keep preset
    double t_final = 0;               // 0 = keep preset
    std::vector<std::string> lambdas;
    std::vector<double> alphas;
    std::vector<double> noises;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    bool snapshot_on = false;
    bool snapshot_off = false;
    std::string profile;
    int workers = 0;
    std::string cache;
    std::string axis = "both";
    std::string coeff;
    std::string c_expr;
    std::string q_expr;
    int replicates = 0;
    double f_left = 1.0;
    double f_right = 2.0;
    bool f_set = false;
};

wavend::Complex parse_lambda(const std::string& s) {
    try {
        std::size_t comma = s.find(',');
        if (comma == std::string::npos) return wavend::Complex(std::stod(s), 0.0);
        return wavend::Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw wavend::ConfigError("bad --lambda value '" + s + "', expected RE or RE,IM");
    }
}

void add_common_flags(CLI::App* sub, CliOpts& o) {
    sub->set_config("--config", "", "Read options from a key=value config file");
    sub->add_option("--nx", o.nx, "Space nodes (default: preset)");
    sub->add_option("--t-final", o.t_final, "Control horizon length");
    sub->add_option("--lambda", o.lambdas, "Frequency RE or RE,IM (repeatable)");
    sub->add_option("--alpha", o.alphas, "Regularization weight (repeatable)");
    sub->add_option("--noise", o.noises, "Relative noise level (repeatable)");
    sub->add_option("--seed", o.seed, "RNG seed for noise draws");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_flag("--snapshot", o.snapshot_on, "Compute interior snapshots");
    sub->add_flag("--no-snapshot", o.snapshot_off, "Skip interior snapshots");
    sub->add_option("--profile", o.profile, "Resolution profile: full or ci");
    sub->add_option("--workers", o.workers, "Concurrent jobs per noise group");
    sub->add_option("--cache", o.cache, "Cache directory for the boundary-data matrix");
}

wavend::ExperimentConfig make_config(const std::string& preset, const CliOpts& o) {
    wavend::ExperimentConfig cfg =
        preset == "custom" ? wavend::ExperimentConfig{} : wavend::preset_config(preset);
    if (!o.coeff.empty()) wavend::apply_coefficient_preset(cfg, o.coeff);
    if (o.nx > 0) cfg.n_x = o.nx;
    if (o.t_final > 0) cfg.t_final = o.t_final;
    if (!o.lambdas.empty()) {
        cfg.lambdas.clear();
        for (const std::string& s : o.lambdas) cfg.lambdas.push_back(parse_lambda(s));
    }
    if (!o.alphas.empty()) cfg.alphas = o.alphas;
    if (!o.noises.empty()) cfg.noise_levels = o.noises;
    if (o.seed) cfg.seed = o.seed;
    cfg.out_dir = o.out;
    if (o.snapshot_on && o.snapshot_off)
        throw wavend::ConfigError("--snapshot and --no-snapshot are mutually exclusive");
    if (o.snapshot_on) cfg.snapshot = true;
    if (o.snapshot_off) cfg.snapshot = false;
    if (!o.profile.empty()) cfg.profile = o.profile;
    if (o.workers > 0) cfg.workers = o.workers;
    if (!o.cache.empty()) cfg.cache_dir = o.cache;
    if (o.replicates > 0) cfg.replicates = o.replicates;
    if (o.f_set) cfg.boundary_data = {o.f_left, o.f_right};
    if (!o.c_expr.empty()) cfg.c_spec = o.c_expr;
    if (!o.q_expr.empty()) cfg.q_spec = o.q_expr;
    return cfg;
}

void run_and_summarize(const wavend::ExperimentConfig& cfg) {
    wavend::ExperimentReport report = wavend::run_experiment(cfg);
    std::printf("wrote %s (%zu rows)\n", report.report_path.string().c_str(), report.rows.size());
    if (report.rows.size() <= 12) {
        for (const wavend::ReportRow& r : report.rows) {
            std::printf("  lambda=%g%+gi alpha=%g noise=%g rel_frob_err=%.4f%%", r.lambda.real(),
                        r.lambda.imag(), r.alpha, r.noise, 100.0 * r.rel_frob_err);
            if (r.snapshot_rel_err) std::printf(" snapshot_err=%.4f%%", 100.0 * *r.snapshot_rel_err);
            std::printf("\n");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain boundary data reconstructed from time-domain boundary data"};
    app.require_subcommand(1);

    CliOpts o;
    CLI::App* exp1 = app.add_subcommand("exp1", "Euclidean benchmark with a noise ladder");
    CLI::App* exp2 = app.add_subcommand("exp2", "Regularization sweep alpha = 1e-1 .. 1e-10");
    CLI::App* exp3 = app.add_subcommand("exp3", "Non-Euclidean wave speed benchmark");
    CLI::App* exp4 = app.add_subcommand("exp4", "Frequency sweeps at q = pi");
    CLI::App* run = app.add_subcommand("run", "Custom experiment");
    for (CLI::App* sub : {exp1, exp2, exp3, exp4, run}) add_common_flags(sub, o);

    exp4->add_option("--axis", o.axis, "Sweep axis: real, imag or both")
        ->check(CLI::IsMember({"real", "imag", "both"}));
    run->add_option("--coeff", o.coeff, "Coefficient preset: euclid-q, conformal or eigen-sweep");
    run->add_option("--c-expr", o.c_expr, "Wave speed expression in x (or const:V)");
    run->add_option("--q-expr", o.q_expr, "Potential expression in x (or const:V)");
    run->add_option("--replicates", o.replicates, "Noise replicates per level");
    CLI::Option* fl = run->add_option("--f-left", o.f_left, "Boundary datum at x_min");
    CLI::Option* fr = run->add_option("--f-right", o.f_right, "Boundary datum at x_max");

    try {
        app.parse(argc, argv);
        o.f_set = fl->count() > 0 || fr->count() > 0;

        if (exp4->parsed()) {
            if (o.axis == "both") {
                CliOpts real_opts = o;
                real_opts.out = (std::filesystem::path(o.out) / "real").string();
                run_and_summarize(make_config("exp4-real", real_opts));
                CliOpts imag_opts = o;
                imag_opts.out = (std::filesystem::path(o.out) / "imag").string();
                run_and_summarize(make_config("exp4-imag", imag_opts));
            } else {
                run_and_summarize(make_config("exp4-" + o.axis, o));
            }
        } else if (run->parsed()) {
            run_and_summarize(make_config("custom", o));
        } else {
            for (CLI::App* sub : {exp1, exp2, exp3}) {
                if (sub->parsed()) run_and_summarize(make_config(sub->get_name(), o));
            }
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const wavend::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const wavend::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const wavend::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
