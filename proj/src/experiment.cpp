#include "wavend/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <thread>
#include <utility>

#include "wavend/elliptic.hpp"
#include "wavend/expr.hpp"
#include "wavend/metrics.hpp"
#include "wavend/noise.hpp"
#include "wavend/operators.hpp"
#include "wavend/reconstruction.hpp"
#include "wavend/wave.hpp"

namespace wavend {

namespace {

std::vector<Complex> sweep(double step, int half_count, bool imaginary) {
    std::vector<Complex> out;
    out.reserve(2 * half_count + 1);
    for (int k = -half_count; k <= half_count; ++k) {
        double v = step * k;
        out.push_back(imaginary ? Complex(0.0, v) : Complex(v, 0.0));
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, int noise_idx, int replicate) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(noise_idx) * 0x100000001b3ULL +
                                          static_cast<std::uint64_t>(replicate)));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct JobOut {
    ReportRow row;
    std::size_t lambda_idx = 0;
    BoundarySignal<Complex> control;
    std::vector<Complex> snap_recon;
};

}  // namespace

void apply_coefficient_preset(ExperimentConfig& cfg, const std::string& name) {
    if (name == "euclid-q") {
        cfg.c_spec = "1";
        cfg.q_spec = "1/(x+2)";
    } else if (name == "conformal") {
        cfg.c_spec = "cos((x+1)/2)";
        cfg.q_spec = "1/(x+2)";
    } else if (name == "eigen-sweep") {
        cfg.c_spec = "1";
        cfg.q_spec = "pi";
    } else {
        throw ConfigError("unknown coefficient preset '" + name + "'");
    }
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;
    if (name == "exp1") {
        apply_coefficient_preset(cfg, "euclid-q");
        cfg.noise_levels = {0.0, 0.01, 0.02, 0.05};
        cfg.seed = 7;
        cfg.snapshot = true;
    } else if (name == "exp2") {
        apply_coefficient_preset(cfg, "euclid-q");
        cfg.alphas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
    } else if (name == "exp3") {
        apply_coefficient_preset(cfg, "conformal");
        cfg.noise_levels = {0.0, 0.01, 0.02, 0.05};
        cfg.seed = 7;
        cfg.snapshot = true;
    } else if (name == "exp4-real" || name == "exp4-imag") {
        apply_coefficient_preset(cfg, "eigen-sweep");
        cfg.lambdas = sweep(0.1, 79, name == "exp4-imag");
        cfg.alphas = {1e-6};
        cfg.snapshot = true;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return cfg;
}

std::function<double(double)> resolve_coefficient(const std::string& spec) {
    if (spec.rfind("const:", 0) == 0) {
        double v = 0;
        try {
            v = std::stod(spec.substr(6));
        } catch (const std::exception&) {
            throw ConfigError("bad constant coefficient '" + spec + "'");
        }
        return [v](double) { return v; };
    }
    return parse_expression(spec);
}

namespace {

void validate(const ExperimentConfig& cfg) {
    if (cfg.profile != "full" && cfg.profile != "ci")
        throw ConfigError("profile must be 'full' or 'ci', got '" + cfg.profile + "'");
    if (cfg.lambdas.empty()) throw NoWork("empty lambda list");
    if (cfg.alphas.empty()) throw NoWork("empty alpha list");
    if (cfg.noise_levels.empty()) throw NoWork("empty noise level list");
    if (cfg.replicates < 1)
        throw ConfigError("replicates must be at least 1, got " + std::to_string(cfg.replicates));
    if (cfg.workers < 1)
        throw ConfigError("workers must be at least 1, got " + std::to_string(cfg.workers));
    for (double a : cfg.alphas)
        if (!(a > 0)) throw ConfigError("alpha must be positive, got " + std::to_string(a));
    bool any_noise = false;
    for (double n : cfg.noise_levels) {
        if (n < 0) throw ConfigError("noise level must be nonnegative, got " + std::to_string(n));
        any_noise = any_noise || n > 0;
    }
    if (any_noise && !cfg.seed) throw MissingSeed("noisy runs require a seed");
}

void write_header(std::ofstream& out, const ExperimentConfig& cfg) {
    out << "# wavend 1.0 generated=" << timestamp_utc() << " preset=" << cfg.preset << " seed=";
    if (cfg.seed)
        out << *cfg.seed;
    else
        out << "none";
    out << "\n";
    out << "preset,lambda_re,lambda_im,alpha,noise,replicate,seed,"
           "L00_re,L00_im,L01_re,L01_im,L10_re,L10_im,L11_re,L11_im,"
           "truth_L00_re,truth_L00_im,truth_L01_re,truth_L01_im,"
           "truth_L10_re,truth_L10_im,truth_L11_re,truth_L11_im,"
           "rel_frob_err,snapshot_rel_err,wall_ms\n";
}

void append_row(std::ofstream& out, const ReportRow& r) {
    out << r.preset << ',' << fmt(r.lambda.real()) << ',' << fmt(r.lambda.imag()) << ','
        << fmt(r.alpha) << ',' << fmt(r.noise) << ',' << r.replicate << ',';
    if (r.row_seed) out << *r.row_seed;
    out << ',';
    for (const Complex& v : r.L) out << fmt(v.real()) << ',' << fmt(v.imag()) << ',';
    for (const Complex& v : r.truth) out << fmt(v.real()) << ',' << fmt(v.imag()) << ',';
    out << fmt(r.rel_frob_err) << ',';
    if (r.snapshot_rel_err) out << fmt(*r.snapshot_rel_err);
    out << ',';
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    out << wall << '\n';
    out.flush();
}

void write_control_csv(const std::filesystem::path& path, const Grid& grid,
                       const BoundarySignal<Complex>& control) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "t,f_left_re,f_left_im,f_right_re,f_right_im\n";
    for (int j = 0; j < grid.n_t; ++j) {
        out << fmt(grid.t_nodes[j]) << ',' << fmt(control.left()[j].real()) << ','
            << fmt(control.left()[j].imag()) << ',' << fmt(control.right()[j].real()) << ','
            << fmt(control.right()[j].imag()) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_snapshot_csv(const std::filesystem::path& path, const Grid& grid,
                        const std::vector<Complex>& recon, const std::vector<Complex>& truth) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "x,u_recon_re,u_recon_im,u_elliptic_re,u_elliptic_im\n";
    for (int j = 0; j < grid.n_x; ++j) {
        out << fmt(grid.x_nodes[j]) << ',' << fmt(recon[j].real()) << ',' << fmt(recon[j].imag())
            << ',' << fmt(truth[j].real()) << ',' << fmt(truth[j].imag()) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentConfig cfg = config;
    validate(cfg);
    if (cfg.profile == "ci") cfg.n_x = 101;

    auto c_fun = resolve_coefficient(cfg.c_spec);
    auto q_fun = resolve_coefficient(cfg.q_spec);
    Grid grid = build_grid(cfg.x_min, cfg.x_max, cfg.n_x, cfg.t_final, c_fun);
    Coefficients coeff = Coefficients::sample(grid, c_fun, q_fun);
    check_control_horizon(grid);

    HyperbolicNdMap nd_clean = assemble_or_load(grid, coeff, cfg.cache_dir);
    OperatorSet ops = build_operators(grid);

    const std::array<Complex, 2> f2{Complex(cfg.boundary_data[0]), Complex(cfg.boundary_data[1])};
    std::vector<DenseMatrix<Complex>> truth(cfg.lambdas.size());
    std::vector<std::vector<Complex>> truth_snapshot(cfg.lambdas.size());
    for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
        truth[li] = elliptic_nd_map(grid, coeff, cfg.lambdas[li]).L;
        if (cfg.snapshot) truth_snapshot[li] = elliptic_solve(grid, coeff, cfg.lambdas[li], f2);
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());

    ExperimentReport report;
    report.report_path = cfg.out_dir / "report.csv";
    std::ofstream rep(report.report_path, std::ios::trunc);
    if (!rep) throw IoError("cannot open for writing: " + report.report_path.string());
    write_header(rep, cfg);

    bool any_freq = false;
    for (const Complex& l : cfg.lambdas) any_freq = any_freq || l != Complex(0.0);

    const int per_group = static_cast<int>(cfg.lambdas.size() * cfg.alphas.size());
    int job_index = 0;

    auto emit = [&](const JobOut& job) {
        char id[16];
        std::snprintf(id, sizeof id, "%04d", job_index);
        write_control_csv(cfg.out_dir / (std::string("control_") + id + ".csv"), grid, job.control);
        if (cfg.snapshot)
            write_snapshot_csv(cfg.out_dir / (std::string("snapshot_") + id + ".csv"), grid,
                               job.snap_recon, truth_snapshot[job.lambda_idx]);
        append_row(rep, job.row);
        report.rows.push_back(job.row);
        ++job_index;
    };

    for (std::size_t ni = 0; ni < cfg.noise_levels.size(); ++ni) {
        const double level = cfg.noise_levels[ni];
        for (int rep_idx = 0; rep_idx < cfg.replicates; ++rep_idx) {
            std::optional<std::uint64_t> draw_seed;
            std::optional<HyperbolicNdMap> noisy;
            const HyperbolicNdMap* nd = &nd_clean;
            if (level > 0) {
                draw_seed = sub_seed(*cfg.seed, static_cast<int>(ni), rep_idx);
                noisy = HyperbolicNdMap::from_lambda(add_noise(nd_clean.lambda, level, draw_seed),
                                                     grid.n_t);
                nd = &*noisy;
            }

            ConnectingOperator k = assemble_K(*nd, ops);
            RegularizedSystemFactory factory(k, ops, any_freq);

            auto run_one = [&](int gk) -> JobOut {
                const std::size_t li = static_cast<std::size_t>(gk) / cfg.alphas.size();
                const std::size_t ai = static_cast<std::size_t>(gk) % cfg.alphas.size();
                const Complex lambda = cfg.lambdas[li];
                const double alpha = cfg.alphas[ai];

                auto t0 = std::chrono::steady_clock::now();
                RegularizedSystem sys = factory.build(lambda, alpha);
                ReconstructionResult rec = reconstruct(sys, *nd, ops, cfg.snapshot, grid, coeff);
                ErrorMetrics metrics = error_metrics(rec.L_reconstructed, truth[li]);
                auto t1 = std::chrono::steady_clock::now();

                JobOut job;
                job.lambda_idx = li;
                job.row.preset = cfg.preset;
                job.row.lambda = lambda;
                job.row.alpha = alpha;
                job.row.noise = level;
                job.row.replicate = rep_idx;
                job.row.row_seed = level > 0 ? draw_seed : cfg.seed;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        job.row.L[static_cast<std::size_t>(2 * i + j)] = rec.L_reconstructed(i, j);
                        job.row.truth[static_cast<std::size_t>(2 * i + j)] = truth[li](i, j);
                    }
                job.row.rel_frob_err = metrics.rel_frobenius;
                job.control = control_for(rec, f2);
                if (cfg.snapshot) {
                    job.snap_recon = snapshot_for(rec, f2);
                    job.row.snapshot_rel_err = rel_2norm_error(job.snap_recon, truth_snapshot[li]);
                }
                job.row.wall_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                if (!std::isfinite(job.row.rel_frob_err) ||
                    (job.row.snapshot_rel_err && !std::isfinite(*job.row.snapshot_rel_err)))
                    throw NumericalError("non-finite error metric at lambda = " +
                                         std::to_string(lambda.real()) + "+" +
                                         std::to_string(lambda.imag()) + "i");
                return job;
            };

            if (cfg.workers > 1 && per_group > 1) {
                std::vector<JobOut> group(static_cast<std::size_t>(per_group));
                std::atomic<int> next{0};
                auto drain = [&] {
                    for (;;) {
                        int gk = next.fetch_add(1);
                        if (gk >= per_group) break;
                        group[static_cast<std::size_t>(gk)] = run_one(gk);
                    }
                };
                std::vector<std::thread> pool;
                const int n_threads = std::min(cfg.workers, per_group);
                pool.reserve(static_cast<std::size_t>(n_threads - 1));
                for (int t = 1; t < n_threads; ++t) pool.emplace_back(drain);
                drain();
                for (std::thread& t : pool) t.join();
                for (const JobOut& job : group) emit(job);
            } else {
                for (int gk = 0; gk < per_group; ++gk) emit(run_one(gk));
            }
        }
    }
    return report;
}

}  // namespace wavend
