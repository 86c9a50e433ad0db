// Acceptance gate: runs the ten shipping criteria end to end, printing one
// PASS/FAIL line per clause with the measured values. Verdicts go to stdout,
// progress lines to stderr.
//
// Default exit status is 0 only if every clause passes. Five clauses carry
// frozen tolerances that the corrected solver does not reach (see README
// "Acceptance status"); --expect-documented-failures exits 0 when the failing
// set is exactly that documented set AND the stricter fallback bounds
// recorded for each of them hold, so any regression — a documented failure
// getting worse, or a passing clause breaking — still fails the gate.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wavend/coefficients.hpp"
#include "wavend/elliptic.hpp"
#include "wavend/experiment.hpp"
#include "wavend/grid.hpp"
#include "wavend/noise.hpp"
#include "wavend/operators.hpp"
#include "wavend/reconstruction.hpp"
#include "wavend/wave.hpp"

using namespace wavend;
namespace fs = std::filesystem;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct Gate {
    std::vector<std::pair<std::string, bool>> clauses;
    std::vector<std::pair<std::string, bool>> fallbacks;

    void clause(const std::string& id, bool pass, const std::string& detail) {
        std::printf("[%-11s] %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        clauses.emplace_back(id, pass);
    }
    void fallback(const std::string& what, bool ok) { fallbacks.emplace_back(what, ok); }
};

void progress(const std::string& what) { std::fprintf(stderr, "-- %s\n", what.c_str()); }

std::string pct(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.4g%%", 100.0 * x);
    return b;
}

std::string num(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

Coefficients sampled(const Grid& g, const std::string& c_spec, const std::string& q_spec) {
    return Coefficients::sample(g, resolve_coefficient(c_spec), resolve_coefficient(q_spec));
}

const ReportRow* row_at_noise(const ExperimentReport& rep, double noise) {
    for (const ReportRow& r : rep.rows)
        if (r.noise == noise) return &r;
    return nullptr;
}

// report body with the timestamped comment line and the wall_ms column
// removed — the documented determinism carve-out
std::vector<std::string> body_lines(const fs::path& report) {
    std::ifstream in(report);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        lines.push_back(line.substr(0, line.find_last_of(',')));
    }
    return lines;
}

double weighted_frob(const DenseMatrix<double>& x, int block, double dt) {
    std::vector<double> w = trapezoid_weights(block, dt);
    auto wt = [&](std::size_t i) { return std::sqrt(w[i % static_cast<std::size_t>(block)]); };
    double sum = 0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double v = wt(i) * x(i, j) * wt(j);
            sum += v * v;
        }
    return std::sqrt(sum);
}

// || W M - (R M R)^T W ||_F / || W M ||_F with per-block trapezoid weights
// and per-block time reversal
double reversal_asymmetry(const DenseMatrix<double>& m, int n_t, double dt) {
    std::vector<double> w = trapezoid_weights(n_t, dt);
    const std::size_t n = static_cast<std::size_t>(n_t);
    auto flip = [&](std::size_t i) { return (i / n) * n + (n - 1 - i % n); };
    double numer = 0, denom = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double a = w[i % n] * m(i, j);
            double b = m(flip(j), flip(i)) * w[j % n];
            numer += (a - b) * (a - b);
            denom += a * a;
        }
    return std::sqrt(numer / denom);
}

double plain_weighted_asymmetry(const DenseMatrix<double>& m, int n_t, double dt) {
    std::vector<double> w = trapezoid_weights(n_t, dt);
    const std::size_t n = static_cast<std::size_t>(n_t);
    double numer = 0, denom = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double a = w[i % n] * m(i, j);
            double b = m(j, i) * w[j % n];
            numer += (a - b) * (a - b);
            denom += a * a;
        }
    return std::sqrt(numer / denom);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavend acceptance suite"};
    std::string work_str = "acceptance_work";
    std::string cache_str;
    bool expect_documented = false;
    app.add_option("--work", work_str, "working directory for experiment outputs");
    app.add_option("--cache", cache_str, "boundary-map cache directory (default <work>/ndcache)");
    app.add_flag("--expect-documented-failures", expect_documented,
                 "exit 0 when the failing clauses are exactly the documented set "
                 "and their fallback bounds hold");
    CLI11_PARSE(app, argc, argv);

    const fs::path work = work_str;
    const fs::path cache = cache_str.empty() ? work / "ndcache" : fs::path(cache_str);
    fs::create_directories(work);
    fs::create_directories(cache);

    Gate gate;
    const double kPi = 4.0 * std::atan(1.0);

    // ------------------------------------------------------------------
    // 1. Ground-truth maps: reference values for the two benchmark
    //    coefficient pairs, entrywise 1e-3 at 401 nodes, < 1 s each.
    {
        progress("criterion 1: ground-truth maps at 401 nodes");
        const double table1[2][2] = {{1.3495, 0.6534}, {0.6534, 1.6640}};
        const double table2[2][2] = {{1.2005, 0.3985}, {0.3985, 1.1645}};
        auto check = [&](const std::string& c_spec, const double (&want)[2][2], double& err,
                         double& secs) {
            Grid g = build_grid(-1.0, 1.0, 401, 4.0, resolve_coefficient(c_spec));
            Coefficients co = sampled(g, c_spec, "1/(x+2)");
            Stopwatch sw;
            EllipticNdMap m = elliptic_nd_map(g, co, Complex(0.0));
            secs = sw.seconds();
            err = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    err = std::max(err, std::abs(m.L(i, j) - Complex(want[i][j])));
        };
        double e1 = 0, e2 = 0, t1 = 0, t2 = 0;
        check("1", table1, e1, t1);
        check("cos((x+1)/2)", table2, e2, t2);
        bool pass = e1 <= 1e-3 && e2 <= 1e-3 && t1 < 1.0 && t2 < 1.0;
        gate.clause("1", pass,
                    "ground truth: max|err| " + num(e1) + " / " + num(e2) +
                        " (tol 1e-3); runtimes " + num(t1) + " s / " + num(t2) + " s (< 1 s)");
    }

    // ------------------------------------------------------------------
    // 7. Exact operator identities on the production grid, < 5 s.
    //    (Run before the experiments so its operator set can be reused.)
    Grid g_full = build_grid(-1.0, 1.0, 401, 4.0, resolve_coefficient("1"));
    OperatorSet ops_full;
    {
        progress("criterion 7: operator identities at full scale");
        Stopwatch sw;
        ops_full = build_operators(g_full);
        const std::size_t n2 = static_cast<std::size_t>(2 * g_full.n_t);
        DenseMatrix<double> eye = DenseMatrix<double>::identity(n2);
        double r2 = max_abs_diff(ops_full.R * ops_full.R, eye);
        double pp = max_abs_diff(ops_full.P_T * ops_full.P_T_star, eye);
        double zr = max_abs_diff(ops_full.Z, (ops_full.R * ops_full.int1) * ops_full.R);

        std::vector<double> ones(n2, 1.0);
        std::vector<double> s_ones = ops_full.S * ones;
        const double half_t2 = g_full.t_final * g_full.t_final / 2.0;
        double s_err = std::max(std::abs(s_ones[0] - half_t2), std::abs(s_ones[1] - half_t2));

        std::vector<double> ext(2 * n2, 0.0);
        for (std::size_t j = 0; j < n2; ++j) {
            ext[j] = 3.0;
            ext[n2 + j] = -1.5;
        }
        std::vector<double> jv = ops_full.J * ext;
        double j_err = 0;
        for (int s = 0; s < 2; ++s)
            for (int i = 0; i < g_full.n_t; ++i) {
                double want = (g_full.t_final - g_full.t_nodes[i]) * (s == 0 ? 3.0 : -1.5);
                j_err = std::max(j_err,
                                 std::abs(jv[static_cast<std::size_t>(s * g_full.n_t + i)] - want));
            }
        double secs = sw.seconds();
        bool pass = r2 == 0 && pp == 0 && zr == 0 && s_err <= 1e-10 && j_err <= 1e-10 && secs < 5.0;
        gate.clause("7", pass,
                    "identities: R^2 " + num(r2) + ", P P* " + num(pp) + ", Z vs flip " + num(zr) +
                        ", S*1 " + num(s_err) + ", J*const " + num(j_err) + "; " + num(secs) +
                        " s (< 5 s)");
    }

    // ------------------------------------------------------------------
    // 2 + 4. Euclidean benchmark at full scale: noise-free accuracy and
    //    runtime budget, then the noise trend over three master seeds.
    double full_secs = 0;
    std::vector<std::array<double, 3>> trend;  // per seed: errors at 1/2/5% noise
    std::vector<bool> trend_increasing, trend_in_windows;
    double clean_full = -1;
    {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            progress("criteria 2+4: full-scale noise ladder, seed " + std::to_string(seed));
            ExperimentConfig cfg = preset_config("exp1");
            cfg.seed = seed;
            cfg.cache_dir = cache;
            cfg.out_dir = work / ("exp1_full_seed" + std::to_string(seed));
            Stopwatch sw;
            ExperimentReport rep = run_experiment(cfg);
            if (seed == 1) {
                full_secs = sw.seconds();
                clean_full = row_at_noise(rep, 0.0)->rel_frob_err;
            }
            std::array<double, 3> cells{row_at_noise(rep, 0.01)->rel_frob_err,
                                        row_at_noise(rep, 0.02)->rel_frob_err,
                                        row_at_noise(rep, 0.05)->rel_frob_err};
            trend.push_back(cells);
            trend_increasing.push_back(cells[0] < cells[1] && cells[1] < cells[2]);
            const double paper[3] = {0.0195, 0.0431, 0.114};
            bool in_windows = true;
            for (int i = 0; i < 3; ++i)
                in_windows = in_windows && cells[static_cast<std::size_t>(i)] >= paper[i] / 2 &&
                             cells[static_cast<std::size_t>(i)] <= paper[i] * 2;
            trend_in_windows.push_back(in_windows);
        }

        progress("criterion 2: ci profile");
        ExperimentConfig ci = preset_config("exp1");
        ci.profile = "ci";
        ci.noise_levels = {0.0};
        ci.cache_dir = cache;
        ci.out_dir = work / "exp1_ci";
        Stopwatch sw;
        ExperimentReport rep = run_experiment(ci);
        double ci_secs = sw.seconds();
        double clean_ci = rep.rows[0].rel_frob_err;

        bool pass = clean_full >= 0.003 && clean_full <= 0.020 && full_secs <= 600.0 &&
                    clean_ci <= 0.06 && ci_secs <= 30.0;
        gate.clause("2", pass,
                    "noise-free: full " + pct(clean_full) + " in [0.3%, 2%], run " +
                        num(full_secs) + " s (<= 600); ci " + pct(clean_ci) + " <= 6%, " +
                        num(ci_secs) + " s (<= 30)");
    }
    {
        int good = 0, increasing = 0;
        std::string detail;
        for (std::size_t s = 0; s < trend.size(); ++s) {
            bool ok = trend_in_windows[s] && trend_increasing[s];
            good += ok;
            increasing += trend_increasing[s];
            detail += "seed" + std::to_string(s + 1) + " " + num(100 * trend[s][0]) + "/" +
                      num(100 * trend[s][1]) + "/" + num(100 * trend[s][2]) + "%" +
                      (trend_increasing[s] ? "" : " (non-mono)") + "  ";
        }
        bool pass = good >= 2;
        gate.clause("4", pass,
                    "noise trend vs 1.95/4.31/11.4% x2 windows: " + detail + "-> " +
                        std::to_string(good) + "/3 seeds (need 2)");
        gate.fallback("4: strictly increasing for >= 2/3 seeds", increasing >= 2);
    }

    // ------------------------------------------------------------------
    // 3. Non-Euclidean benchmark, noise-free, full scale.
    {
        progress("criterion 3: non-Euclidean benchmark at full scale");
        ExperimentConfig cfg = preset_config("exp3");
        cfg.noise_levels = {0.0};
        cfg.cache_dir = cache;
        cfg.out_dir = work / "exp3_full";
        ExperimentReport rep = run_experiment(cfg);
        double err = rep.rows[0].rel_frob_err;
        bool pass = err >= 0.003 && err <= 0.025;
        gate.clause("3", pass, "non-Euclidean noise-free: " + pct(err) + " in [0.3%, 2.5%]");
    }

    // ------------------------------------------------------------------
    // 5. Regularization sweep at full scale.
    {
        progress("criterion 5: regularization sweep at full scale");
        ExperimentConfig cfg = preset_config("exp2");
        cfg.cache_dir = cache;
        cfg.out_dir = work / "exp2_full";
        ExperimentReport rep = run_experiment(cfg);
        std::vector<double> err;
        for (const ReportRow& r : rep.rows) err.push_back(r.rel_frob_err);  // alpha 1e-1..1e-10

        bool monotone_6 = true;
        for (int i = 0; i + 1 < 6; ++i) monotone_6 = monotone_6 && err[i + 1] <= err[i] * (1 + 1e-12);
        double reduction = err[0] / err[5];
        bool pass = monotone_6 && reduction >= 10.0;

        std::string detail = "errors ";
        for (int i = 0; i < 6; ++i) detail += num(100 * err[static_cast<std::size_t>(i)]) + (i < 5 ? "/" : "% ");
        detail += "over alpha 1e-1..1e-6; reduction " + num(reduction) + "x (need 10x, monotone)";
        gate.clause("5", pass, detail);

        bool monotone_4 = true;
        for (int i = 0; i + 1 < 4; ++i) monotone_4 = monotone_4 && err[i + 1] <= err[i] * (1 + 1e-12);
        std::size_t arg_min =
            static_cast<std::size_t>(std::min_element(err.begin(), err.end()) - err.begin());
        bool tail_flat = true;
        for (std::size_t i = arg_min; i < err.size(); ++i)
            tail_flat = tail_flat && err[i] <= 1.10 * err[arg_min];
        gate.fallback("5: monotone nonincreasing over alpha = 1e-1..1e-4", monotone_4);
        gate.fallback("5: error floor <= 1%", err[arg_min] <= 0.01);
        gate.fallback("5: total reduction >= 5x", reduction >= 5.0);
        gate.fallback("5: post-minimum rise <= 10% relative", tail_flat);
    }

    // ------------------------------------------------------------------
    // 6. Frequency sweep at full scale: resonance localization on the real
    //    axis, uniform accuracy on the imaginary axis.
    {
        progress("criterion 6: frequency sweep, real axis (159 points)");
        ExperimentConfig cfg = preset_config("exp4-real");
        cfg.cache_dir = cache;
        cfg.out_dir = work / "exp4_real";
        ExperimentReport rep = run_experiment(cfg);

        double baseline = -1;
        for (const ReportRow& r : rep.rows)
            if (r.lambda == Complex(0.0)) baseline = *r.snapshot_rel_err;

        const double win1 = kPi, win2 = kPi * kPi / 4 + kPi;
        auto in_window = [&](double l) {
            return std::abs(l - win1) <= 0.3 || std::abs(l - win2) <= 0.3;
        };
        int violations = 0;
        double worst_ratio = 0, worst_lambda = 0, spike1 = 0, spike2 = 0;
        for (const ReportRow& r : rep.rows) {
            double ratio = *r.snapshot_rel_err / baseline;
            double l = r.lambda.real();
            if (std::abs(l - win1) <= 0.3) spike1 = std::max(spike1, ratio);
            if (std::abs(l - win2) <= 0.3) spike2 = std::max(spike2, ratio);
            if (ratio > 10.0 && !in_window(l)) {
                ++violations;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_lambda = l;
                }
            }
        }
        bool real_pass = violations == 0;
        std::string detail = "baseline " + num(baseline) + "; spikes " + num(spike1) + "x near " +
                             num(win1) + ", " + num(spike2) + "x near " + num(win2) + "; " +
                             std::to_string(violations) + "/159 points exceed 10x outside windows";
        if (violations > 0)
            detail += " (worst " + num(worst_ratio) + "x at lambda=" + num(worst_lambda) + ")";
        gate.clause("6-real", real_pass, detail);
        gate.fallback("6: spike >= 10x inside both eigenvalue windows",
                      spike1 >= 10.0 && spike2 >= 10.0);

        progress("criterion 6: frequency sweep, imaginary axis (159 points)");
        ExperimentConfig icfg = preset_config("exp4-imag");
        icfg.cache_dir = cache;
        icfg.out_dir = work / "exp4_imag";
        ExperimentReport irep = run_experiment(icfg);
        double imax = 0, iworst = 0;
        for (const ReportRow& r : irep.rows)
            if (*r.snapshot_rel_err > imax) {
                imax = *r.snapshot_rel_err;
                iworst = r.lambda.imag();
            }
        gate.clause("6-imag", imax <= 0.05,
                    "imaginary axis max " + pct(imax) + " at lambda=" + num(iworst) +
                        "i (<= 5% everywhere)");
    }

    // ------------------------------------------------------------------
    // 8. Oracle suite on the full-scale Euclidean configuration.
    {
        progress("criterion 8: oracle suite at full scale");
        Coefficients co = sampled(g_full, "1", "1/(x+2)");
        HyperbolicNdMap nd = assemble_or_load(g_full, co, cache);
        ConnectingOperator k = assemble_K(nd, ops_full);
        const int n_t = g_full.n_t;
        std::vector<double> w = trapezoid_weights(n_t, g_full.dt);

        // Blagoveshchenskii pairing on 5 random smooth pulse pairs
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0.25, 1.75);
        double blago_worst = 0;
        for (int trial = 0; trial < 5; ++trial) {
            double a1 = U(rng), b1 = U(rng), a2 = U(rng), b2 = U(rng);
            auto f = BoundarySignal<double>::zeros(SignalLayout::horizon, n_t);
            auto h = BoundarySignal<double>::zeros(SignalLayout::horizon, n_t);
            for (int j = 0; j < n_t; ++j) {
                double t = g_full.t_nodes[j];
                f.left()[j] = std::sin(a1 * t) * t * t * std::exp(-t);
                f.right()[j] = std::cos(b1 * t) * t * t / (1.0 + t);
                h.left()[j] = std::sin(a2 * t + 0.3) * t * t * std::exp(-0.5 * t);
                h.right()[j] = std::sin(b2 * t) * t * t * 0.5;
            }
            std::vector<double> kh = k.K * h.values;
            double lhs = 0;
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j < n_t; ++j) lhs += w[j] * f.values[s * n_t + j] * kh[s * n_t + j];
            WaveField<double> uf = wave_solve(g_full, co, zero_extend(f), n_t);
            WaveField<double> uh = wave_solve(g_full, co, zero_extend(h), n_t);
            const double* ufT = uf.step(n_t - 1);
            const double* uhT = uh.step(n_t - 1);
            double rhs = 0;
            for (int j = 0; j < g_full.n_x; ++j) {
                double wx = (j == 0 || j == g_full.n_x - 1) ? g_full.dx / 2 : g_full.dx;
                rhs += wx * ufT[j] * uhT[j] / (co.c[j] * co.c[j]);
            }
            blago_worst = std::max(blago_worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        gate.clause("8-blago", blago_worst <= 0.01,
                    "final-time pairing vs interior fields: worst " + pct(blago_worst) +
                        " over 5 pairs (<= 1%)");

        // commutativity of the horizon map with the double time integral
        double commute_worst = 0;
        const double commute_tol = 10.0 * (g_full.dt + g_full.dx * g_full.dx);
        for (int trial = 0; trial < 5; ++trial) {
            double a1 = U(rng), b1 = U(rng);
            std::vector<double> f(static_cast<std::size_t>(2 * n_t));
            for (int j = 0; j < n_t; ++j) {
                double t = g_full.t_nodes[j];
                f[static_cast<std::size_t>(j)] = std::sin(a1 * t) * t * std::exp(-t);
                f[static_cast<std::size_t>(n_t + j)] = std::cos(b1 * t) * t * t * 0.25;
            }
            std::vector<double> ab = nd.lambda_T * (ops_full.int2 * f);
            std::vector<double> ba = ops_full.int2 * (nd.lambda_T * f);
            double diff = 0, norm = 0;
            for (std::size_t j = 0; j < f.size(); ++j) {
                diff += (ab[j] - ba[j]) * (ab[j] - ba[j]);
                norm += f[j] * f[j];
            }
            commute_worst = std::max(commute_worst, std::sqrt(diff / norm));
        }
        gate.clause("8-commute", commute_worst <= commute_tol,
                    "commutator residual " + num(commute_worst) + " (tol 10(dt+dx^2) = " +
                        num(commute_tol) + ")");

        double ksym = plain_weighted_asymmetry(k.K, n_t, g_full.dt);
        gate.clause("8-ksym", ksym <= 0.02,
                    "weighted asymmetry of K " + pct(ksym) + " (<= 2%)");

        double lsym = reversal_asymmetry(nd.lambda_T, n_t, g_full.dt);
        gate.clause("8-lamTsym", lsym <= 0.02,
                    "weighted reversal asymmetry of the horizon map " + pct(lsym) + " (<= 2%)");
        gate.fallback("8: horizon-map reversal asymmetry <= 3.5%", lsym <= 0.035);

        // finite-speed band: the impulse response is exactly zero below the
        // discrete light cone (one cell per step)
        double cone_worst = 0;
        for (int m : {n_t / 5, n_t / 2}) {
            std::size_t col = static_cast<std::size_t>(m);  // left-side impulse at t_m
            double colmax = 0;
            for (std::size_t i = 0; i < nd.lambda.rows(); ++i)
                colmax = std::max(colmax, std::abs(nd.lambda(i, col)));
            const int arrival = m + (g_full.n_x - 1) - 1;  // first step the far side can move
            double band = 0;
            for (int j = 0; j < arrival && j < 2 * n_t; ++j)
                band = std::max(band, std::abs(nd.lambda(static_cast<std::size_t>(2 * n_t + j), col)));
            cone_worst = std::max(cone_worst, band / colmax);
        }
        gate.clause("8-cone", cone_worst <= 1e-6,
                    "pre-arrival band / column max = " + num(cone_worst) + " (<= 1e-6)");
    }

    // ------------------------------------------------------------------
    // 9. Stability probes (101-node profile; the bound is scale-free).
    {
        progress("criterion 9: stability probes at ci scale");
        Grid g = build_grid(-1.0, 1.0, 101, 4.0, resolve_coefficient("1"));
        Coefficients co = sampled(g, "1", "1/(x+2)");
        HyperbolicNdMap nd = assemble_or_load(g, co, cache);
        OperatorSet ops = build_operators(g);
        ConnectingOperator k = assemble_K(nd, ops);

        const double bound = std::sqrt(2.0) * g.t_final;
        int held = 0;
        double worst_ratio = 0;
        for (int s = 0; s < 10; ++s) {
            DenseMatrix<double> pert = add_noise(nd.lambda, 0.01, 1000 + s);
            ConnectingOperator kp = assemble_K(HyperbolicNdMap::from_lambda(pert, g.n_t), ops);
            double dk = weighted_frob(kp.K - k.K, 2 * g.n_t, g.dt);
            double dl = weighted_frob(pert - nd.lambda, 4 * g.n_t, g.dt);
            double ratio = dk / (bound * dl);
            worst_ratio = std::max(worst_ratio, ratio);
            held += dk <= bound * dl;
        }
        bool kbound_pass = held == 10;
        gate.clause("9-kbound", kbound_pass,
                    "||dK||_W <= sqrt(2) T ||dData||_W held " + std::to_string(held) +
                        "/10, max ratio " + num(worst_ratio));

        int seeds_ok = 0;
        std::string detail;
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            double lo = 0, hi = 0;
            std::string ratios;
            int i = 0;
            for (double level : {0.005, 0.01, 0.02}) {
                DenseMatrix<double> pert = add_noise(nd.lambda, level, seed);
                StabilityProbe p = stability_probe(nd, HyperbolicNdMap::from_lambda(pert, g.n_t),
                                                   ops, Complex(0.0), 1e-4);
                double r = *p.ratio;
                lo = i == 0 ? r : std::min(lo, r);
                hi = i == 0 ? r : std::max(hi, r);
                ratios += num(r) + (i < 2 ? "/" : "");
                ++i;
            }
            double spread = hi / lo;
            seeds_ok += spread <= 3.0;
            detail += "seed" + std::to_string(seed) + " " + ratios + " (x" + num(spread) + ")  ";
        }
        bool lip_pass = seeds_ok == 3;
        gate.clause("9-lipschitz", lip_pass,
                    "response ratio across 0.5/1/2% noise: " + detail + "(spread <= 3x)");
        gate.fallback("9: K-bound held and >= 1 seed within 3x",
                      kbound_pass && seeds_ok >= 1);
    }

    // ------------------------------------------------------------------
    // 10. Determinism: identical seeds reproduce the report byte for byte
    //     (minus the timestamped comment line and the wall_ms column).
    {
        progress("criterion 10: determinism rerun");
        ExperimentConfig cfg = preset_config("exp1");
        cfg.profile = "ci";
        cfg.cache_dir = cache;
        cfg.out_dir = work / "det_a";
        run_experiment(cfg);
        cfg.out_dir = work / "det_b";
        run_experiment(cfg);
        std::vector<std::string> a = body_lines(work / "det_a" / "report.csv");
        std::vector<std::string> b = body_lines(work / "det_b" / "report.csv");
        bool pass = !a.empty() && a == b;
        gate.clause("10", pass,
                    "rerun with identical seed: " + std::to_string(a.size()) +
                        " report lines byte-identical = " + (pass ? "yes" : "NO") +
                        " (timestamp header and wall_ms column excluded)");
    }

    // ------------------------------------------------------------------
    std::set<std::string> failing;
    for (const auto& [id, pass] : gate.clauses)
        if (!pass) failing.insert(id);

    std::printf("\n== summary ==\n%zu of %zu clauses pass\n", gate.clauses.size() - failing.size(),
                gate.clauses.size());
    if (!failing.empty()) {
        std::printf("failing:");
        for (const std::string& id : failing) std::printf(" %s", id.c_str());
        std::printf("\n");
    }

    bool fallbacks_ok = true;
    for (const auto& [what, ok] : gate.fallbacks) {
        std::printf("[fallback] %s  %s\n", ok ? "OK " : "BAD", what.c_str());
        fallbacks_ok = fallbacks_ok && ok;
    }

    if (!expect_documented) return failing.empty() ? 0 : 1;

    const std::set<std::string> documented = {"4", "5", "6-real", "8-lamTsym", "9-lipschitz"};
    bool match = failing == documented;
    std::printf("documented-failure gate: failing set %s the documented set; fallback bounds %s\n",
                match ? "matches" : "DOES NOT match", fallbacks_ok ? "all hold" : "VIOLATED");
    return match && fallbacks_ok ? 0 : 1;
}
