#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "wavend/coefficients.hpp"
#include "wavend/dense_matrix.hpp"
#include "wavend/grid.hpp"
#include "wavend/signal.hpp"

namespace wavend {

/// Space-time wave field, one row of n_x values per time step.
template <typename Scalar>
struct WaveField {
    int n_steps = 0;
    int n_x = 0;
    double dt = 0;
    std::vector<Scalar> u;  // n_steps * n_x, row-major

    Scalar* step(int s) { return u.data() + static_cast<std::size_t>(s) * n_x; }
    const Scalar* step(int s) const { return u.data() + static_cast<std::size_t>(s) * n_x; }
};

/// Leapfrog solve of u_tt = c^2 u_xx - q u with zero initial data and
/// prescribed Neumann data f (outward derivative: -u_x on the left endpoint,
/// +u_x on the right), imposed through second-order ghost nodes.
///
/// f must use the extended layout; entries at steps >= n_steps are ignored.
/// The value f(0) is never read: the first two time levels are zero.
template <typename Scalar>
WaveField<Scalar> wave_solve(const Grid& grid, const Coefficients& coeff,
                             const BoundarySignal<Scalar>& f, int n_steps) {
    if (f.layout != SignalLayout::extended || f.block_len != 2 * grid.n_t)
        throw ShapeMismatch("wave_solve expects an extended-layout signal with block length " +
                            std::to_string(2 * grid.n_t));
    if (n_steps < 1 || n_steps > 2 * grid.n_t)
        throw ShapeMismatch("wave_solve step count " + std::to_string(n_steps) +
                            " outside [1, " + std::to_string(2 * grid.n_t) + "]");
    if (static_cast<int>(coeff.c.size()) != grid.n_x || static_cast<int>(coeff.q.size()) != grid.n_x)
        throw ShapeMismatch("coefficient samples do not match the grid");

    const int n = grid.n_x;
    const double dt = grid.dt;
    const double dx = grid.dx;
    const double c_max = *std::max_element(coeff.c.begin(), coeff.c.end());
    if (c_max * dt / dx > 0.8 * (1.0 + 1e-9))
        throw CFLViolation("Courant number " + std::to_string(c_max * dt / dx) + " exceeds 4/5");

    std::vector<double> a(n), b(n);
    for (int j = 0; j < n; ++j) {
        a[j] = dt * dt * coeff.c[j] * coeff.c[j] / (dx * dx);
        b[j] = 2.0 - 2.0 * a[j] - dt * dt * coeff.q[j];
    }

    WaveField<Scalar> field;
    field.n_steps = n_steps;
    field.n_x = n;
    field.dt = dt;
    field.u.assign(static_cast<std::size_t>(n_steps) * n, Scalar(0));

    for (int s = 1; s + 1 < n_steps; ++s) {
        const Scalar* prev = field.step(s - 1);
        const Scalar* cur = field.step(s);
        Scalar* next = field.step(s + 1);
        next[0] = b[0] * cur[0] - prev[0] + a[0] * (2.0 * cur[1] + 2.0 * dx * f.left()[s]);
        for (int j = 1; j + 1 < n; ++j)
            next[j] = b[j] * cur[j] - prev[j] + a[j] * (cur[j - 1] + cur[j + 1]);
        next[n - 1] =
            b[n - 1] * cur[n - 1] - prev[n - 1] + a[n - 1] * (2.0 * cur[n - 2] + 2.0 * dx * f.right()[s]);
    }
    return field;
}

/// Boundary data to boundary values map of the time-domain problem, sampled
/// on the extended axis, with its restriction to the control horizon.
struct HyperbolicNdMap {
    int n_t = 0;
    DenseMatrix<double> lambda;    // 4 n_t x 4 n_t
    DenseMatrix<double> lambda_T;  // 2 n_t x 2 n_t

    static HyperbolicNdMap from_lambda(DenseMatrix<double> full, int n_t);
};

/// Assembles the map from two impulse solves (one per side) using the
/// time-shift structure of the constant-in-time-coefficient problem.
HyperbolicNdMap assemble_hyperbolic_nd_map(const Grid& grid, const Coefficients& coeff);

/// Cache key over the grid geometry and coefficient samples.
std::uint64_t nd_map_cache_key(const Grid& grid, const Coefficients& coeff);

/// Loads the map from cache_dir when a matching file exists, otherwise
/// assembles and stores it. Without a cache_dir this is a plain assembly.
HyperbolicNdMap assemble_or_load(const Grid& grid, const Coefficients& coeff,
                                 const std::optional<std::filesystem::path>& cache_dir);

}  // namespace wavend
