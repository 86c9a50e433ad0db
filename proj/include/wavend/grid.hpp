#pragma once

#include <functional>
#include <vector>

#include "wavend/errors.hpp"

namespace wavend {

/// Uniform space-time grid on [x_min, x_max] x [0, t_final].
///
/// The time step is chosen from the CFL-stable candidate dt0 = 4 dx / (5 max c)
/// and then shrunk so that an integer number of steps lands exactly on t_final.
/// Boundary signals live either on the control horizon [0, t_final] (n_t nodes
/// per side) or on the doubled axis [0, 2 t_final + dt] (2 n_t nodes per side).
struct Grid {
    double x_min = 0;
    double x_max = 0;
    int n_x = 0;
    double dx = 0;

    double t_final = 0;
    int n_t = 0;
    double dt = 0;

    std::vector<double> x_nodes;  // n_x entries
    std::vector<double> t_nodes;  // n_t entries covering [0, t_final]

    /// Travel time across the interval in the metric dx / c (trapezoid rule).
    double tau_max = 0;

    int horizon_len() const { return 2 * n_t; }
    int extended_len() const { return 4 * n_t; }

    /// Extended-axis node j (0-based, j < 2 n_t).
    double extended_t(int j) const { return j * dt; }
};

/// Builds the grid; c is the wave speed used for the CFL bound and tau_max.
Grid build_grid(double x_min, double x_max, int n_x, double t_final,
                const std::function<double(double)>& c);

/// Trapezoid quadrature weights for n uniform nodes with spacing dt:
/// dt * (1/2, 1, ..., 1, 1/2).
std::vector<double> trapezoid_weights(int n, double dt);

/// Enforces tau_max < t_final (sharp observability threshold). Throws
/// HorizonTooShort past the threshold and warns on stderr within 1% of it.
void check_control_horizon(const Grid& grid);

}  // namespace wavend
