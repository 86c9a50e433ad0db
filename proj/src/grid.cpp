#include "wavend/grid.hpp"

#include <cmath>
#include <iostream>
#include <string>

namespace wavend {

Grid build_grid(double x_min, double x_max, int n_x, double t_final,
                const std::function<double(double)>& c) {
    if (!(x_max > x_min))
        throw DegenerateGrid("x_max must exceed x_min, got [" + std::to_string(x_min) + ", " +
                             std::to_string(x_max) + "]");
    if (n_x < 3) throw DegenerateGrid("need at least 3 space nodes, got " + std::to_string(n_x));
    if (!(t_final > 0)) throw DegenerateGrid("t_final must be positive, got " + std::to_string(t_final));

    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_x = n_x;
    g.dx = (x_max - x_min) / (n_x - 1);
    g.t_final = t_final;

    g.x_nodes.resize(n_x);
    for (int j = 0; j < n_x; ++j) g.x_nodes[j] = x_min + j * g.dx;
    g.x_nodes.back() = x_max;

    double c_max = 0;
    double inv_c_sum = 0;
    for (int j = 0; j < n_x; ++j) {
        double cj = c(g.x_nodes[j]);
        if (!(cj > 0) || !std::isfinite(cj))
            throw NonPositiveSpeed("wave speed must be positive and finite, got " + std::to_string(cj) +
                                   " at x = " + std::to_string(g.x_nodes[j]));
        c_max = std::max(c_max, cj);
        double w = (j == 0 || j == n_x - 1) ? 0.5 : 1.0;
        inv_c_sum += w / cj;
    }
    g.tau_max = g.dx * inv_c_sum;

    // Shrink-only rounding: an exactly divisible t_final / dt0 must not gain a
    // step from the last ulp of the division.
    double dt0 = 4.0 * g.dx / (5.0 * c_max);
    g.n_t = static_cast<int>(std::ceil(t_final / dt0 * (1.0 - 1e-12))) + 1;
    g.dt = t_final / (g.n_t - 1);

    g.t_nodes.resize(g.n_t);
    for (int j = 0; j < g.n_t; ++j) g.t_nodes[j] = j * g.dt;

    return g;
}

std::vector<double> trapezoid_weights(int n, double dt) {
    if (n < 2) throw DegenerateGrid("trapezoid weights need at least 2 nodes, got " + std::to_string(n));
    std::vector<double> w(n, dt);
    w.front() = 0.5 * dt;
    w.back() = 0.5 * dt;
    return w;
}

void check_control_horizon(const Grid& grid) {
    if (grid.tau_max >= grid.t_final)
        throw HorizonTooShort("control horizon t_final = " + std::to_string(grid.t_final) +
                              " does not exceed the travel time tau_max = " +
                              std::to_string(grid.tau_max));
    if (grid.tau_max > 0.99 * grid.t_final)
        std::cerr << "warning: t_final = " << grid.t_final << " is within 1% of the travel time "
                  << grid.tau_max << "; reconstruction quality may degrade\n";
}

}  // namespace wavend
