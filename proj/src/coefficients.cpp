#include "wavend/coefficients.hpp"

#include <cmath>
#include <string>

namespace wavend {

Coefficients Coefficients::sample(const Grid& grid, const std::function<double(double)>& c_fun,
                                  const std::function<double(double)>& q_fun) {
    Coefficients coeff;
    coeff.c.resize(grid.n_x);
    coeff.q.resize(grid.n_x);
    for (int j = 0; j < grid.n_x; ++j) {
        double x = grid.x_nodes[j];
        double cj = c_fun(x);
        double qj = q_fun(x);
        if (!(cj > 0) || !std::isfinite(cj))
            throw NonPositiveSpeed("wave speed must be positive and finite, got " +
                                   std::to_string(cj) + " at x = " + std::to_string(x));
        if (!std::isfinite(qj))
            throw ConfigError("potential must be finite, got " + std::to_string(qj) + " at x = " +
                              std::to_string(x));
        coeff.c[j] = cj;
        coeff.q[j] = qj;
    }
    return coeff;
}

}  // namespace wavend
