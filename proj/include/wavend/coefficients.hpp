#pragma once

#include <functional>
#include <vector>

#include "wavend/grid.hpp"

namespace wavend {

/// Wave speed and potential sampled at the grid's space nodes.
struct Coefficients {
    std::vector<double> c;
    std::vector<double> q;

    static Coefficients sample(const Grid& grid, const std::function<double(double)>& c_fun,
                               const std::function<double(double)>& q_fun);
};

}  // namespace wavend
