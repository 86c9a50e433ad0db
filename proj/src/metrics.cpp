#include "wavend/metrics.hpp"

#include <cmath>

namespace wavend {

double rel_2norm_error(const std::vector<Complex>& approx, const std::vector<Complex>& truth) {
    if (approx.size() != truth.size())
        throw ShapeMismatch("rel_2norm_error: lengths " + std::to_string(approx.size()) + " vs " +
                            std::to_string(truth.size()));
    double num = 0, den = 0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        num += std::norm(approx[k] - truth[k]);
        den += std::norm(truth[k]);
    }
    if (den == 0) throw ZeroTruth("rel_2norm_error against an all-zero truth");
    return std::sqrt(num / den);
}

}  // namespace wavend
