#include "wavend/noise.hpp"

#include <cmath>
#include <random>
#include <string>

namespace wavend {

DenseMatrix<double> add_noise(const DenseMatrix<double>& matrix, double level,
                              std::optional<std::uint64_t> seed) {
    if (level < 0) throw ConfigError("noise level must be nonnegative, got " + std::to_string(level));
    if (level == 0) return matrix;
    if (!seed) throw MissingSeed("noise level " + std::to_string(level) + " requires a seed");
    if (matrix.empty()) throw EmptyMatrix("add_noise on empty matrix");

    const double rho =
        matrix.frobenius_norm() / std::sqrt(static_cast<double>(matrix.rows() * matrix.cols()));
    std::mt19937_64 gen(*seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    DenseMatrix<double> out = matrix;
    const double scale = level * rho;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += scale * gauss(gen);
    return out;
}

}  // namespace wavend
