#pragma once

#include <cstdint>
#include <optional>

#include "wavend/dense_matrix.hpp"

namespace wavend {

/// Adds i.i.d. Gaussian noise scaled by the RMS entry magnitude:
/// out_ij = in_ij + level * rho * g_ij with rho = ||in||_F / sqrt(rows cols).
/// With this convention `level` equals the expected relative Frobenius
/// perturbation. level = 0 returns the input unchanged; level > 0 requires
/// a seed.
DenseMatrix<double> add_noise(const DenseMatrix<double>& matrix, double level,
                              std::optional<std::uint64_t> seed);

}  // namespace wavend
