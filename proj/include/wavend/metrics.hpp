#pragma once

#include <vector>

#include "wavend/dense_matrix.hpp"

namespace wavend {

struct ErrorMetrics {
    double rel_frobenius = 0;
    double rel_2norm = 0;  // spectral norm ratio; Euclidean for column vectors
};

/// Relative Frobenius and 2-norm errors of `reconstructed` against `truth`.
template <typename Scalar>
ErrorMetrics error_metrics(const DenseMatrix<Scalar>& reconstructed, const DenseMatrix<Scalar>& truth) {
    if (reconstructed.rows() != truth.rows() || reconstructed.cols() != truth.cols())
        throw ShapeMismatch("error_metrics: " + reconstructed.shape_string() + " vs " +
                            truth.shape_string());
    const double truth_f = truth.frobenius_norm();
    if (truth_f == 0) throw ZeroTruth("error_metrics against an all-zero truth");

    ErrorMetrics m;
    m.rel_frobenius = frobenius_diff(reconstructed, truth) / truth_f;
    DenseMatrix<Scalar> diff = reconstructed - truth;
    m.rel_2norm = spectral_norm(diff) / spectral_norm(truth);
    return m;
}

/// Relative Euclidean error of a sampled function against a reference.
double rel_2norm_error(const std::vector<Complex>& approx, const std::vector<Complex>& truth);

}  // namespace wavend
