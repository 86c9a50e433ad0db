#pragma once

#include <array>

#include "wavend/coefficients.hpp"
#include "wavend/dense_matrix.hpp"
#include "wavend/grid.hpp"

namespace wavend {

/// Boundary data to boundary values map of -c^2 u'' + (q - lambda) u = 0
/// with outward Neumann data on the two endpoints. Column k holds the
/// endpoint values of the solution for the canonical input e_k.
struct EllipticNdMap {
    Complex lambda{0.0, 0.0};
    DenseMatrix<Complex> L;  // 2 x 2
};

/// Solves -c^2 u'' + (q - lambda) u = 0 with outward Neumann data
/// f = (f_left, f_right): second-order interior stencil, one-sided Neumann
/// difference rows (first order, deliberately -- see elliptic.cpp), dense LU.
/// Throws NearSingularSystem when the LU condition estimate exceeds 1e12
/// (lambda too close to a Neumann eigenvalue).
std::vector<Complex> elliptic_solve(const Grid& grid, const Coefficients& coeff, Complex lambda,
                                    const std::array<Complex, 2>& f);

EllipticNdMap elliptic_nd_map(const Grid& grid, const Coefficients& coeff, Complex lambda);

}  // namespace wavend
