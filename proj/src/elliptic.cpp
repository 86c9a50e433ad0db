#include "wavend/elliptic.hpp"

#include <string>
#include <utility>

namespace wavend {

namespace {

/// System matrix with one-sided Neumann difference rows:
///   (u_0 - u_1)/dx = f_left   and   (u_{n-1} - u_{n-2})/dx = f_right,
/// matching the outward-normal convention. The boundary closure is first order
/// by design: the reference boundary-trace values the solver is validated
/// against (see the tests) were produced with exactly this closure, so a
/// higher-order closure would converge to slightly different traces. A side
/// benefit: for constant q and lambda = q the discrete system is exactly
/// singular (constants are in the kernel), so the first Neumann eigenvalue is
/// reproduced without discretization shift.
DenseMatrix<Complex> assemble_system(const Grid& grid, const Coefficients& coeff, Complex lambda) {
    const int n = grid.n_x;
    const double dx2 = grid.dx * grid.dx;
    DenseMatrix<Complex> a(n, n);

    a(0, 0) = Complex(1.0 / grid.dx);
    a(0, 1) = Complex(-1.0 / grid.dx);
    for (int j = 1; j + 1 < n; ++j) {
        const double s = coeff.c[j] * coeff.c[j] / dx2;
        a(j, j - 1) = Complex(-s);
        a(j, j) = Complex(2.0 * s + coeff.q[j]) - lambda;
        a(j, j + 1) = Complex(-s);
    }
    a(n - 1, n - 1) = Complex(1.0 / grid.dx);
    a(n - 1, n - 2) = Complex(-1.0 / grid.dx);
    return a;
}

LuFactors<Complex> factor_checked(const Grid& grid, const Coefficients& coeff, Complex lambda) {
    if (static_cast<int>(coeff.c.size()) != grid.n_x || static_cast<int>(coeff.q.size()) != grid.n_x)
        throw ShapeMismatch("coefficient samples do not match the grid");
    try {
        LuFactors<Complex> lu = lu_factor(assemble_system(grid, coeff, lambda));
        const double rc = lu.rcond();
        if (!(rc > 1e-12))
            throw NearSingularSystem("condition estimate " + std::to_string(1.0 / rc) +
                                     " above 1e12; lambda too close to a Neumann eigenvalue");
        return lu;
    } catch (const SingularMatrix&) {
        throw NearSingularSystem("system singular: lambda is a Neumann eigenvalue of the grid");
    }
}

}  // namespace

std::vector<Complex> elliptic_solve(const Grid& grid, const Coefficients& coeff, Complex lambda,
                                    const std::array<Complex, 2>& f) {
    LuFactors<Complex> lu = factor_checked(grid, coeff, lambda);
    const int n = grid.n_x;
    std::vector<Complex> rhs(n, Complex(0.0));
    rhs[0] = f[0];
    rhs[n - 1] = f[1];
    return lu.solve(rhs);
}

EllipticNdMap elliptic_nd_map(const Grid& grid, const Coefficients& coeff, Complex lambda) {
    LuFactors<Complex> lu = factor_checked(grid, coeff, lambda);
    const int n = grid.n_x;

    DenseMatrix<Complex> rhs(n, 2);
    rhs(0, 0) = Complex(1.0);
    rhs(n - 1, 1) = Complex(1.0);
    DenseMatrix<Complex> u = lu.solve(rhs);

    EllipticNdMap nd;
    nd.lambda = lambda;
    nd.L = DenseMatrix<Complex>(2, 2);
    nd.L(0, 0) = u(0, 0);
    nd.L(1, 0) = u(n - 1, 0);
    nd.L(0, 1) = u(0, 1);
    nd.L(1, 1) = u(n - 1, 1);
    return nd;
}

}  // namespace wavend
