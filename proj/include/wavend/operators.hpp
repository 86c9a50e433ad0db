#pragma once

#include <array>

#include "wavend/dense_matrix.hpp"
#include "wavend/grid.hpp"
#include "wavend/signal.hpp"

namespace wavend {

/// Dense time-filtering matrices acting on stacked boundary signals
/// (left block then right block; all operators are block-diagonal over the
/// two sides). Horizon signals have n_t nodes per block, extended signals
/// 2 n_t nodes per block.
struct OperatorSet {
    int n_t = 0;
    double dt = 0;
    double t_final = 0;

    DenseMatrix<double> P_T;       // 2 n_t x 4 n_t, restriction to the horizon
    DenseMatrix<double> P_T_star;  // 4 n_t x 2 n_t, transpose of P_T
    DenseMatrix<double> trace_T;   // 2 x 2 n_t, value at t = t_final per side
    DenseMatrix<double> R;         // 2 n_t x 2 n_t, per-block time reversal
    DenseMatrix<double> int1;      // 2 n_t x 2 n_t, running integral from 0
    DenseMatrix<double> int2;      // 2 n_t x 2 n_t, int1 squared
    DenseMatrix<double> Z;         // 2 n_t x 2 n_t, integral from t to t_final
    DenseMatrix<double> J;         // 2 n_t x 4 n_t, (1/2) integral from t to 2 t_final - t
    DenseMatrix<double> S;         // 2 x 2 n_t, trace_T composed with int2
};

OperatorSet build_operators(const Grid& grid);

namespace detail {

template <typename Scalar>
BoundarySignal<Scalar> apply_S_star_impl(int n_t, double dt, double t_final,
                                         const std::array<Scalar, 2>& f) {
    auto out = BoundarySignal<Scalar>::zeros(SignalLayout::horizon, n_t);
    for (int j = 0; j < n_t; ++j) {
        double w = t_final - j * dt;
        out.left()[j] = f[0] * w;
        out.right()[j] = f[1] * w;
    }
    return out;
}

}  // namespace detail

/// Adjoint of S applied to a pair of boundary values, via the closed form
/// (S* f)(t) = (t_final - t) f per side. Exact; no quadrature involved.
template <typename Scalar>
BoundarySignal<Scalar> apply_S_star(const Grid& grid, const std::array<Scalar, 2>& f) {
    return detail::apply_S_star_impl(grid.n_t, grid.dt, grid.t_final, f);
}

template <typename Scalar>
BoundarySignal<Scalar> apply_S_star(const OperatorSet& ops, const std::array<Scalar, 2>& f) {
    return detail::apply_S_star_impl(ops.n_t, ops.dt, ops.t_final, f);
}

}  // namespace wavend
