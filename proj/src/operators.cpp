#include "wavend/operators.hpp"

namespace wavend {

OperatorSet build_operators(const Grid& grid) {
    const int m = grid.n_t;       // horizon block
    const int M = 2 * grid.n_t;   // extended block
    const double dt = grid.dt;

    OperatorSet ops;
    ops.n_t = m;
    ops.dt = dt;
    ops.t_final = grid.t_final;

    ops.P_T = DenseMatrix<double>(2 * m, 2 * M);
    ops.trace_T = DenseMatrix<double>(2, 2 * m);
    ops.R = DenseMatrix<double>(2 * m, 2 * m);
    ops.int1 = DenseMatrix<double>(2 * m, 2 * m);
    ops.Z = DenseMatrix<double>(2 * m, 2 * m);
    ops.J = DenseMatrix<double>(2 * m, 2 * M);

    for (int b = 0; b < 2; ++b) {
        const int rb = b * m;  // horizon block offset
        const int cb = b * M;  // extended block offset

        for (int i = 0; i < m; ++i) ops.P_T(rb + i, cb + i) = 1.0;

        ops.trace_T(b, rb + m - 1) = 1.0;

        for (int i = 0; i < m; ++i) ops.R(rb + i, rb + m - 1 - i) = 1.0;

        // Running integral from 0 to t_i: row 0 empty, row i spans columns 0..i.
        for (int i = 1; i < m; ++i) {
            ops.int1(rb + i, rb + 0) = 0.5 * dt;
            for (int j = 1; j < i; ++j) ops.int1(rb + i, rb + j) = dt;
            ops.int1(rb + i, rb + i) = 0.5 * dt;
        }

        // Integral from t_i to t_final: row m-1 empty, row i spans columns i..m-1.
        for (int i = 0; i < m - 1; ++i) {
            ops.Z(rb + i, rb + i) = 0.5 * dt;
            for (int j = i + 1; j < m - 1; ++j) ops.Z(rb + i, rb + j) = dt;
            ops.Z(rb + i, rb + m - 1) = 0.5 * dt;
        }

        // (1/2) integral from t_i to 2 t_final - t_i on the extended axis:
        // row i spans columns i..M-2-i, degenerate at i = m-1.
        for (int i = 0; i < m - 1; ++i) {
            const int last = M - 2 - i;
            ops.J(rb + i, cb + i) = 0.25 * dt;
            for (int j = i + 1; j < last; ++j) ops.J(rb + i, cb + j) = 0.5 * dt;
            ops.J(rb + i, cb + last) = 0.25 * dt;
        }
    }

    ops.P_T_star = ops.P_T.transpose();
    ops.int2 = ops.int1 * ops.int1;
    ops.S = ops.trace_T * ops.int2;
    return ops;
}

}  // namespace wavend
