#pragma once

#include <complex>
#include <vector>

#include "wavend/errors.hpp"

namespace wavend {

enum class SignalLayout {
    horizon,   // per-side block of n_t nodes covering [0, t_final]
    extended,  // per-side block of 2 n_t nodes covering [0, 2 t_final + dt]
};

/// Boundary signal on both endpoints, stored left block then right block.
template <typename Scalar>
struct BoundarySignal {
    SignalLayout layout = SignalLayout::horizon;
    int block_len = 0;
    std::vector<Scalar> values;  // 2 * block_len entries

    static BoundarySignal zeros(SignalLayout layout, int block_len) {
        BoundarySignal s;
        s.layout = layout;
        s.block_len = block_len;
        s.values.assign(static_cast<std::size_t>(2 * block_len), Scalar(0));
        return s;
    }

    int total_len() const { return 2 * block_len; }

    Scalar* left() { return values.data(); }
    const Scalar* left() const { return values.data(); }
    Scalar* right() { return values.data() + block_len; }
    const Scalar* right() const { return values.data() + block_len; }
};

/// Horizon signal padded with zeros up to the extended axis.
template <typename Scalar>
BoundarySignal<Scalar> zero_extend(const BoundarySignal<Scalar>& f) {
    if (f.layout != SignalLayout::horizon)
        throw ShapeMismatch("zero_extend expects a horizon-layout signal");
    BoundarySignal<Scalar> out = BoundarySignal<Scalar>::zeros(SignalLayout::extended, 2 * f.block_len);
    for (int j = 0; j < f.block_len; ++j) {
        out.left()[j] = f.left()[j];
        out.right()[j] = f.right()[j];
    }
    return out;
}

}  // namespace wavend
