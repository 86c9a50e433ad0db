#pragma once

#include <array>
#include <optional>

#include "wavend/dense_matrix.hpp"
#include "wavend/operators.hpp"
#include "wavend/wave.hpp"

namespace wavend {

/// Connecting operator K = J Lambda P_T* - R Lambda_T R J P_T*: pairs two
/// boundary controls through the interior inner product of their wave states
/// at t = t_final, using boundary data only.
struct ConnectingOperator {
    int n_t = 0;
    DenseMatrix<double> K;  // 2 n_t x 2 n_t
};

ConnectingOperator assemble_K(const HyperbolicNdMap& nd, const OperatorSet& ops);

/// Tikhonov-regularized normal operator
/// N = (I + conj(lambda) Z^2) K (I + lambda int2) + S*S + alpha I,
/// where S* is the closed-form adjoint (T - t) of the final-value map S.
/// With tau = 0, `lu` factors N directly. With tau > 0, `lu` factors the
/// damped product N* N + tau^2 I for reuse across right-hand sides and
/// solve() applies the corresponding bounded inverse.
struct RegularizedSystem {
    Complex lambda{0.0, 0.0};
    double alpha = 0;
    double tau = 0;
    DenseMatrix<Complex> normal;
    LuFactors<Complex> lu;

    std::vector<Complex> solve(const std::vector<Complex>& rhs) const {
        if (rhs.size() != normal.rows())
            throw ShapeMismatch("system solve: size " + std::to_string(normal.rows()) +
                                " vs rhs length " + std::to_string(rhs.size()));
        if (tau == 0) return lu.solve(rhs);
        std::vector<Complex> nh_rhs(normal.cols());
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, 1>> b(rhs.data(), rhs.size());
        Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, 1>> nb(nh_rhs.data(), nh_rhs.size());
        nb.noalias() = normal.map().adjoint() * b;
        return lu.solve(nh_rhs);
    }
};

/// Precomputes the lambda-independent real products so that frequency sweeps
/// pay one complex combine and one LU per (lambda, alpha) pair.
class RegularizedSystemFactory {
  public:
    RegularizedSystemFactory(const ConnectingOperator& k, const OperatorSet& ops,
                             bool with_frequency_terms);

    /// Assembles and factors the normal operator. tau = 0 (the default)
    /// factors N directly. tau > 0 solves through N* N + tau^2 I, which
    /// applies the bounded filter s / (s^2 + tau^2) to the singular values
    /// of N and caps the gain of any near-null discretization mode at
    /// 1 / (2 tau); useful when the data are noisy enough that a direct
    /// solve shows heavy-tailed error, at the cost of biasing the
    /// well-resolved spectrum near s ~ tau.
    RegularizedSystem build(Complex lambda, double alpha, double tau = 0) const;

  private:
    std::size_t n_ = 0;
    bool freq_ = false;
    DenseMatrix<double> K_, SstarS_;
    DenseMatrix<double> ZZK_, KI2_, ZZKI2_;
};

RegularizedSystem build_regularized_system(const ConnectingOperator& k, const OperatorSet& ops,
                                           Complex lambda, double alpha,
                                           double tau = 0);

/// Output of one regularized reconstruction: the 2x2 frequency-domain map,
/// the two boundary controls behind its columns, and (optionally) the wave
/// snapshots those controls produce at t = t_final.
struct ReconstructionResult {
    DenseMatrix<Complex> L_reconstructed;                    // 2 x 2
    std::array<BoundarySignal<Complex>, 2> f_ddot;           // horizon layout
    std::array<BoundarySignal<Complex>, 2> controls;         // horizon layout
    bool has_snapshot = false;
    std::array<std::vector<Complex>, 2> snapshot;            // u(t_final, x), per control
};

ReconstructionResult reconstruct(const RegularizedSystem& sys, const HyperbolicNdMap& nd,
                                 const OperatorSet& ops, bool with_snapshot, const Grid& grid,
                                 const Coefficients& coeff);

/// Control and snapshot for arbitrary boundary data, as linear combinations
/// of the canonical columns.
BoundarySignal<Complex> control_for(const ReconstructionResult& r, const std::array<Complex, 2>& f);
std::vector<Complex> snapshot_for(const ReconstructionResult& r, const std::array<Complex, 2>& f);

struct StabilityProbe {
    double dL = 0;        // Frobenius distance of the reconstructed 2x2 maps
    double dLambda = 0;   // Frobenius distance of the boundary data
    std::optional<double> ratio;
};

/// Runs the full pipeline on both maps at fixed (lambda, alpha) and reports
/// the response of the reconstruction to the data perturbation.
StabilityProbe stability_probe(const HyperbolicNdMap& nd, const HyperbolicNdMap& nd_perturbed,
                               const OperatorSet& ops, Complex lambda, double alpha);

}  // namespace wavend
