#pragma once

#include <cmath>
#include <cstdint>

#include "qwalk/complex_matrix.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

enum class NoiseTarget { Coin, Position, Both };

const char* to_string(NoiseTarget t);

/// Per-step projective-measurement noise: with probability `rate` the coin,
/// the position, or both are measured (off-diagonal coherences in that basis
/// are removed).
struct NoiseModel {
    NoiseTarget target = NoiseTarget::Both;
    double rate = 0.0;

    void validate() const;  // InvalidConfig unless rate in [0, 1]
};

/// Full run configuration. The default initial coin is (|-1> + i|+1>)/sqrt(2),
/// the symmetric choice whose unitary walk spreads evenly to both sides.
struct WalkConfig {
    Lattice lattice = Lattice::line(1);
    int64_t steps = 1;
    NoiseModel noise{};
    int64_t initial_position = 0;
    c64 coin_minus{M_SQRT1_2, 0.0};  // amplitude on |-1>
    c64 coin_plus{0.0, M_SQRT1_2};   // amplitude on |+1>

    void validate() const;  // InvalidConfig
};

/// Mixed walk state over the position (x) coin basis; dimension 2 * n_pos.
/// Valid states are Hermitian, unit-trace, and positive semidefinite; the
/// stepping code re-symmetrizes and renormalizes each step so drift never
/// accumulates, and check_invariants() verifies the full set (including PSD,
/// which needs an eigensolve) for tests and diagnostics.
struct DensityOperator {
    Lattice lattice;
    ComplexMatrix mat;

    int64_t dim() const { return mat.dim; }

    /// trace(rho^2), computed as sum |rho_ij|^2 (valid for Hermitian rho).
    double purity() const;

    /// Throws NumericalCorruption naming the violated invariant: trace within
    /// tol of 1, Hermitian within tol, min eigenvalue >= -tol, purity in
    /// [1/dim - tol, 1 + tol].
    void check_invariants(double tol = 1e-10) const;
};

/// Rank-1 state |x0> (alpha|-1> + beta|+1>) as a density operator.
DensityOperator initial_state(const WalkConfig& config);

/// rho -> C rho C^dag with C|x,c> = (|x,-c> + c|x,c>)/sqrt(2), applied as a
/// 2x2 block action per position pair (O(dim^2), never a dense product).
DensityOperator apply_coin(const DensityOperator& rho);
void apply_coin_inplace(DensityOperator& rho);

/// rho -> S rho S^dag with S|x,c> = |x+c,c>; a pure index permutation.
/// Cycles wrap mod N; on a line, nonzero amplitude on a boundary site moving
/// outward throws BoundaryOverflow (steps > horizon misconfiguration).
DensityOperator apply_shift(const DensityOperator& rho);
void apply_shift_inplace(DensityOperator& rho, ComplexMatrix& scratch);

/// Projective measurement of the target: zeroes every entry ((x,c),(y,b))
/// with x != y (Position), c != b (Coin), or (x,c) != (y,b) (Both).
DensityOperator dephase(const DensityOperator& rho, NoiseTarget target);

/// Drift measured just before the per-step re-symmetrization / trace
/// renormalization that suppresses it.
struct StepStats {
    double hermiticity_drift = 0.0;
    double trace_drift = 0.0;

    double max() const { return hermiticity_drift > trace_drift ? hermiticity_drift : trace_drift; }
};

/// One non-unitary step:
///
///   rho(t+1) = (1-p) SC rho C^dag S^dag  +  p sum_j P_j SC rho C^dag S^dag P_j^dag
///
/// The projector sum keeps exactly the target-diagonal entries of
/// u = SC rho C^dag S^dag, so the convex combination equals u with every
/// killed entry scaled by (1-p); that masked scaling is how it is applied
/// (kept entries stay bit-identical instead of being rounded through
/// (1-p)*z + p*z). Afterwards the state is re-symmetrized to (rho+rho^dag)/2
/// and trace-renormalized; if the pre-correction drift exceeds 1e-8 the step
/// throws NumericalCorruption.
DensityOperator step(const DensityOperator& rho, const NoiseModel& noise);
StepStats step_inplace(DensityOperator& rho, const NoiseModel& noise, ComplexMatrix& scratch);

}  // namespace qwalk
