#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/observables.hpp"

namespace qwalk {

/// Pure state over the (position, coin) basis, stored flat like the density
/// matrix rows: amp[2*offset + coin_bit]. Backs the unitary fast path and the
/// Monte-Carlo trajectory unraveling.
struct PureState {
    Lattice lattice;
    std::vector<c64> amp;

    void validate(double tol = 1e-12) const;  // norm within tol of 1
};

PureState pure_initial(const WalkConfig& config);

/// One unitary step SC on the amplitudes (no noise).
void pure_step(PureState& psi);

Distribution pure_distribution(const PureState& psi);

/// Negativity of |psi><psi| via the 2x2 coin Gram matrix: for Schmidt
/// coefficients s1, s2 across the coin|position split, E = s1*s2 =
/// sqrt(det G) with G = A A^dag, A the 2 x n_pos amplitude matrix.
double pure_negativity(const PureState& psi);

// ---------------------------------------------------------------------------
// Reproduction drivers
// ---------------------------------------------------------------------------

struct SweepRow {
    double p = 0.0;
    double tvd_final = 0.0;
    double negativity_final = 0.0;
    double sigma_final = 0.0;
};

/// Line-walk noise sweep: for each p, evolve T steps and record the final TVD
/// to top_hat_reference(T), final negativity, and final sigma. Rows come back
/// in grid order regardless of the execution order of the (independent) grid
/// points.
std::vector<SweepRow> sweep_noise(const Lattice& line, int64_t steps, NoiseTarget target,
                                  const std::vector<double>& p_grid, int jobs = 1);

struct CycleMixingOutcome {
    ObservableSeries series;           // per-step TVD-to-uniform and negativity
    std::vector<double> tvd_averaged;  // index t: TVD of the running mean P-bar(t) (index 0 = P-bar(1))
    MixingResult instantaneous;
    MixingResult averaged;
};

/// Cycle run of `horizon` steps recording TVD-to-uniform and negativity per
/// step plus mixing results at the supplied epsilon (pass 0 for the 1/N
/// default that mirrors the uniform-limit threshold).
CycleMixingOutcome cycle_mixing_run(int64_t size, NoiseTarget target, double p, int64_t horizon,
                                    double epsilon = 0.0);

/// Exact warm-start distribution: Q = time-averaged pure-walk distribution
/// over `steps` steps from a delta at 0; each restart draws the new start
/// from the previous outcome, which by translation invariance on the cycle is
/// a circular convolution with Q. restarts = 0 returns Q itself.
Distribution warm_start_distribution(int64_t size, int64_t steps, int64_t restarts);

/// Exact classical random walk: T iterations of P'(x) = (P(x-1)+P(x+1))/2,
/// wrapping mod N on cycles. The independent oracle for every p=1 coin-noise
/// claim. All arithmetic is dyadic, so results are exact floats.
Distribution classical_baseline(const Lattice& lattice, int64_t steps);

/// Monte-Carlo check of the density-matrix evolution: each trajectory evolves
/// a pure state, applying SC every step and, with probability p, projectively
/// measuring the noise target and collapsing. The returned distribution
/// averages the full per-trajectory |psi|^2 distributions.
///
/// Determinism contract: trajectory k draws from an mt19937_64 seeded with
/// splitmix64(seed, k); each step draws one uniform for the event decision
/// and, only when the event fires, a second for the outcome (p = 0 draws
/// nothing). Trajectories are accumulated in fixed 256-trajectory chunks that
/// are summed in chunk order, so output is byte-identical for every `jobs`.
Distribution trajectory_oracle(const WalkConfig& config, int64_t samples, uint64_t seed,
                               int jobs = 1);

struct ResourceMode {
    Lattice::Kind kind = Lattice::Kind::Line;
    int64_t size = 1;          // Line: T steps; Cycle: N sites
    int64_t mixing_steps = 0;  // Cycle only: the M(eps) run length
};

struct ResourceEstimate {
    int64_t quantum_gates = 0;
    int64_t qubits = 0;
    int64_t ancillae = 0;
    double expected_measurements = 0.0;
    /// Classical random walk matching the quantum spread: T^2/2 steps (line
    /// mode only; 0 for cycles).
    int64_t classical_steps = 0;
    std::string gates_class;   // asymptotic class, e.g. "O(T log T + pT)"
    std::string qubits_class;
    std::string counting_model;
};

/// Exact resource counts under the documented model: position register width
/// s = ceil(log2(2T+1)) (line) or ceil(log2 N) (cycle); per step C costs 1
/// gate and S costs s; a coin measurement costs 1 gate + 1 ancilla, a
/// position measurement s gates + s ancillae, and Both costs their sum;
/// measurement events enter at their expectation p * steps (rounded to the
/// nearest integer in the totals); qubits = 1 + s + ancillae. Randomness is
/// counted as a quantum resource: ancillae are never recycled. The position
/// count presumes one fresh register per measurement and is an upper bound on
/// the true minimum. Throws InvalidMode.
ResourceEstimate resource_estimate(const ResourceMode& mode, NoiseTarget target, double p);

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

/// Least-squares fit of log(time) against log(size). Throws DegenerateInput
/// for fewer than 3 points, non-increasing sizes, or non-positive values.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

/// Negativity series E(t), t = 0..steps, for each p, on the line that the
/// step count fills; the entanglement-decay curves side by side.
std::vector<std::vector<double>> negativity_decay_run(int64_t steps,
                                                      const std::vector<double>& p_values,
                                                      NoiseTarget target = NoiseTarget::Both,
                                                      int jobs = 1);

}  // namespace qwalk
