#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

/// Probability vector over lattice positions.
struct Distribution {
    Lattice lattice;
    std::vector<double> probs;

    /// Throws NumericalCorruption unless entries are >= -1e-14 and the sum is
    /// within tol of 1 (negative dust below 1e-14 magnitude is clamped by the
    /// producers, not here).
    void validate(double tol = 1e-10) const;
};

/// Diagonal of rho summed over the coin: probs[x] = rho[(x,-1),(x,-1)] +
/// rho[(x,+1),(x,+1)]. Tiny negative dust (>= -1e-14) is clamped to 0.
Distribution position_distribution(const DensityOperator& rho);

/// Standard deviation sqrt(<x^2> - <x>^2) in lattice units. Second moments on
/// a ring are ambiguous, so cycles throw CycleUnsupported.
double std_dev(const Distribution& d);

/// Total variational distance sum_x |a[x] - b[x]|. Unhalved by project-wide
/// convention, so the range is [0, 2]; all thresholds (epsilon, 1/N) are
/// interpreted in this convention. Throws LatticeMismatch.
double tvd(const Distribution& a, const Distribution& b);

/// Ideal spread shape of the unitary line walk after t steps: uniform over
/// {x : |x| <= floor(t/sqrt(2)), x = t (mod 2)}. The parity restriction
/// matters: the walker only occupies sites of parity t mod 2, and a reference
/// ignoring that would put a spurious floor of ~1 under every TVD. At t = 1
/// the nominal radius 0 excludes every odd site, so the radius widens to 1
/// (which is the exact step-1 distribution). Throws CycleUnsupported.
Distribution top_hat_reference(const Lattice& line, int64_t t);

/// Uniform distribution over a cycle.
Distribution uniform_reference(const Lattice& cycle);

/// Arithmetic mean of the first `through` distributions (steps 0..through-1).
/// Throws EmptySeries when fewer than `through` are available or through < 1,
/// and LatticeMismatch when the series mixes lattices.
Distribution time_averaged(const std::vector<Distribution>& series, int64_t through);

struct MixingResult {
    double epsilon = 0.0;
    /// Smallest T with TVD < epsilon for every checked t > T; empty when the
    /// condition still fails at the horizon (NotReached).
    std::optional<int64_t> mixing_time;
    int64_t horizon = 0;
    bool averaged = false;

    bool reached() const { return mixing_time.has_value(); }
};

/// M(eps) = min{T | forall t in (T, horizon]: TVD(P(t), ref) < eps}, i.e. the
/// last violation index (0 when the series never violates). The quantifier is
/// evaluated over the recorded horizon only; a violation at the horizon
/// itself means NotReached. With averaged = true the criterion runs over the
/// running means P-bar(t) = mean of steps 0..t-1 (index t checks P-bar(t);
/// index 0 duplicates P-bar(1)). Throws InvalidEpsilon unless eps in (0, 2),
/// EmptySeries, LatticeMismatch.
MixingResult mixing_time(const std::vector<Distribution>& series, const Distribution& reference,
                         double epsilon, bool averaged);

/// Partial transpose on the coin: out[(x,c),(y,b)] = rho[(x,b),(y,c)].
/// Hermiticity and trace carry over; an involution. Which side is transposed
/// does not matter for the spectrum (the other choice gives the complex
/// conjugate matrix).
ComplexMatrix partial_transpose(const DensityOperator& rho);

/// Negativity E = (sum_i |lambda'_i| - 1)/2 over the partial-transpose
/// spectrum; clamped to >= 0. For a qubit coin against the position register
/// the attainable maximum is 1/2, and a result above 0.5 + 1e-9 throws
/// NumericalCorruption (the input cannot have been a valid state).
double negativity(const DensityOperator& rho);

/// Per-step observable requests for evolve(). Sigma on a cycle throws
/// CycleUnsupported. The TVD reference is the top-hat for lines and the
/// uniform distribution for cycles.
struct ObserverSet {
    bool sigma = false;
    bool tvd = false;
    bool negativity = false;
    bool distribution = false;
};

/// One per-step record; fields not requested stay NaN / empty.
struct StepRecord {
    double sigma = std::numeric_limits<double>::quiet_NaN();
    double tvd = std::numeric_limits<double>::quiet_NaN();
    double negativity = std::numeric_limits<double>::quiet_NaN();
    std::optional<Distribution> dist;
};

struct ObservableSeries {
    std::vector<StepRecord> records;  // size steps + 1 (t = 0..steps)
};

struct EvolveResult {
    ObservableSeries series;
    DensityOperator final_state;
    double max_drift = 0.0;  // worst pre-correction step drift seen
};

/// Applies step() exactly config.steps times from initial_state(config),
/// recording the requested observables at every t = 0..steps inclusive.
EvolveResult evolve(const WalkConfig& config, const ObserverSet& observers);

}  // namespace qwalk
