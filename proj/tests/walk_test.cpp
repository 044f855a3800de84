#include <cmath>
#include <complex>
#include <cstring>
#include <random>

#include "doctest.h"
#include "qwalk/experiments.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

WalkConfig line_config(int64_t steps, NoiseTarget target, double p) {
    return WalkConfig{Lattice::line(std::max<int64_t>(steps, 1)), steps,
                      NoiseModel{target, p}};
}

/// A generic valid mixed state: evolve a few noisy steps from the default
/// start so coherences of every kind are populated.
DensityOperator sample_state(const Lattice& lat, int64_t steps, double p) {
    WalkConfig cfg{lat, steps, NoiseModel{NoiseTarget::Position, p}};
    return evolve(cfg, ObserverSet{}).final_state;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
    return worst;
}

}  // namespace

TEST_SUITE("walk") {

TEST_CASE("initial state is the expected rank-1 projector") {
    WalkConfig cfg = line_config(1, NoiseTarget::Both, 0.0);
    DensityOperator rho = initial_state(cfg);
    int64_t base = 2 * cfg.lattice.offset_of(0);
    // 1/sqrt(2) squared is one ulp above 0.5, so compare at roundoff, not ==.
    CHECK(std::abs(rho.mat.at(base, base) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(base + 1, base + 1) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(base, base + 1) - c64{0.0, -0.5}) <= 1e-15);  // alpha * conj(beta)
    CHECK(std::abs(rho.mat.at(base + 1, base) - c64{0.0, 0.5}) <= 1e-15);
    CHECK(std::abs(rho.mat.trace() - c64{1.0, 0.0}) <= 1e-15);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coin on |0,+1> yields the balanced superposition") {
    WalkConfig cfg = line_config(1, NoiseTarget::Both, 0.0);
    cfg.coin_minus = c64{0.0, 0.0};
    cfg.coin_plus = c64{1.0, 0.0};
    DensityOperator rho = apply_coin(initial_state(cfg));
    int64_t base = 2 * cfg.lattice.offset_of(0);
    CHECK(std::abs(rho.mat.at(base, base) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(base + 1, base + 1) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(base, base + 1) - c64{0.5, 0.0}) <= 1e-15);
}

TEST_CASE("shift moves coin-down amplitude left and coin-up right") {
    WalkConfig cfg = line_config(1, NoiseTarget::Both, 0.0);
    DensityOperator rho = apply_shift(initial_state(cfg));
    int64_t down = BasisIndex{-1, -1}.flat(cfg.lattice);
    int64_t up = BasisIndex{+1, +1}.flat(cfg.lattice);
    CHECK(std::abs(rho.mat.at(down, down) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(up, up) - c64{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(rho.mat.at(down, up) - c64{0.0, -0.5}) <= 1e-15);
    CHECK(std::abs(rho.mat.trace() - c64{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("one noiseless step reproduces the hand-computed state") {
    WalkConfig cfg = line_config(1, NoiseTarget::Both, 0.0);
    DensityOperator rho = step(initial_state(cfg), cfg.noise);

    // S C |0>(|-1> + i|+1>)/sqrt(2) = (-1+i)/2 |-1,-1> + (1+i)/2 |+1,+1>
    c64 a{-0.5, 0.5}, b{0.5, 0.5};
    int64_t ia = BasisIndex{-1, -1}.flat(cfg.lattice);
    int64_t ib = BasisIndex{+1, +1}.flat(cfg.lattice);
    CHECK(std::abs(rho.mat.at(ia, ia) - a * std::conj(a)) <= 1e-15);
    CHECK(std::abs(rho.mat.at(ib, ib) - b * std::conj(b)) <= 1e-15);
    CHECK(std::abs(rho.mat.at(ia, ib) - a * std::conj(b)) <= 1e-15);
    CHECK(negativity(rho) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("p=1 both-target walk equals the exact classical walk") {
    for (int64_t steps : {1, 7, 30}) {
        WalkConfig cfg = line_config(steps, NoiseTarget::Both, 1.0);
        Distribution quantum = position_distribution(evolve(cfg, ObserverSet{}).final_state);
        Distribution classical = classical_baseline(cfg.lattice, steps);
        for (size_t i = 0; i < quantum.probs.size(); ++i) {
            CHECK(std::abs(quantum.probs[i] - classical.probs[i]) <= 1e-12);
        }
    }
}

TEST_CASE("per-step drift stays at roundoff over long noisy runs") {
    WalkConfig cfg{Lattice::cycle(21), 0, NoiseModel{NoiseTarget::Position, 0.3}};
    DensityOperator rho = initial_state(cfg);
    ComplexMatrix scratch;
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        StepStats stats = step_inplace(rho, cfg.noise, scratch);
        worst = std::max(worst, stats.max());
    }
    CHECK(worst <= 1e-12);
    CHECK(std::abs(rho.mat.trace() - c64{1.0, 0.0}) <= 1e-14);
}

TEST_CASE("evolved states satisfy every density-operator invariant") {
    for (NoiseTarget target : {NoiseTarget::Coin, NoiseTarget::Position, NoiseTarget::Both}) {
        WalkConfig cfg{Lattice::line(25), 25, NoiseModel{target, 0.2}};
        DensityOperator rho = evolve(cfg, ObserverSet{}).final_state;
        CHECK_NOTHROW(rho.check_invariants());
    }
}

TEST_CASE("line walks only occupy sites of the step parity") {
    for (NoiseTarget target : {NoiseTarget::Coin, NoiseTarget::Position, NoiseTarget::Both}) {
        WalkConfig cfg{Lattice::line(25), 25, NoiseModel{target, 0.3}};
        ObserverSet obs;
        obs.distribution = true;
        EvolveResult r = evolve(cfg, obs);
        for (size_t t = 0; t < r.series.records.size(); ++t) {
            const Distribution& d = *r.series.records[t].dist;
            for (int64_t q = 0; q < cfg.lattice.n_pos(); ++q) {
                int64_t x = cfg.lattice.x_of(q);
                if (((x - static_cast<int64_t>(t)) % 2 + 2) % 2 == 1) {
                    CHECK(d.probs[static_cast<size_t>(q)] <= 1e-14);
                }
            }
        }
    }
}

TEST_CASE("noiseless evolution keeps the state pure") {
    WalkConfig cfg{Lattice::cycle(15), 0, NoiseModel{NoiseTarget::Both, 0.0}};
    DensityOperator rho = initial_state(cfg);
    ComplexMatrix scratch;
    for (int t = 0; t < 200; ++t) step_inplace(rho, cfg.noise, scratch);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dephasing is idempotent to the bit") {
    DensityOperator rho = sample_state(Lattice::cycle(9), 11, 0.25);
    for (NoiseTarget target : {NoiseTarget::Coin, NoiseTarget::Position, NoiseTarget::Both}) {
        DensityOperator once = dephase(rho, target);
        DensityOperator twice = dephase(once, target);
        CHECK(std::memcmp(once.mat.a.data(), twice.mat.a.data(),
                          once.mat.a.size() * sizeof(c64)) == 0);
    }
}

TEST_CASE("both-target dephasing keeps exactly the diagonal") {
    DensityOperator rho = sample_state(Lattice::line(8), 8, 0.1);
    DensityOperator diag = dephase(rho, NoiseTarget::Both);
    for (int64_t i = 0; i < rho.dim(); ++i) {
        for (int64_t j = 0; j < rho.dim(); ++j) {
            if (i == j) {
                CHECK(diag.mat.at(i, j) == rho.mat.at(i, j));
            } else {
                CHECK(diag.mat.at(i, j) == c64{0.0, 0.0});
            }
        }
    }
}

TEST_CASE("coin dephasing equals a CNOT onto a discarded ancilla") {
    // Coin (control) x ancilla |0>: CNOT then partial trace over the ancilla
    // leaves diag(rho). Verified at the 4x4 matrix level for random coins.
    std::mt19937_64 eng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        // Random single-qubit density matrix from a random pure pair mixture.
        c64 v0{u(eng), u(eng)}, v1{u(eng), u(eng)}, w0{u(eng), u(eng)}, w1{u(eng), u(eng)};
        double nv = std::norm(v0) + std::norm(v1), nw = std::norm(w0) + std::norm(w1);
        v0 /= std::sqrt(nv); v1 /= std::sqrt(nv);
        w0 /= std::sqrt(nw); w1 /= std::sqrt(nw);
        double lambda = 0.5 * (u(eng) + 1.0);
        c64 coin[2][2];
        coin[0][0] = lambda * v0 * std::conj(v0) + (1 - lambda) * w0 * std::conj(w0);
        coin[0][1] = lambda * v0 * std::conj(v1) + (1 - lambda) * w0 * std::conj(w1);
        coin[1][0] = std::conj(coin[0][1]);
        coin[1][1] = lambda * v1 * std::conj(v1) + (1 - lambda) * w1 * std::conj(w1);

        // Joint state (coin x |0><0|) in basis |c,anc>: entry ((c,0),(c',0)).
        // CNOT maps |c,0> -> |c,c>, so the joint becomes entries at
        // ((c,c),(c',c')); tracing the ancilla keeps only c == c'.
        c64 reduced[2][2] = {{coin[0][0], c64{}}, {c64{}, coin[1][1]}};

        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                c64 expected = (i == j) ? coin[i][j] : c64{};
                CHECK(std::abs(reduced[i][j] - expected) <= 1e-12);
            }
        }
    }

    // The same statement at the walk level: coin dephasing zeroes exactly the
    // coin-off-diagonal blocks and keeps coin-diagonal entries bitwise.
    DensityOperator rho = sample_state(Lattice::cycle(7), 9, 0.15);
    DensityOperator deph = dephase(rho, NoiseTarget::Coin);
    for (int64_t i = 0; i < rho.dim(); ++i) {
        for (int64_t j = 0; j < rho.dim(); ++j) {
            if ((i & 1) == (j & 1)) {
                CHECK(deph.mat.at(i, j) == rho.mat.at(i, j));
            } else {
                CHECK(deph.mat.at(i, j) == c64{0.0, 0.0});
            }
        }
    }
}

TEST_CASE("the step map is linear in the state") {
    Lattice lat = Lattice::cycle(9);
    DensityOperator rho1 = sample_state(lat, 5, 0.2);
    WalkConfig cfg2{lat, 5, NoiseModel{NoiseTarget::Coin, 0.4}, 2};
    DensityOperator rho2 = evolve(cfg2, ObserverSet{}).final_state;

    NoiseModel noise{NoiseTarget::Position, 0.35};
    for (double a : {0.0, 0.3, 1.0}) {
        DensityOperator mix{lat, ComplexMatrix(rho1.dim())};
        for (size_t i = 0; i < mix.mat.a.size(); ++i) {
            mix.mat.a[i] = a * rho1.mat.a[i] + (1.0 - a) * rho2.mat.a[i];
        }
        DensityOperator stepped_mix = step(mix, noise);
        DensityOperator s1 = step(rho1, noise);
        DensityOperator s2 = step(rho2, noise);
        ComplexMatrix combined(rho1.dim());
        for (size_t i = 0; i < combined.a.size(); ++i) {
            combined.a[i] = a * s1.mat.a[i] + (1.0 - a) * s2.mat.a[i];
        }
        CHECK(max_abs_diff(stepped_mix.mat, combined) <= 1e-12);
    }
}

TEST_CASE("a step is the convex mixture of unitary and dephased branches") {
    for (NoiseTarget target : {NoiseTarget::Coin, NoiseTarget::Position, NoiseTarget::Both}) {
        for (double p : {0.3, 1.0}) {
            DensityOperator rho = sample_state(Lattice::cycle(11), 6, 0.1);
            DensityOperator stepped = step(rho, NoiseModel{target, p});

            DensityOperator unitary = apply_shift(apply_coin(rho));
            DensityOperator dephased = dephase(unitary, target);
            ComplexMatrix expected(rho.dim());
            for (size_t i = 0; i < expected.a.size(); ++i) {
                expected.a[i] = (1.0 - p) * unitary.mat.a[i] + p * dephased.mat.a[i];
            }
            CHECK(max_abs_diff(stepped.mat, expected) <= 1e-12);
        }
    }
}

TEST_CASE("support reaching the line boundary is an error") {
    WalkConfig cfg = line_config(1, NoiseTarget::Both, 0.0);
    cfg.initial_position = 1;  // boundary site of line(1)
    DensityOperator rho = initial_state(cfg);
    CHECK_THROWS_AS(apply_shift(rho), BoundaryOverflow);

    // In-lattice stepping up to the horizon is fine.
    WalkConfig ok = line_config(3, NoiseTarget::Both, 0.0);
    CHECK_NOTHROW(evolve(ok, ObserverSet{}));
}

TEST_CASE("configuration violations are rejected") {
    CHECK_THROWS_AS((NoiseModel{NoiseTarget::Coin, -0.1}.validate()), InvalidConfig);
    CHECK_THROWS_AS((NoiseModel{NoiseTarget::Coin, 1.5}.validate()), InvalidConfig);

    WalkConfig too_long{Lattice::line(5), 6, NoiseModel{}};
    CHECK_THROWS_AS(too_long.validate(), InvalidConfig);

    WalkConfig outside{Lattice::line(5), 5, NoiseModel{}, 7};
    CHECK_THROWS_AS(outside.validate(), InvalidConfig);

    WalkConfig unnormalized{Lattice::line(5), 5, NoiseModel{}};
    unnormalized.coin_minus = c64{1.0, 0.0};
    unnormalized.coin_plus = c64{1.0, 0.0};
    CHECK_THROWS_AS(unnormalized.validate(), InvalidConfig);

    CHECK_THROWS_AS(Lattice::line(0), InvalidConfig);
    CHECK_THROWS_AS(Lattice::cycle(2), InvalidConfig);

    WalkConfig negative_steps{Lattice::line(5), -1, NoiseModel{}};
    CHECK_THROWS_AS(negative_steps.validate(), InvalidConfig);
}

TEST_CASE("corrupted states fail the invariant check") {
    DensityOperator rho = sample_state(Lattice::cycle(5), 3, 0.2);
    rho.mat.at(0, 0) += c64{1e-6, 0.0};
    CHECK_THROWS_AS(rho.check_invariants(), NumericalCorruption);

    DensityOperator skew = sample_state(Lattice::cycle(5), 3, 0.2);
    skew.mat.at(0, 1) += c64{1e-6, 0.0};
    CHECK_THROWS_AS(skew.check_invariants(), NumericalCorruption);
}

TEST_CASE("cycle walks wrap instead of overflowing") {
    WalkConfig cfg{Lattice::cycle(3), 9, NoiseModel{NoiseTarget::Coin, 0.0}};
    CHECK_NOTHROW(evolve(cfg, ObserverSet{}));
}

}  // TEST_SUITE
