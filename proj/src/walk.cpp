#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

constexpr double kInvSqrt2 = M_SQRT1_2;
constexpr double kDriftAbort = 1e-8;

}  // namespace

const char* to_string(NoiseTarget t) {
    switch (t) {
        case NoiseTarget::Coin: return "coin";
        case NoiseTarget::Position: return "position";
        case NoiseTarget::Both: return "both";
    }
    return "?";
}

void NoiseModel::validate() const {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw InvalidConfig("noise rate must lie in [0, 1], got " + std::to_string(rate));
    }
}

void WalkConfig::validate() const {
    noise.validate();
    if (steps < 0) throw InvalidConfig("steps must be >= 0");
    if (lattice.is_line() && steps > lattice.extent) {
        throw InvalidConfig("steps exceed the line horizon: support would reach the boundary");
    }
    if (!lattice.contains(initial_position)) {
        throw InvalidConfig("initial position " + std::to_string(initial_position) +
                            " is outside the lattice");
    }
    double norm = std::norm(coin_minus) + std::norm(coin_plus);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw InvalidConfig("initial coin amplitudes are not normalized");
    }
}

double DensityOperator::purity() const {
    double sum = 0.0;
    for (const c64& z : mat.a) sum += std::norm(z);
    return sum;
}

void DensityOperator::check_invariants(double tol) const {
    double tr_err = std::abs(mat.trace() - c64{1.0, 0.0});
    if (!(tr_err <= tol)) {
        throw NumericalCorruption("density operator trace deviates from 1 by " +
                                  std::to_string(tr_err));
    }
    double herm = mat.hermiticity_error();
    if (!(herm <= tol)) {
        throw NumericalCorruption("density operator is not Hermitian: deviation " +
                                  std::to_string(herm));
    }
    RealSpectrum spec = hermitian_eigenvalues(mat);
    if (spec.values.front() < -tol) {
        throw NumericalCorruption("density operator has negative eigenvalue " +
                                  std::to_string(spec.values.front()));
    }
    double pur = purity();
    if (pur < 1.0 / static_cast<double>(dim()) - tol || pur > 1.0 + tol) {
        throw NumericalCorruption("density operator purity " + std::to_string(pur) +
                                  " is outside [1/dim, 1]");
    }
}

DensityOperator initial_state(const WalkConfig& config) {
    config.validate();
    int64_t d = 2 * config.lattice.n_pos();
    DensityOperator rho{config.lattice, ComplexMatrix(d)};
    int64_t base = 2 * config.lattice.offset_of(config.initial_position);
    c64 amp[2] = {config.coin_minus, config.coin_plus};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            rho.mat.at(base + i, base + j) = amp[i] * std::conj(amp[j]);
        }
    }
    return rho;
}

void apply_coin_inplace(DensityOperator& rho) {
    const kernels::Ops& k = kernels::active();
    int64_t d = rho.dim();
    int64_t n_pos = d / 2;
    for (int64_t q = 0; q < n_pos; ++q) {
        k.mix_rows(rho.mat.row(2 * q), rho.mat.row(2 * q + 1), static_cast<size_t>(d), kInvSqrt2);
    }
    for (int64_t r = 0; r < d; ++r) {
        k.mix_col_pairs(rho.mat.row(r), static_cast<size_t>(n_pos), kInvSqrt2);
    }
}

DensityOperator apply_coin(const DensityOperator& rho) {
    DensityOperator out = rho;
    apply_coin_inplace(out);
    return out;
}

namespace {

// dest[i] = flat index after one shift, or -1 when the site would leave a
// line lattice (only reachable by zero amplitude in a valid configuration).
std::vector<int64_t> shift_destinations(const Lattice& lat) {
    int64_t n_pos = lat.n_pos();
    std::vector<int64_t> dest(static_cast<size_t>(2 * n_pos));
    for (int64_t q = 0; q < n_pos; ++q) {
        for (int64_t b = 0; b < 2; ++b) {
            int64_t step = b ? +1 : -1;
            int64_t target = q + step;
            if (lat.is_cycle()) {
                target = (target + n_pos) % n_pos;
            } else if (target < 0 || target >= n_pos) {
                dest[2 * q + b] = -1;
                continue;
            }
            dest[2 * q + b] = 2 * target + b;
        }
    }
    return dest;
}

void require_zero_boundary(const DensityOperator& rho, int64_t idx) {
    int64_t d = rho.dim();
    const ComplexMatrix& m = rho.mat;
    for (int64_t j = 0; j < d; ++j) {
        if (m.at(idx, j) != 0.0 || m.at(j, idx) != 0.0) {
            throw BoundaryOverflow("walk support reached the line boundary at flat index " +
                                   std::to_string(idx) + "; increase the horizon");
        }
    }
}

}  // namespace

void apply_shift_inplace(DensityOperator& rho, ComplexMatrix& scratch) {
    int64_t d = rho.dim();
    std::vector<int64_t> dest = shift_destinations(rho.lattice);
    if (rho.lattice.is_line()) {
        for (int64_t i = 0; i < d; ++i) {
            if (dest[i] < 0) require_zero_boundary(rho, i);
        }
    }
    if (scratch.dim != d) scratch = ComplexMatrix(d);
    std::fill(scratch.a.begin(), scratch.a.end(), c64{});
    for (int64_t i = 0; i < d; ++i) {
        if (dest[i] < 0) continue;
        const c64* src = rho.mat.row(i);
        c64* dst = scratch.row(dest[i]);
        for (int64_t j = 0; j < d; ++j) {
            if (dest[j] >= 0) dst[dest[j]] = src[j];
        }
    }
    rho.mat.a.swap(scratch.a);
}

DensityOperator apply_shift(const DensityOperator& rho) {
    DensityOperator out = rho;
    ComplexMatrix scratch;
    apply_shift_inplace(out, scratch);
    return out;
}

namespace {

// Scales every entry the target's projectors would remove by `keep`, leaving
// kept entries untouched. keep = 0 is the projective measurement itself;
// keep = 1-p is the per-step convex combination (kept entries of rho appear
// in both terms with weights summing to exactly 1).
void dephase_scale_inplace(DensityOperator& rho, NoiseTarget target, double keep) {
    const kernels::Ops& k = kernels::active();
    int64_t d = rho.dim();
    for (int64_t r = 0; r < d; ++r) {
        c64* row = rho.mat.row(r);
        switch (target) {
            case NoiseTarget::Position: {
                int64_t q = r / 2;
                k.scale_span(row, static_cast<size_t>(2 * q), keep);
                k.scale_span(row + 2 * q + 2, static_cast<size_t>(d - 2 * q - 2), keep);
                break;
            }
            case NoiseTarget::Coin: {
                k.scale_alternate(row, static_cast<size_t>(d), static_cast<size_t>((r & 1) ^ 1),
                                  keep);
                break;
            }
            case NoiseTarget::Both: {
                k.scale_span(row, static_cast<size_t>(r), keep);
                k.scale_span(row + r + 1, static_cast<size_t>(d - r - 1), keep);
                break;
            }
        }
    }
}

}  // namespace

DensityOperator dephase(const DensityOperator& rho, NoiseTarget target) {
    DensityOperator out = rho;
    dephase_scale_inplace(out, target, 0.0);
    return out;
}

StepStats step_inplace(DensityOperator& rho, const NoiseModel& noise, ComplexMatrix& scratch) {
    noise.validate();
    apply_coin_inplace(rho);
    apply_shift_inplace(rho, scratch);
    if (noise.rate > 0.0) {
        dephase_scale_inplace(rho, noise.target, 1.0 - noise.rate);
    }

    // Re-symmetrize and renormalize, aborting when the pre-correction drift
    // is beyond what roundoff can explain.
    StepStats stats;
    int64_t d = rho.dim();
    ComplexMatrix& m = rho.mat;
    for (int64_t i = 0; i < d; ++i) {
        double im = std::abs(m.at(i, i).imag());
        if (2.0 * im > stats.hermiticity_drift) stats.hermiticity_drift = 2.0 * im;
        m.at(i, i) = c64{m.at(i, i).real(), 0.0};
        for (int64_t j = i + 1; j < d; ++j) {
            c64 upper = m.at(i, j);
            c64 mirror = std::conj(m.at(j, i));
            double dev = std::abs(upper - mirror);
            if (dev > stats.hermiticity_drift) stats.hermiticity_drift = dev;
            c64 mean = (upper + mirror) * 0.5;
            m.at(i, j) = mean;
            m.at(j, i) = std::conj(mean);
        }
    }
    double tr = m.trace().real();
    stats.trace_drift = std::abs(tr - 1.0);
    if (!(stats.max() <= kDriftAbort)) {
        throw NumericalCorruption("step drift " + std::to_string(stats.max()) +
                                  " exceeds abort threshold");
    }
    kernels::active().scale_span(m.a.data(), m.a.size(), 1.0 / tr);
    return stats;
}

DensityOperator step(const DensityOperator& rho, const NoiseModel& noise) {
    DensityOperator out = rho;
    ComplexMatrix scratch;
    step_inplace(out, noise, scratch);
    return out;
}

}  // namespace qwalk
