#include "qwalk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwalk {

void Distribution::validate(double tol) const {
    if (static_cast<int64_t>(probs.size()) != lattice.n_pos()) {
        throw DimensionMismatch("distribution has " + std::to_string(probs.size()) +
                                " entries for a lattice with " +
                                std::to_string(lattice.n_pos()) + " positions");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (p < -1e-14) {
            throw NumericalCorruption("distribution entry " + std::to_string(p) +
                                      " is negative beyond dust tolerance");
        }
        sum += p;
    }
    if (!(std::abs(sum - 1.0) <= tol)) {
        throw NumericalCorruption("distribution sums to " + std::to_string(sum));
    }
}

Distribution position_distribution(const DensityOperator& rho) {
    int64_t n_pos = rho.lattice.n_pos();
    Distribution d{rho.lattice, std::vector<double>(static_cast<size_t>(n_pos))};
    for (int64_t q = 0; q < n_pos; ++q) {
        double p = rho.mat.at(2 * q, 2 * q).real() + rho.mat.at(2 * q + 1, 2 * q + 1).real();
        if (p < 0.0 && p >= -1e-14) p = 0.0;
        d.probs[static_cast<size_t>(q)] = p;
    }
    return d;
}

double std_dev(const Distribution& d) {
    if (d.lattice.is_cycle()) {
        throw CycleUnsupported("standard deviation is only defined on line lattices");
    }
    d.validate();
    double m1 = 0.0, m2 = 0.0;
    for (int64_t q = 0; q < d.lattice.n_pos(); ++q) {
        double x = static_cast<double>(d.lattice.x_of(q));
        double p = d.probs[static_cast<size_t>(q)];
        m1 += p * x;
        m2 += p * x * x;
    }
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

double tvd(const Distribution& a, const Distribution& b) {
    if (!(a.lattice == b.lattice)) {
        throw LatticeMismatch("total variational distance requires matching lattices");
    }
    double sum = 0.0;
    for (size_t i = 0; i < a.probs.size(); ++i) sum += std::abs(a.probs[i] - b.probs[i]);
    return sum;
}

Distribution top_hat_reference(const Lattice& line, int64_t t) {
    if (!line.is_line()) {
        throw CycleUnsupported("the top-hat reference is only defined on line lattices");
    }
    int64_t radius = static_cast<int64_t>(std::floor(static_cast<double>(t) / std::sqrt(2.0)));
    if (radius < 1 && ((t % 2) + 2) % 2 == 1) radius = 1;
    Distribution d{line, std::vector<double>(static_cast<size_t>(line.n_pos()), 0.0)};
    int64_t count = 0;
    for (int64_t x = -radius; x <= radius; ++x) {
        if (((x - t) % 2 + 2) % 2 == 0 && line.contains(x)) ++count;
    }
    for (int64_t x = -radius; x <= radius; ++x) {
        if (((x - t) % 2 + 2) % 2 == 0 && line.contains(x)) {
            d.probs[static_cast<size_t>(line.offset_of(x))] = 1.0 / static_cast<double>(count);
        }
    }
    return d;
}

Distribution uniform_reference(const Lattice& cycle) {
    int64_t n = cycle.n_pos();
    return Distribution{cycle,
                        std::vector<double>(static_cast<size_t>(n), 1.0 / static_cast<double>(n))};
}

Distribution time_averaged(const std::vector<Distribution>& series, int64_t through) {
    if (through < 1 || through > static_cast<int64_t>(series.size())) {
        throw EmptySeries("time average over " + std::to_string(through) + " steps needs " +
                          std::to_string(through) + " recorded distributions, have " +
                          std::to_string(series.size()));
    }
    Distribution out{series.front().lattice,
                     std::vector<double>(series.front().probs.size(), 0.0)};
    for (int64_t t = 0; t < through; ++t) {
        const Distribution& d = series[static_cast<size_t>(t)];
        if (!(d.lattice == out.lattice)) {
            throw LatticeMismatch("time average over a series with mixed lattices");
        }
        for (size_t i = 0; i < out.probs.size(); ++i) out.probs[i] += d.probs[i];
    }
    for (double& p : out.probs) p /= static_cast<double>(through);
    return out;
}

MixingResult mixing_time(const std::vector<Distribution>& series, const Distribution& reference,
                         double epsilon, bool averaged) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        throw InvalidEpsilon("epsilon must lie in (0, 2), got " + std::to_string(epsilon));
    }
    if (series.empty()) throw EmptySeries("mixing time of an empty series");

    int64_t horizon = static_cast<int64_t>(series.size()) - 1;
    std::vector<double> dist(series.size());
    if (!averaged) {
        for (size_t t = 0; t < series.size(); ++t) dist[t] = tvd(series[t], reference);
    } else {
        Distribution run{reference.lattice, std::vector<double>(reference.probs.size(), 0.0)};
        for (size_t t = 1; t < series.size(); ++t) {
            const Distribution& d = series[t - 1];
            if (!(d.lattice == reference.lattice)) {
                throw LatticeMismatch("mixing time over a series with mixed lattices");
            }
            for (size_t i = 0; i < run.probs.size(); ++i) run.probs[i] += d.probs[i];
            Distribution mean{run.lattice, run.probs};
            for (double& p : mean.probs) p /= static_cast<double>(t);
            dist[t] = tvd(mean, reference);
        }
        dist[0] = series.size() > 1 ? dist[1] : tvd(series[0], reference);
    }

    MixingResult result;
    result.epsilon = epsilon;
    result.horizon = horizon;
    result.averaged = averaged;
    int64_t last_violation = -1;
    for (int64_t t = 0; t <= horizon; ++t) {
        if (dist[static_cast<size_t>(t)] >= epsilon) last_violation = t;
    }
    if (last_violation < 0) {
        result.mixing_time = 0;
    } else if (last_violation < horizon) {
        result.mixing_time = last_violation;
    }
    return result;
}

ComplexMatrix partial_transpose(const DensityOperator& rho) {
    int64_t n_pos = rho.lattice.n_pos();
    ComplexMatrix out(rho.dim());
    for (int64_t qx = 0; qx < n_pos; ++qx) {
        for (int64_t qy = 0; qy < n_pos; ++qy) {
            for (int64_t c = 0; c < 2; ++c) {
                for (int64_t b = 0; b < 2; ++b) {
                    out.at(2 * qx + c, 2 * qy + b) = rho.mat.at(2 * qx + b, 2 * qy + c);
                }
            }
        }
    }
    return out;
}

double negativity(const DensityOperator& rho) {
    RealSpectrum spec = hermitian_eigenvalues(partial_transpose(rho));
    double abs_sum = 0.0;
    for (double v : spec.values) abs_sum += std::abs(v);
    double e = (abs_sum - 1.0) / 2.0;
    if (e < 0.0) e = 0.0;
    if (e > 0.5 + 1e-9) {
        throw NumericalCorruption("negativity " + std::to_string(e) +
                                  " exceeds the qubit-coin maximum of 1/2");
    }
    return e;
}

}  // namespace qwalk
