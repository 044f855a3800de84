#include "qwalk/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

constexpr double kInvSqrt2 = M_SQRT1_2;

int64_t ceil_log2(int64_t n) {
    return static_cast<int64_t>(std::bit_width(static_cast<uint64_t>(n - 1)));
}

std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    int64_t n = static_cast<int64_t>(a.size());
    std::vector<double> out(a.size(), 0.0);
    for (int64_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int64_t j = 0; j < n; ++j) {
            sum += a[static_cast<size_t>(j)] * b[static_cast<size_t>(((k - j) % n + n) % n)];
        }
        out[static_cast<size_t>(k)] = sum;
    }
    return out;
}

}  // namespace

void PureState::validate(double tol) const {
    if (static_cast<int64_t>(amp.size()) != 2 * lattice.n_pos()) {
        throw DimensionMismatch("pure state has " + std::to_string(amp.size()) +
                                " amplitudes for a lattice with " +
                                std::to_string(lattice.n_pos()) + " positions");
    }
    double norm = 0.0;
    for (const c64& z : amp) norm += std::norm(z);
    if (!(std::abs(norm - 1.0) <= tol)) {
        throw NumericalCorruption("pure state norm deviates from 1 by " +
                                  std::to_string(std::abs(norm - 1.0)));
    }
}

PureState pure_initial(const WalkConfig& config) {
    config.validate();
    PureState psi{config.lattice,
                  std::vector<c64>(static_cast<size_t>(2 * config.lattice.n_pos()))};
    int64_t base = 2 * config.lattice.offset_of(config.initial_position);
    psi.amp[static_cast<size_t>(base)] = config.coin_minus;
    psi.amp[static_cast<size_t>(base) + 1] = config.coin_plus;
    return psi;
}

void pure_step(PureState& psi) {
    int64_t n_pos = psi.lattice.n_pos();
    for (int64_t q = 0; q < n_pos; ++q) {
        c64 a = psi.amp[static_cast<size_t>(2 * q)];
        c64 b = psi.amp[static_cast<size_t>(2 * q) + 1];
        psi.amp[static_cast<size_t>(2 * q)] = (b - a) * kInvSqrt2;
        psi.amp[static_cast<size_t>(2 * q) + 1] = (a + b) * kInvSqrt2;
    }
    thread_local std::vector<c64> scratch;
    scratch.assign(psi.amp.size(), c64{});
    for (int64_t q = 0; q < n_pos; ++q) {
        for (int64_t b = 0; b < 2; ++b) {
            c64 v = psi.amp[static_cast<size_t>(2 * q + b)];
            int64_t target = q + (b ? +1 : -1);
            if (psi.lattice.is_cycle()) {
                target = (target + n_pos) % n_pos;
            } else if (target < 0 || target >= n_pos) {
                if (v != 0.0) {
                    throw BoundaryOverflow("pure walk support reached the line boundary");
                }
                continue;
            }
            scratch[static_cast<size_t>(2 * target + b)] = v;
        }
    }
    psi.amp.swap(scratch);
}

Distribution pure_distribution(const PureState& psi) {
    int64_t n_pos = psi.lattice.n_pos();
    Distribution d{psi.lattice, std::vector<double>(static_cast<size_t>(n_pos))};
    for (int64_t q = 0; q < n_pos; ++q) {
        d.probs[static_cast<size_t>(q)] = std::norm(psi.amp[static_cast<size_t>(2 * q)]) +
                                          std::norm(psi.amp[static_cast<size_t>(2 * q) + 1]);
    }
    return d;
}

double pure_negativity(const PureState& psi) {
    double g00 = 0.0, g11 = 0.0;
    c64 g01{};
    for (size_t q = 0; 2 * q < psi.amp.size(); ++q) {
        g00 += std::norm(psi.amp[2 * q]);
        g11 += std::norm(psi.amp[2 * q + 1]);
        g01 += psi.amp[2 * q] * std::conj(psi.amp[2 * q + 1]);
    }
    return std::sqrt(std::max(0.0, g00 * g11 - std::norm(g01)));
}

std::vector<SweepRow> sweep_noise(const Lattice& line, int64_t steps, NoiseTarget target,
                                  const std::vector<double>& p_grid, int jobs) {
    if (!line.is_line()) {
        throw CycleUnsupported("noise sweeps use the top-hat reference and need a line lattice");
    }
    for (size_t i = 0; i < p_grid.size(); ++i) {
        if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) {
            throw InvalidConfig("sweep grid value outside [0, 1]");
        }
        if (i > 0 && p_grid[i] < p_grid[i - 1]) {
            throw InvalidConfig("sweep grid must be sorted ascending");
        }
    }
    Distribution ref = top_hat_reference(line, steps);
    std::vector<SweepRow> rows(p_grid.size());
    parallel_for(p_grid.size(), jobs, [&](size_t i) {
        WalkConfig cfg{line, steps, NoiseModel{target, p_grid[i]}};
        EvolveResult r = evolve(cfg, ObserverSet{});
        Distribution dist = position_distribution(r.final_state);
        rows[i] = SweepRow{p_grid[i], tvd(dist, ref), negativity(r.final_state), std_dev(dist)};
    });
    return rows;
}

CycleMixingOutcome cycle_mixing_run(int64_t size, NoiseTarget target, double p, int64_t horizon,
                                    double epsilon) {
    Lattice cyc = Lattice::cycle(size);
    if (horizon < 1) throw InvalidConfig("mixing horizon must be >= 1");
    double eps = epsilon != 0.0 ? epsilon : 1.0 / static_cast<double>(size);

    WalkConfig cfg{cyc, horizon, NoiseModel{target, p}};
    ObserverSet obs;
    obs.tvd = obs.negativity = obs.distribution = true;
    EvolveResult r = evolve(cfg, obs);

    std::vector<Distribution> dists;
    dists.reserve(r.series.records.size());
    for (const StepRecord& rec : r.series.records) dists.push_back(*rec.dist);
    Distribution uniform = uniform_reference(cyc);

    CycleMixingOutcome out;
    out.tvd_averaged.resize(dists.size());
    std::vector<double> running(static_cast<size_t>(size), 0.0);
    for (size_t t = 1; t < dists.size(); ++t) {
        for (size_t i = 0; i < running.size(); ++i) running[i] += dists[t - 1].probs[i];
        Distribution mean{cyc, running};
        for (double& v : mean.probs) v /= static_cast<double>(t);
        out.tvd_averaged[t] = tvd(mean, uniform);
    }
    out.tvd_averaged[0] = out.tvd_averaged[1];
    out.instantaneous = mixing_time(dists, uniform, eps, false);
    out.averaged = mixing_time(dists, uniform, eps, true);
    out.series = std::move(r.series);
    return out;
}

Distribution warm_start_distribution(int64_t size, int64_t steps, int64_t restarts) {
    if (steps < 1) throw InvalidConfig("warm start needs steps >= 1");
    if (restarts < 0) throw InvalidConfig("restart count must be >= 0");
    Lattice cyc = Lattice::cycle(size);
    WalkConfig cfg{cyc, steps, NoiseModel{}};
    PureState psi = pure_initial(cfg);
    std::vector<double> base(static_cast<size_t>(size), 0.0);
    for (int64_t t = 0; t < steps; ++t) {
        Distribution d = pure_distribution(psi);
        for (size_t i = 0; i < base.size(); ++i) base[i] += d.probs[i];
        pure_step(psi);
    }
    for (double& v : base) v /= static_cast<double>(steps);

    std::vector<double> out = base;
    for (int64_t r = 0; r < restarts; ++r) out = circular_convolution(out, base);
    Distribution result{cyc, std::move(out)};
    result.validate();
    return result;
}

Distribution classical_baseline(const Lattice& lattice, int64_t steps) {
    if (steps < 0) throw InvalidConfig("steps must be >= 0");
    if (lattice.is_line() && steps > lattice.extent) {
        throw InvalidConfig("classical steps exceed the line horizon");
    }
    int64_t n = lattice.n_pos();
    std::vector<double> probs(static_cast<size_t>(n), 0.0);
    std::vector<double> next(static_cast<size_t>(n), 0.0);
    probs[static_cast<size_t>(lattice.offset_of(0))] = 1.0;
    bool wrap = lattice.is_cycle();
    for (int64_t t = 0; t < steps; ++t) {
        for (int64_t i = 0; i < n; ++i) {
            double left = i > 0 ? probs[static_cast<size_t>(i - 1)]
                                : (wrap ? probs[static_cast<size_t>(n - 1)] : 0.0);
            double right = i + 1 < n ? probs[static_cast<size_t>(i + 1)]
                                     : (wrap ? probs[0] : 0.0);
            next[static_cast<size_t>(i)] = (left + right) / 2.0;
        }
        probs.swap(next);
    }
    return Distribution{lattice, std::move(probs)};
}

ResourceEstimate resource_estimate(const ResourceMode& mode, NoiseTarget target, double p) {
    NoiseModel{target, p}.validate();
    bool line = mode.kind == Lattice::Kind::Line;
    int64_t width, steps;
    if (line) {
        if (mode.size < 1) throw InvalidMode("line resource mode needs T >= 1");
        width = ceil_log2(2 * mode.size + 1);
        steps = mode.size;
    } else {
        if (mode.size < 3) throw InvalidMode("cycle resource mode needs N >= 3");
        if (mode.mixing_steps < 1) {
            throw InvalidMode("cycle resource mode needs the mixing run length");
        }
        width = ceil_log2(mode.size);
        steps = mode.mixing_steps;
    }

    int64_t meas_gates = 0, meas_ancillae = 0;
    switch (target) {
        case NoiseTarget::Coin: meas_gates = meas_ancillae = 1; break;
        case NoiseTarget::Position: meas_gates = meas_ancillae = width; break;
        case NoiseTarget::Both: meas_gates = meas_ancillae = 1 + width; break;
    }

    ResourceEstimate est;
    est.expected_measurements = p * static_cast<double>(steps);
    int64_t events = std::llround(est.expected_measurements);
    est.quantum_gates = steps * (1 + width) + events * meas_gates;
    est.ancillae = events * meas_ancillae;
    est.qubits = 1 + width + est.ancillae;
    est.classical_steps = line ? mode.size * mode.size / 2 : 0;

    bool coin_only = target == NoiseTarget::Coin;
    if (line) {
        est.gates_class = coin_only ? "O(T log T + pT)" : "O(T log T + pT log T)";
        est.qubits_class = coin_only ? "O(log T + pT)" : "O(log T + pT log T)";
    } else {
        est.gates_class = coin_only ? "O(M(ε) log N + pM(ε))" : "O(M(ε) log N + pM(ε) log N)";
        est.qubits_class = coin_only ? "O(log N + pM(ε))" : "O(log N + pM(ε) log N)";
    }
    est.counting_model =
        "per step: coin toss 1 gate; shift s gates (s = position register width); "
        "measurement events at expectation p*steps; coin measurement 1 gate + 1 ancilla; "
        "position measurement s gates + s ancillae; both = sum; ancillae never recycled "
        "(randomness counted as a quantum resource); position count is an upper bound "
        "on the true minimum";
    return est;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw DegenerateInput("scaling fit needs at least 3 points");
    for (size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0)) {
            throw DegenerateInput("scaling fit needs positive sizes and times");
        }
        if (i > 0 && !(points[i].first > points[i - 1].first)) {
            throw DegenerateInput("scaling fit needs strictly increasing sizes");
        }
    }
    size_t n = points.size();
    std::vector<double> lx(n), ly(n);
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double fit = slope * lx[i] + intercept;
        ss_res += (ly[i] - fit) * (ly[i] - fit);
        ss_tot += (ly[i] - my) * (ly[i] - my);
    }
    ScalingFit out;
    out.exponent = slope;
    out.prefactor = std::exp(intercept);
    out.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return out;
}

std::vector<std::vector<double>> negativity_decay_run(int64_t steps,
                                                      const std::vector<double>& p_values,
                                                      NoiseTarget target, int jobs) {
    if (steps < 1) throw InvalidConfig("decay run needs steps >= 1");
    Lattice line = Lattice::line(steps);
    std::vector<std::vector<double>> out(p_values.size());
    parallel_for(p_values.size(), jobs, [&](size_t i) {
        WalkConfig cfg{line, steps, NoiseModel{target, p_values[i]}};
        ObserverSet obs;
        obs.negativity = true;
        EvolveResult r = evolve(cfg, obs);
        out[i].resize(r.series.records.size());
        for (size_t t = 0; t < out[i].size(); ++t) out[i][t] = r.series.records[t].negativity;
    });
    return out;
}

}  // namespace qwalk
