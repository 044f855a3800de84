#include <cmath>
#include <random>

#include "qwalk/experiments.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// k-th output of the splitmix64 stream seeded at `state`.
uint64_t splitmix64(uint64_t state) {
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1), 53-bit
}

// Collapse conventions: outcomes are scanned in basis order against
// u * total_probability, so only positive-probability branches are reachable
// (u < 1 strictly).

void measure_coin(PureState& psi, double u) {
    double m[2] = {0.0, 0.0};
    for (size_t q = 0; 2 * q < psi.amp.size(); ++q) {
        m[0] += std::norm(psi.amp[2 * q]);
        m[1] += std::norm(psi.amp[2 * q + 1]);
    }
    size_t keep = (u * (m[0] + m[1]) < m[0]) ? 0 : 1;
    double inv = 1.0 / std::sqrt(m[keep]);
    for (size_t q = 0; 2 * q < psi.amp.size(); ++q) {
        psi.amp[2 * q + (1 - keep)] = c64{};
        psi.amp[2 * q + keep] *= inv;
    }
}

void measure_position(PureState& psi, double u) {
    size_t n_pos = psi.amp.size() / 2;
    double total = 0.0;
    for (const c64& z : psi.amp) total += std::norm(z);
    double threshold = u * total;
    double acc = 0.0;
    size_t keep = n_pos - 1;
    for (size_t q = 0; q < n_pos; ++q) {
        acc += std::norm(psi.amp[2 * q]) + std::norm(psi.amp[2 * q + 1]);
        if (threshold < acc) {
            keep = q;
            break;
        }
    }
    double prob = std::norm(psi.amp[2 * keep]) + std::norm(psi.amp[2 * keep + 1]);
    double inv = 1.0 / std::sqrt(prob);
    for (size_t q = 0; q < n_pos; ++q) {
        if (q == keep) {
            psi.amp[2 * q] *= inv;
            psi.amp[2 * q + 1] *= inv;
        } else {
            psi.amp[2 * q] = c64{};
            psi.amp[2 * q + 1] = c64{};
        }
    }
}

void measure_both(PureState& psi, double u) {
    double total = 0.0;
    for (const c64& z : psi.amp) total += std::norm(z);
    double threshold = u * total;
    double acc = 0.0;
    size_t keep = psi.amp.size() - 1;
    for (size_t i = 0; i < psi.amp.size(); ++i) {
        acc += std::norm(psi.amp[i]);
        if (threshold < acc) {
            keep = i;
            break;
        }
    }
    std::fill(psi.amp.begin(), psi.amp.end(), c64{});
    psi.amp[keep] = c64{1.0, 0.0};
}

}  // namespace

Distribution trajectory_oracle(const WalkConfig& config, int64_t samples, uint64_t seed,
                               int jobs) {
    config.validate();
    if (samples < 1) throw InvalidConfig("trajectory oracle needs samples >= 1");

    int64_t n_pos = config.lattice.n_pos();
    double p = config.noise.rate;
    constexpr int64_t kChunk = 256;
    int64_t n_chunks = (samples + kChunk - 1) / kChunk;

    // Per-chunk partial sums, folded in chunk order afterwards, keep the
    // result byte-identical for every worker count.
    std::vector<std::vector<double>> partial(static_cast<size_t>(n_chunks));
    parallel_for(static_cast<size_t>(n_chunks), jobs, [&](size_t c) {
        std::vector<double>& acc = partial[c];
        acc.assign(static_cast<size_t>(n_pos), 0.0);
        int64_t begin = static_cast<int64_t>(c) * kChunk;
        int64_t end = std::min(samples, begin + kChunk);
        for (int64_t k = begin; k < end; ++k) {
            std::mt19937_64 eng(splitmix64(seed + kGolden * (static_cast<uint64_t>(k) + 1)));
            PureState psi = pure_initial(config);
            for (int64_t t = 0; t < config.steps; ++t) {
                pure_step(psi);
                if (p > 0.0 && uniform01(eng) < p) {
                    double u = uniform01(eng);
                    switch (config.noise.target) {
                        case NoiseTarget::Coin: measure_coin(psi, u); break;
                        case NoiseTarget::Position: measure_position(psi, u); break;
                        case NoiseTarget::Both: measure_both(psi, u); break;
                    }
                }
            }
            for (int64_t q = 0; q < n_pos; ++q) {
                acc[static_cast<size_t>(q)] += std::norm(psi.amp[static_cast<size_t>(2 * q)]) +
                                               std::norm(psi.amp[static_cast<size_t>(2 * q) + 1]);
            }
        }
    });

    Distribution out{config.lattice, std::vector<double>(static_cast<size_t>(n_pos), 0.0)};
    for (const std::vector<double>& acc : partial) {
        for (size_t i = 0; i < out.probs.size(); ++i) out.probs[i] += acc[i];
    }
    for (double& v : out.probs) v /= static_cast<double>(samples);
    return out;
}

}  // namespace qwalk
