#include "qwalk/observables.hpp"

namespace qwalk {

EvolveResult evolve(const WalkConfig& config, const ObserverSet& observers) {
    config.validate();
    if (observers.sigma && config.lattice.is_cycle()) {
        throw CycleUnsupported("sigma was requested for a cycle walk");
    }

    DensityOperator rho = initial_state(config);
    ComplexMatrix scratch;
    Distribution uniform =
        config.lattice.is_cycle() ? uniform_reference(config.lattice) : Distribution{};

    EvolveResult result{ObservableSeries{}, rho, 0.0};
    result.series.records.resize(static_cast<size_t>(config.steps) + 1);
    for (int64_t t = 0; t <= config.steps; ++t) {
        if (t > 0) {
            StepStats stats = step_inplace(rho, config.noise, scratch);
            if (stats.max() > result.max_drift) result.max_drift = stats.max();
        }
        StepRecord& rec = result.series.records[static_cast<size_t>(t)];
        if (observers.sigma || observers.tvd || observers.distribution) {
            Distribution dist = position_distribution(rho);
            if (observers.sigma) rec.sigma = std_dev(dist);
            if (observers.tvd) {
                rec.tvd = config.lattice.is_cycle()
                              ? tvd(dist, uniform)
                              : tvd(dist, top_hat_reference(config.lattice, t));
            }
            if (observers.distribution) rec.dist = std::move(dist);
        }
        if (observers.negativity) rec.negativity = negativity(rho);
    }
    result.final_state = std::move(rho);
    return result;
}

}  // namespace qwalk
