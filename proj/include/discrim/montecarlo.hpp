#pragma once

#include <cstdint>

#include "discrim/types.hpp"

namespace discrim {

struct SimulationReport {
    RatePoint empirical;
    double se_error = 0.0;
    double se_inconclusive = 0.0;
    double se_correct = 0.0;
    std::int64_t trials = 0;
    std::int64_t correct_count = 0;
    std::int64_t error_count = 0;
    std::int64_t inconclusive_count = 0;
    std::uint64_t seed = 0;
};

// Send-measure-respond experiment: each trial draws a state from the priors,
// draws an outcome by the Born rule, and (for PVMs) flips the discrimination
// weight coin to decide between interpretation and abstention. Trials are
// keyed by a counter-based generator, so a fixed (seed, inputs) pair gives a
// bit-identical report under any partitioning of the trial range.
SimulationReport simulate_strategy(const Ensemble& e, const PvmStrategy& s, std::int64_t trials,
                                   std::uint64_t seed);
SimulationReport simulate_strategy(const Ensemble& e, const PovmStrategy& s, std::int64_t trials,
                                   std::uint64_t seed);
SimulationReport simulate_strategy(const Ensemble& e, const Strategy& s, std::int64_t trials,
                                   std::uint64_t seed);

struct TrialCounts {
    std::int64_t correct = 0;
    std::int64_t error = 0;
    std::int64_t inconclusive = 0;
};

// Counts over the half-open trial range [first, last); counts over disjoint
// ranges with the same seed merge additively into the full-range result.
TrialCounts simulate_range(const Ensemble& e, const Strategy& s, std::int64_t first,
                           std::int64_t last, std::uint64_t seed);

}  // namespace discrim
