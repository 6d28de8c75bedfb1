#include "discrim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "discrim/rng.hpp"

namespace discrim {

namespace {

// Per-state outcome tables. Outcome k in [0, n) is measurement element k;
// outcome n is the explicit inconclusive element (POVM only).
struct OutcomeTable {
    std::vector<double> state_cdf;              // prior CDF
    std::vector<std::vector<double>> outcome_cdf;  // per state
    const std::vector<double>* weights = nullptr;  // PVM discrimination weights
    int n = 0;
};

OutcomeTable build_table(const Ensemble& e, const Strategy& s) {
    OutcomeTable t;
    t.n = e.size();
    t.state_cdf.resize(static_cast<std::size_t>(t.n));
    double acc = 0.0;
    for (int j = 0; j < t.n; ++j) {
        acc += e.prior(j);
        t.state_cdf[static_cast<std::size_t>(j)] = acc;
    }
    t.state_cdf.back() = 1.0;

    t.outcome_cdf.resize(static_cast<std::size_t>(t.n));
    for (int j = 0; j < t.n; ++j) {
        const Vector& psi = e.state(j).amplitudes();
        std::vector<double> probs;
        if (const auto* pvm = std::get_if<PvmStrategy>(&s)) {
            if (pvm->dimension() != e.dimension() || pvm->size() != t.n) {
                throw std::invalid_argument("simulate_strategy: strategy shape mismatch");
            }
            for (int k = 0; k < t.n; ++k) {
                probs.push_back(
                    std::norm(pvm->basis()[static_cast<std::size_t>(k)].amplitudes().dot(psi)));
            }
        } else {
            const auto& povm = std::get<PovmStrategy>(s);
            if (povm.dimension() != e.dimension() || povm.size() != t.n) {
                throw std::invalid_argument("simulate_strategy: strategy shape mismatch");
            }
            for (int k = 0; k < t.n; ++k) {
                probs.push_back(std::real(
                    psi.dot(povm.elements()[static_cast<std::size_t>(k)] * psi)));
            }
            probs.push_back(std::real(psi.dot(povm.inconclusive_element() * psi)));
        }
        double total = 0.0;
        for (double q : probs) total += std::max(0.0, q);
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument(
                "simulate_strategy: outcome probabilities do not sum to 1 for a sampled state");
        }
        std::vector<double> cdf;
        double run = 0.0;
        for (double q : probs) {
            run += std::max(0.0, q);
            cdf.push_back(run);
        }
        cdf.back() = 1.0;
        t.outcome_cdf[static_cast<std::size_t>(j)] = std::move(cdf);
    }
    if (const auto* pvm = std::get_if<PvmStrategy>(&s)) {
        t.weights = &pvm->weights();
    }
    return t;
}

int pick(const std::vector<double>& cdf, double u) {
    for (std::size_t k = 0; k < cdf.size(); ++k) {
        if (u < cdf[k]) return static_cast<int>(k);
    }
    return static_cast<int>(cdf.size()) - 1;
}

}  // namespace

TrialCounts simulate_range(const Ensemble& e, const Strategy& s, std::int64_t first,
                           std::int64_t last, std::uint64_t seed) {
    OutcomeTable table = build_table(e, s);
    CounterRng rng(seed);
    TrialCounts counts;
    for (std::int64_t t = first; t < last; ++t) {
        auto trial = static_cast<std::uint64_t>(t);
        int state = pick(table.state_cdf, rng.uniform(trial, 0));
        int outcome = pick(table.outcome_cdf[static_cast<std::size_t>(state)],
                           rng.uniform(trial, 1));
        bool inconclusive;
        if (outcome >= table.n) {
            inconclusive = true;  // explicit inconclusive element
        } else if (table.weights) {
            inconclusive =
                rng.uniform(trial, 2) >= (*table.weights)[static_cast<std::size_t>(outcome)];
        } else {
            inconclusive = false;
        }
        if (inconclusive) {
            ++counts.inconclusive;
        } else if (outcome == state) {
            ++counts.correct;
        } else {
            ++counts.error;
        }
    }
    return counts;
}

SimulationReport simulate_strategy(const Ensemble& e, const Strategy& s, std::int64_t trials,
                                   std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("simulate_strategy: need at least one trial");
    }
    TrialCounts counts = simulate_range(e, s, 0, trials, seed);
    SimulationReport report;
    report.trials = trials;
    report.seed = seed;
    report.correct_count = counts.correct;
    report.error_count = counts.error;
    report.inconclusive_count = counts.inconclusive;
    auto frac = [&](std::int64_t c) {
        return static_cast<double>(c) / static_cast<double>(trials);
    };
    report.empirical.correct = frac(counts.correct);
    report.empirical.error = frac(counts.error);
    report.empirical.inconclusive = frac(counts.inconclusive);
    auto se = [&](double r) { return std::sqrt(r * (1.0 - r) / static_cast<double>(trials)); };
    report.se_correct = se(report.empirical.correct);
    report.se_error = se(report.empirical.error);
    report.se_inconclusive = se(report.empirical.inconclusive);
    return report;
}

SimulationReport simulate_strategy(const Ensemble& e, const PvmStrategy& s, std::int64_t trials,
                                   std::uint64_t seed) {
    return simulate_strategy(e, Strategy(s), trials, seed);
}

SimulationReport simulate_strategy(const Ensemble& e, const PovmStrategy& s, std::int64_t trials,
                                   std::uint64_t seed) {
    return simulate_strategy(e, Strategy(s), trials, seed);
}

}  // namespace discrim
