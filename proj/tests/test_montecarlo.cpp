#include <doctest.h>

#include <cmath>

#include "discrim/evaluate.hpp"
#include "discrim/montecarlo.hpp"
#include "helpers.hpp"

using namespace discrim;
using namespace testutil;

namespace {

PvmStrategy ud_pvm_pi4() {
    std::vector<QuantumState> basis = {
        QuantumState{Complex(std::sin(kPi / 4)), Complex(-std::cos(kPi / 4))},
        QuantumState{Complex(std::cos(kPi / 4)), Complex(std::sin(kPi / 4))}};
    return PvmStrategy(basis, {1.0, 0.0});
}

void check_within_4se(const Ensemble& e, const Strategy& s, const RatePoint& expected,
                      std::uint64_t seed) {
    const std::int64_t trials = 1000000;
    SimulationReport rep = simulate_strategy(e, s, trials, seed);
    auto band = [&](double expect, double got) {
        double se = std::sqrt(expect * (1.0 - expect) / static_cast<double>(trials));
        CHECK(std::abs(got - expect) <= 4.0 * se + 1e-15);
    };
    band(expected.correct, rep.empirical.correct);
    band(expected.error, rep.empirical.error);
    band(expected.inconclusive, rep.empirical.inconclusive);
}

}  // namespace

TEST_CASE("zero-overlap outcomes never fire") {
    Ensemble e = two_state_ensemble();
    SimulationReport rep = simulate_strategy(e, ud_pvm_pi4(), 200000, 271828);
    CHECK(rep.error_count == 0);
}

TEST_CASE("unambiguous strategy matches its analytic rates at a million trials") {
    Ensemble e = two_state_ensemble();
    PvmStrategy s = ud_pvm_pi4();
    check_within_4se(e, s, evaluate_pvm(e, s), 31415);
}

TEST_CASE("single-trial runs are deterministic") {
    Ensemble e = two_state_ensemble();
    PvmStrategy s = ud_pvm_pi4();
    SimulationReport a = simulate_strategy(e, s, 1, 7);
    SimulationReport b = simulate_strategy(e, s, 1, 7);
    SimulationReport c = simulate_strategy(e, s, 1, 7);
    CHECK(a.correct_count == b.correct_count);
    CHECK(b.correct_count == c.correct_count);
    CHECK(a.inconclusive_count == b.inconclusive_count);
    CHECK(a.error_count == c.error_count);
}

TEST_CASE("identical seeds are bit-identical, different seeds differ") {
    Ensemble e = two_state_ensemble();
    PvmStrategy s(helstrom_basis(kPi / 4), {1.0, 0.5});
    SimulationReport a = simulate_strategy(e, s, 100000, 99);
    SimulationReport b = simulate_strategy(e, s, 100000, 99);
    SimulationReport c = simulate_strategy(e, s, 100000, 100);
    CHECK(a.correct_count == b.correct_count);
    CHECK(a.error_count == b.error_count);
    CHECK(a.inconclusive_count == b.inconclusive_count);
    CHECK(a.correct_count != c.correct_count);
}

TEST_CASE("disjoint trial ranges merge to the full-range counts") {
    Ensemble e = two_state_ensemble();
    Strategy s{PvmStrategy(helstrom_basis(kPi / 4), {1.0, 1.0})};
    TrialCounts full = simulate_range(e, s, 0, 50000, 123);
    TrialCounts lo = simulate_range(e, s, 0, 20000, 123);
    TrialCounts hi = simulate_range(e, s, 20000, 50000, 123);
    CHECK(full.correct == lo.correct + hi.correct);
    CHECK(full.error == lo.error + hi.error);
    CHECK(full.inconclusive == lo.inconclusive + hi.inconclusive);
}

TEST_CASE("empirical rates agree with the defining sums across a strategy suite") {
    Ensemble two = two_state_ensemble();
    Ensemble three = three_state_ensemble();
    std::uint64_t seed = 8675309;

    std::vector<std::pair<const Ensemble*, Strategy>> suite;
    suite.emplace_back(&two, ud_pvm_pi4());
    suite.emplace_back(&two, PvmStrategy(helstrom_basis(kPi / 4), {1.0, 1.0}));
    suite.emplace_back(&two, PvmStrategy(helstrom_basis(kPi / 4), {1.0, 0.5}));
    suite.emplace_back(&two, PvmStrategy(helstrom_basis(kPi / 4), {0.7, 0.3}));
    {
        double a = kPi / 8;
        std::vector<QuantumState> rotated = {
            QuantumState{Complex(std::cos(a)), Complex(std::sin(a))},
            QuantumState{Complex(-std::sin(a)), Complex(std::cos(a))}};
        suite.emplace_back(&two, PvmStrategy(rotated, {1.0, 0.0}));
        suite.emplace_back(&two, PvmStrategy(rotated, {0.9, 0.2}));
    }
    suite.emplace_back(&two, idp_povm(kPi / 4));
    suite.emplace_back(&two, povm_from_pvm(PvmStrategy(helstrom_basis(kPi / 4), {1.0, 1.0})));
    {
        // mixture of the unambiguous and minimum-error measurements
        PovmStrategy a = idp_povm(kPi / 4);
        PovmStrategy b = povm_from_pvm(PvmStrategy(helstrom_basis(kPi / 4), {1.0, 1.0}));
        std::vector<Matrix> elems;
        for (int i = 0; i < 2; ++i) {
            elems.push_back(0.5 * a.elements()[static_cast<std::size_t>(i)] +
                            0.5 * b.elements()[static_cast<std::size_t>(i)]);
        }
        Matrix inc = 0.5 * a.inconclusive_element() + 0.5 * b.inconclusive_element();
        suite.emplace_back(&two, PovmStrategy(elems, inc));
    }
    suite.emplace_back(&three, PvmStrategy(c2_basis(three), {0.0, 1.0, 1.0}));
    suite.emplace_back(&three, PvmStrategy(c2_basis(three), {0.0, 1.0, 0.0}));

    CHECK(suite.size() >= 10);
    for (std::size_t k = 0; k < suite.size(); ++k) {
        const Ensemble& e = *suite[k].first;
        const Strategy& s = suite[k].second;
        RatePoint expected = std::holds_alternative<PvmStrategy>(s)
                                 ? evaluate_pvm(e, std::get<PvmStrategy>(s))
                                 : evaluate_povm(e, std::get<PovmStrategy>(s));
        check_within_4se(e, s, expected, seed + k);
    }
}

TEST_CASE("reports carry binomial standard errors and exact count sums") {
    Ensemble e = two_state_ensemble();
    SimulationReport rep = simulate_strategy(e, PvmStrategy(helstrom_basis(kPi / 4), {1.0, 0.5}),
                                             40000, 5);
    CHECK(rep.correct_count + rep.error_count + rep.inconclusive_count == rep.trials);
    double r = rep.empirical.correct;
    CHECK(rep.se_correct == doctest::Approx(std::sqrt(r * (1 - r) / 40000.0)).epsilon(1e-12));
}

TEST_CASE("invalid inputs are rejected before sampling") {
    Ensemble e = two_state_ensemble();
    CHECK_THROWS_AS(simulate_strategy(e, ud_pvm_pi4(), 0, 1), std::invalid_argument);
    Ensemble three = three_state_ensemble();
    CHECK_THROWS_AS(simulate_strategy(three, Strategy(ud_pvm_pi4()), 10, 1),
                    std::invalid_argument);
}
