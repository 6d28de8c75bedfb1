#include <doctest.h>

#include "discrim/types.hpp"
#include "helpers.hpp"

using namespace discrim;

TEST_CASE("quantum state accepts near-unit input and renormalizes") {
    Vector v(2);
    v << Complex(1.0 + 5e-7), Complex(0.0);
    QuantumState s(v);
    CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quantum state rejects norm deviations beyond 1e-6") {
    Vector v(2);
    v << Complex(1.001), Complex(0.0);
    CHECK_THROWS_AS(QuantumState{v}, std::invalid_argument);
    Vector z(3);
    z.setZero();
    CHECK_THROWS_AS(QuantumState{z}, std::invalid_argument);
}

TEST_CASE("ensemble validates priors and state count") {
    std::vector<QuantumState> states;
    states.push_back(QuantumState{Complex(1.0), Complex(0.0)});
    states.push_back(QuantumState{Complex(0.0), Complex(1.0)});

    CHECK_THROWS_AS(Ensemble(states, {0.6, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble(states, {1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble(states, {1.0}), std::invalid_argument);

    // three states in dimension 2
    std::vector<QuantumState> too_many = states;
    too_many.push_back(QuantumState{Complex(1.0), Complex(0.0)});
    CHECK_THROWS_AS(Ensemble::with_equal_priors(too_many), std::invalid_argument);

    Ensemble ok = Ensemble::with_equal_priors(states);
    CHECK(ok.prior(0) == doctest::Approx(0.5));
}

TEST_CASE("pvm strategy enforces orthonormality and weight range") {
    QuantumState e0{Complex(1.0), Complex(0.0)};
    QuantumState e1{Complex(0.0), Complex(1.0)};
    QuantumState diag{Complex(std::sqrt(0.5)), Complex(std::sqrt(0.5))};

    CHECK_NOTHROW(PvmStrategy({e0, e1}, {1.0, 0.0}));
    CHECK_THROWS_AS(PvmStrategy({e0, diag}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PvmStrategy({e0, e1}, {1.0, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(PvmStrategy({e0, e1}, {1.0}), std::invalid_argument);
}

TEST_CASE("povm strategy enforces hermiticity, positivity, completeness") {
    Matrix id = Matrix::Identity(2, 2);
    Matrix zero = Matrix::Zero(2, 2);

    CHECK_NOTHROW(PovmStrategy({zero, zero}, id));

    Matrix nonherm = zero;
    nonherm(0, 1) = Complex(0.5, 0.0);
    CHECK_THROWS_AS(PovmStrategy({nonherm, zero}, id - nonherm), std::invalid_argument);

    Matrix negative = -0.1 * id;
    CHECK_THROWS_AS(PovmStrategy({negative, zero}, id + 0.1 * id), std::invalid_argument);

    CHECK_THROWS_AS(PovmStrategy({0.5 * id, zero}, id), std::invalid_argument);
}

TEST_CASE("rate point construction and validation") {
    RatePoint r = make_rate_point(0.25, 0.0);
    CHECK(r.inconclusive == doctest::Approx(0.75));
    validate(r);

    CHECK_THROWS_AS(make_rate_point(0.8, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(make_rate_point(-0.1, 0.0), std::invalid_argument);

    RatePoint bad{0.5, 0.2, 0.2};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("tradeoff curve invariants") {
    TradeoffCurve curve;
    PvmStrategy s({QuantumState{Complex(1.0), Complex(0.0)},
                   QuantumState{Complex(0.0), Complex(1.0)}},
                  {1.0, 1.0});
    curve.points.push_back({0.0, make_rate_point(0.2, 0.0), s, true});
    curve.points.push_back({0.1, make_rate_point(0.5, 0.1), s, true});
    CHECK_NOTHROW(validate(curve));

    curve.points.push_back({0.05, make_rate_point(0.9, 0.05), s, true});
    CHECK_THROWS_AS(validate(curve), std::invalid_argument);  // epsilons not increasing

    curve.points.pop_back();
    curve.points.push_back({0.2, make_rate_point(0.1, 0.2), s, true});
    CHECK_THROWS_AS(validate(curve), std::invalid_argument);  // P_In increased
}
