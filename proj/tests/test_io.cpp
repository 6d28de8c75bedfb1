#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "discrim/evaluate.hpp"
#include "discrim/io.hpp"
#include "helpers.hpp"

using namespace discrim;
using namespace testutil;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "discrim_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("ensemble file loads with explicit and default priors") {
    auto p = temp_file("two.json");
    write_text(p, R"({
      "label": "pair",
      "dimension": 2,
      "states": [[[1,0],[0,0]], [[0.7071067811865476,0],[0.7071067811865476,0]]]
    })");
    EnsembleFile ef = load_ensemble(p);
    CHECK(ef.label == "pair");
    CHECK(ef.ensemble.prior(0) == doctest::Approx(0.5));
    CHECK(std::abs(overlap(ef.ensemble.state(0), ef.ensemble.state(1))) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("ensemble file diagnostics name the offending field") {
    auto p = temp_file("bad.json");
    write_text(p, R"({"dimension": 2, "states": [[[1,0]]]})");
    CHECK_THROWS_WITH_AS(load_ensemble(p),
                         doctest::Contains("state 0"), std::invalid_argument);

    write_text(p, R"({"states": [[[1,0],[0,0]],[[0,0],[1,0]]]})");
    CHECK_THROWS_WITH_AS(load_ensemble(p), doctest::Contains("dimension"), std::invalid_argument);

    write_text(p, R"(not json)");
    CHECK_THROWS_AS(load_ensemble(p), std::invalid_argument);

    CHECK_THROWS_AS(load_ensemble(temp_file("missing.json")), std::invalid_argument);
}

TEST_CASE("off-norm states are rejected unless normalization is requested") {
    auto p = temp_file("rounded.json");
    write_text(p, R"({
      "dimension": 2,
      "states": [[[1,0],[0,0]], [[0.71,0],[0.71,0]]]
    })");
    CHECK_THROWS_AS(load_ensemble(p), std::invalid_argument);

    write_text(p, R"({
      "dimension": 2,
      "states": [[[1,0],[0,0]], [[0.71,0],[0.71,0]]],
      "normalize": true
    })");
    EnsembleFile ef = load_ensemble(p);
    CHECK(ef.ensemble.state(1).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strategy snapshots round-trip for both measurement kinds") {
    Ensemble two = two_state_ensemble();
    EnsembleFile ef{two, "two"};

    TradeoffCurve pvm_curve;
    PvmStrategy s(helstrom_basis(kPi / 4), {1.0, 0.25});
    pvm_curve.points.push_back({0.1, evaluate_pvm(two, s), s, true});
    auto p1 = temp_file("pvm.strategies.json");
    save_strategies(p1, ef, pvm_curve);
    StrategySnapshotFile back = load_strategies(p1);
    CHECK(back.measurement == "pvm");
    CHECK(back.points.size() == 1);
    RatePoint r = evaluate_pvm(back.ensemble, std::get<PvmStrategy>(back.points[0].strategy));
    CHECK(r.correct == doctest::Approx(pvm_curve.points[0].rates.correct).epsilon(1e-12));

    TradeoffCurve povm_curve;
    PovmStrategy q = idp_povm(kPi / 4);
    povm_curve.points.push_back({0.0, evaluate_povm(two, q), q, true});
    auto p2 = temp_file("povm.strategies.json");
    save_strategies(p2, ef, povm_curve);
    StrategySnapshotFile back2 = load_strategies(p2);
    CHECK(back2.measurement == "povm");
    RatePoint r2 = evaluate_povm(back2.ensemble, std::get<PovmStrategy>(back2.points[0].strategy));
    CHECK(r2.inconclusive == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("curve csv writes the documented schema and reads back") {
    Ensemble two = two_state_ensemble();
    TradeoffCurve curve;
    PvmStrategy s(helstrom_basis(kPi / 4), {1.0, 1.0});
    curve.points.push_back({0.0, make_rate_point(0.25, 0.0), s, true});
    curve.points.push_back({0.146447, evaluate_pvm(two, s), s, false});

    std::ostringstream oss;
    write_curve_csv(oss, curve);
    std::string text = oss.str();
    CHECK(text.rfind("epsilon,p_in,p_c,p_e,certified\n", 0) == 0);
    CHECK(text.find(",0\n") != std::string::npos);  // uncertified row flagged 0

    auto p = temp_file("curve.csv");
    write_curve_csv(p, curve);
    auto rows = read_curve_csv(p);
    CHECK(rows.size() == 2);
    CHECK(rows[0].first == doctest::Approx(0.0));
    CHECK(rows[0].second == doctest::Approx(0.75).epsilon(1e-9));

    write_text(p, "epsilon,foo\n0,1\n");
    CHECK_THROWS_AS(read_curve_csv(p), std::invalid_argument);
    write_text(p, "epsilon,p_in\n0,abc\n");
    CHECK_THROWS_AS(read_curve_csv(p), std::invalid_argument);
}

TEST_CASE("nine significant digits in formatting") {
    CHECK(format_double(0.14644660940672624) == "0.146446609");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(2.5e-07) == "2.5e-07");
}

TEST_CASE("grid specifications") {
    auto lin = parse_eps_grid("lin:0:1:5", std::nullopt);
    CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

    auto lg = parse_eps_grid("log:1e-4:1e-1:4", std::nullopt);
    CHECK(lg.size() == 4);
    CHECK(lg[0] == doctest::Approx(1e-4));
    CHECK(lg[1] == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(lg[3] == doctest::Approx(1e-1));

    auto manual = parse_eps_grid("0,0.05,0.1", std::nullopt);
    CHECK(manual.size() == 3);

    auto refd = parse_eps_grid("log:1e-6:P_ME:40", 0.146447);
    CHECK(refd.size() == 40);
    CHECK(refd.back() == doctest::Approx(0.146447));

    CHECK_THROWS_AS(parse_eps_grid("log:1e-6:P_ME:40", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_grid("log:0:1:5", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_grid("lin:1:0:5", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_grid("0.2,0.1", std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(parse_eps_grid("", std::nullopt), std::invalid_argument);
}
