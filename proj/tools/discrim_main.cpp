#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "discrim/analytic.hpp"
#include "discrim/b92.hpp"
#include "discrim/evaluate.hpp"
#include "discrim/io.hpp"
#include "discrim/montecarlo.hpp"
#include "discrim/povm_opt.hpp"
#include "discrim/pvm_opt.hpp"

namespace {

using namespace discrim;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DISCRIM_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

double ensemble_p_me(const Ensemble& e, std::uint64_t seed) {
    if (e.size() == 2) {
        double s = std::abs(overlap(e.state(0), e.state(1)));
        return helstrom_bound(e.prior(0), e.prior(1), s);
    }
    PvmOptions o;
    o.restarts = 16;
    o.seed = seed;
    return cm_min_error(e, e.size(), o).min_error;
}

void print_rates(const RatePoint& r) {
    std::cout << "P_C=" << format_double(r.correct) << " P_E=" << format_double(r.error)
              << " P_In=" << format_double(r.inconclusive) << '\n';
}

int cmd_bounds(const std::string& ensemble_path, std::uint64_t seed) {
    EnsembleFile ef = load_ensemble(ensemble_path);
    const Ensemble& e = ef.ensemble;
    int n = e.size();
    std::cout << "ensemble: " << (ef.label.empty() ? ensemble_path : ef.label) << " (n=" << n
              << ", dim=" << e.dimension() << ")\n";
    UdPvmResult ud = ud_pvm_rate(e);
    double ud_in = 1.0 - ud.rate;
    if (n == 2) {
        double s = std::abs(overlap(e.state(0), e.state(1)));
        double p_me = helstrom_bound(e.prior(0), e.prior(1), s);
        double povm = ud_povm_rate_two_state(e.prior(0), e.prior(1), s);
        std::cout << "overlap |<psi1|psi2>|: " << format_double(s) << '\n';
        std::cout << "P_ME (minimum error): " << format_double(p_me) << '\n';
        std::cout << "UD PVM conclusive rate: " << format_double(ud.rate) << " (state "
                  << ud.state_index << ")\n";
        std::cout << "UD POVM conclusive rate: " << format_double(povm) << '\n';
        std::cout << "abstain line: (0, 1) -> (" << format_double(p_me) << ", 0)\n";
    } else {
        double p_me = ensemble_p_me(e, seed);
        std::cout << "P_ME (minimum error, numeric): " << format_double(p_me) << '\n';
        std::cout << "UD PVM conclusive rate: " << format_double(ud.rate) << " (state "
                  << ud.state_index << ")\n";
        std::cout << "abstain line: (0, 1) -> (" << format_double(p_me) << ", 0)\n";
    }
    double slope = static_cast<double>(n) / (n - 1);
    std::cout << "guess line: (0, " << format_double(ud_in) << ") -> ("
              << format_double(ud_in * (n - 1) / static_cast<double>(n)) << ", 0), slope -"
              << format_double(slope) << '\n';
    return 0;
}

int cmd_curve(const std::string& ensemble_path, const std::string& measurement,
              const std::string& grid_spec, const std::string& out_path, int restarts,
              std::uint64_t seed) {
    EnsembleFile ef = load_ensemble(ensemble_path);
    const Ensemble& e = ef.ensemble;
    std::optional<double> p_me;
    if (grid_spec.find("P_ME") != std::string::npos ||
        grid_spec.find("p_me") != std::string::npos) {
        p_me = ensemble_p_me(e, seed);
    }
    std::vector<double> grid = parse_eps_grid(grid_spec, p_me);

    TradeoffCurve curve;
    if (measurement == "pvm") {
        PvmOptions o;
        o.restarts = restarts;
        o.seed = seed;
        curve = pvm_tradeoff_curve(e, grid, o);
    } else if (measurement == "povm") {
        PovmOptions o;
        o.restarts = restarts;
        o.seed = seed;
        curve = povm_tradeoff_curve(e, grid, o);
    } else {
        throw std::invalid_argument("curve: --measurement must be pvm or povm");
    }
    write_curve_csv(out_path, curve);
    std::filesystem::path snapshots(out_path);
    snapshots.replace_extension(".strategies.json");
    save_strategies(snapshots, ef, curve);
    std::cout << "wrote " << out_path << " and " << snapshots.string() << '\n';

    bool all_certified = true;
    for (const auto& p : curve.points) all_certified = all_certified && p.certified;
    if (!all_certified) {
        std::cerr << "warning: some points are not certified\n";
        return 3;
    }
    return 0;
}

int cmd_eval(const std::string& strategy_path, std::optional<int> index) {
    StrategySnapshotFile sf = load_strategies(strategy_path);
    auto eval_one = [&](const TradeoffPoint& p) {
        RatePoint r = std::holds_alternative<PvmStrategy>(p.strategy)
                          ? evaluate_pvm(sf.ensemble, std::get<PvmStrategy>(p.strategy))
                          : evaluate_povm(sf.ensemble, std::get<PovmStrategy>(p.strategy));
        std::cout << "epsilon=" << format_double(p.epsilon) << ' ';
        print_rates(r);
    };
    if (index) {
        if (*index < 0 || *index >= static_cast<int>(sf.points.size())) {
            throw std::invalid_argument("eval: --index out of range");
        }
        eval_one(sf.points[static_cast<std::size_t>(*index)]);
    } else {
        for (const auto& p : sf.points) eval_one(p);
    }
    return 0;
}

int cmd_simulate(const std::string& strategy_path, std::int64_t trials, std::uint64_t seed,
                 int index) {
    StrategySnapshotFile sf = load_strategies(strategy_path);
    if (index < 0 || index >= static_cast<int>(sf.points.size())) {
        throw std::invalid_argument("simulate: --index out of range");
    }
    const TradeoffPoint& p = sf.points[static_cast<std::size_t>(index)];
    SimulationReport rep = simulate_strategy(sf.ensemble, p.strategy, trials, seed);
    std::cout << "trials=" << rep.trials << " seed=" << rep.seed << '\n';
    std::cout << "empirical: ";
    print_rates(rep.empirical);
    std::cout << "counts: correct=" << rep.correct_count << " error=" << rep.error_count
              << " inconclusive=" << rep.inconclusive_count << '\n';
    std::cout << "stderr: correct=" << format_double(rep.se_correct)
              << " error=" << format_double(rep.se_error)
              << " inconclusive=" << format_double(rep.se_inconclusive) << '\n';
    return 0;
}

int cmd_b92(const std::string& curve_path, double eb, double ep, double n_sifted) {
    auto rows = read_curve_csv(curve_path);
    B92Sweep sweep = b92_rate_vs_error(n_sifted, eb, ep, rows);
    std::cout << "epsilon,p_in,rate\n";
    for (const auto& p : sweep.points) {
        std::cout << format_double(p.epsilon) << ',' << format_double(p.inconclusive) << ','
                  << format_double(p.rate) << '\n';
    }
    const auto& bestp = sweep.points[static_cast<std::size_t>(sweep.best_index)];
    std::cout << "best: epsilon=" << format_double(bestp.epsilon)
              << " rate=" << format_double(bestp.rate) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded-error quantum state discrimination toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    std::string ensemble_path, measurement = "pvm", grid_spec = "log:1e-6:P_ME:40";
    std::string out_path = "curve.csv", strategy_path, curve_path;
    int restarts = 32, sim_index = 0;
    std::optional<int> eval_index;
    std::int64_t trials = 1000000;
    double eb = 0.0, ep = 0.0, n_sifted = 1000.0;

    auto* bounds = app.add_subcommand("bounds", "print analytic reference values");
    bounds->add_option("ensemble", ensemble_path, "ensemble JSON file")->required();

    auto* curve = app.add_subcommand("curve", "compute a trade-off curve and write CSV");
    curve->add_option("ensemble", ensemble_path, "ensemble JSON file")->required();
    curve->add_option("--measurement", measurement, "pvm or povm")->required();
    curve->add_option("--eps-grid", grid_spec, "lin:a:b:n, log:a:b:n or comma list");
    curve->add_option("--out", out_path, "output CSV path");
    curve->add_option("--restarts", restarts, "optimizer restarts per point");
    curve->add_option("--seed", seed, "master seed");

    auto* evalc = app.add_subcommand("eval", "re-evaluate a stored strategy");
    evalc->add_option("--strategy", strategy_path, "strategy snapshot file")->required();
    evalc->add_option("--index", [&eval_index](const CLI::results_t& res) {
        eval_index = std::stoi(res.front());
        return true;
    }, "snapshot index (default: all)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo verification of a stored strategy");
    sim->add_option("--strategy", strategy_path, "strategy snapshot file")->required();
    sim->add_option("--trials", trials, "number of trials");
    sim->add_option("--seed", seed, "simulation seed");
    sim->add_option("--index", sim_index, "snapshot index");

    auto* b92c = app.add_subcommand("b92", "key-rate sweep over a stored curve");
    b92c->add_option("--curve", curve_path, "curve CSV path")->required();
    b92c->add_option("--eb", eb, "bit-error fraction");
    b92c->add_option("--ep", ep, "phase-error fraction");
    b92c->add_option("--n", n_sifted, "sifted count N");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) return cmd_bounds(ensemble_path, seed);
        if (curve->parsed())
            return cmd_curve(ensemble_path, measurement, grid_spec, out_path, restarts, seed);
        if (evalc->parsed()) return cmd_eval(strategy_path, eval_index);
        if (sim->parsed()) return cmd_simulate(strategy_path, trials, seed, sim_index);
        if (b92c->parsed()) return cmd_b92(curve_path, eb, ep, n_sifted);
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
