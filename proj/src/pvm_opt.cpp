#include "discrim/pvm_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "discrim/analytic.hpp"
#include "discrim/evaluate.hpp"
#include "discrim/nelder_mead.hpp"
#include "discrim/weights.hpp"

namespace discrim {

namespace {

constexpr double kBudgetSlack = 1e-7;

Matrix columns_from_basis(const std::vector<QuantumState>& basis) {
    Matrix u(basis.front().dimension(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        u.col(static_cast<Eigen::Index>(i)) = basis[i].amplitudes();
    }
    return u;
}

std::vector<QuantumState> basis_from_columns(const Matrix& u) {
    std::vector<QuantumState> basis;
    basis.reserve(static_cast<std::size_t>(u.cols()));
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
        basis.emplace_back(u.col(i).eval());
    }
    return basis;
}

// gains[i] = eta_i |<col_i|psi_i>|^2, costs[i] = sum_{j!=i} eta_j |<col_i|psi_j>|^2
void contributions(const Ensemble& e, const Matrix& cols, std::vector<double>& gains,
                   std::vector<double>& costs) {
    int n = e.size();
    gains.assign(static_cast<std::size_t>(n), 0.0);
    costs.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double p = e.prior(j) * std::norm(cols.col(i).dot(e.state(j).amplitudes()));
            if (j == i) {
                gains[static_cast<std::size_t>(i)] = p;
            } else {
                costs[static_cast<std::size_t>(i)] += p;
            }
        }
    }
}

// Basis with the discriminating direction for state `index` placed at
// position `index`, completed arbitrarily elsewhere.
Matrix ud_oriented_basis(const Ensemble& e, int index) {
    Matrix fixed(e.dimension(), 1);
    fixed.col(0) = ud_direction(e, index).amplitudes();
    Matrix u = complete_basis(fixed);
    if (index != 0) {
        u.col(0).swap(u.col(index));
    }
    return u;
}

struct Start {
    Matrix base;
    double step;  // initial simplex edge
};

std::vector<Start> build_starts(const Ensemble& e, const PvmOptions& opts,
                                std::uint64_t stream_tag) {
    std::vector<Start> starts;
    int n = e.size();
    try {
        starts.push_back({columns_from_basis(srm_basis(e)), 0.3});
    } catch (const std::invalid_argument&) {
        // rank-deficient ensemble: no SRM start
    }
    starts.push_back({Matrix::Identity(n, n), 0.3});
    for (int i = 0; i < n; ++i) {
        try {
            starts.push_back({ud_oriented_basis(e, i), 0.04});
        } catch (const std::exception&) {
            break;  // linearly dependent states have no UD directions
        }
    }
    for (const auto& warm : opts.warm_starts) {
        starts.push_back({columns_from_basis(warm.basis()), 0.04});
    }
    int randoms = std::max(2, opts.restarts - static_cast<int>(starts.size()));
    for (int k = 0; k < randoms; ++k) {
        SplitMix64 rng(derive_seed(opts.seed ^ stream_tag, static_cast<std::uint64_t>(k)));
        starts.push_back({random_unitary(n, rng), 0.3});
    }
    return starts;
}

struct LocalResult {
    double value = std::numeric_limits<double>::infinity();
    Matrix basis;
    bool converged = false;
};

// Two-phase simplex descent of `objective` over generator parameters
// composed on the right of `base`.
template <typename Objective>
LocalResult descend(const Objective& objective, const Start& start, int dim, Field field,
                    double tol, int max_iterations) {
    int d = parameter_count(dim, field);
    auto wrapped = [&](const std::vector<double>& x) {
        Matrix u = start.base * unitary_from_generator(
                                    generator_from_parameters(std::span(x), dim, field));
        return objective(u);
    };
    NelderMeadOptions nm;
    nm.f_tol = tol;
    nm.x_tol = 1e-9;
    nm.max_iterations = max_iterations;
    nm.initial_step = start.step;
    NelderMeadResult phase1 = nelder_mead(wrapped, std::vector<double>(static_cast<std::size_t>(d), 0.0), nm);
    nm.initial_step = std::max(1e-6, start.step / 25.0);
    NelderMeadResult phase2 = nelder_mead(wrapped, phase1.x, nm);

    LocalResult out;
    out.value = phase2.value;
    out.basis = start.base * unitary_from_generator(
                                 generator_from_parameters(std::span(phase2.x), dim, field));
    out.converged = phase2.converged;
    return out;
}

// Runs one local search per start and keeps the best by (value, index).
template <typename Objective>
std::pair<LocalResult, std::vector<double>> multistart(const Objective& objective,
                                                       const std::vector<Start>& starts, int dim,
                                                       const PvmOptions& opts) {
    std::vector<LocalResult> results(starts.size());
    auto run = [&](std::size_t k) {
        results[k] = descend(objective, starts[k], dim, opts.field, opts.tol, opts.max_iterations);
    };
    unsigned hw = std::thread::hardware_concurrency();
    if (opts.parallel && hw > 1 && starts.size() > 4) {
        std::vector<std::future<void>> futs;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < std::min<unsigned>(hw, static_cast<unsigned>(starts.size())); ++t) {
            futs.push_back(std::async(std::launch::async, [&]() {
                for (std::size_t k = next.fetch_add(1); k < starts.size(); k = next.fetch_add(1)) {
                    run(k);
                }
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t k = 0; k < starts.size(); ++k) run(k);
    }

    std::vector<double> history;
    history.reserve(results.size());
    LocalResult best;
    double running = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
        if (r.value < best.value) best = r;
        running = std::min(running, r.value);
        history.push_back(running);
    }
    return {best, history};
}

PvmSolution finalize(const Ensemble& e, double eps, const Matrix& basis_cols,
                     const std::vector<double>& weights, int restarts_used,
                     std::vector<double> history, bool converged) {
    PvmStrategy strategy(basis_from_columns(basis_cols), weights);
    RatePoint rates = evaluate_pvm(e, strategy);
    PvmSolution sol{std::move(strategy), rates, eps, restarts_used, std::move(history),
                    converged && rates.error <= eps + kBudgetSlack};
    return sol;
}

}  // namespace

PvmSolution optimize_pvm(const Ensemble& e, double eps, const PvmOptions& opts) {
    if (eps < 0.0 || eps > 0.5 + 1e-12) {
        throw std::invalid_argument("optimize_pvm: eps must lie in [0, 1/2]");
    }
    int n = e.size();
    if (opts.fixed_weight_pattern) {
        const auto& pattern = *opts.fixed_weight_pattern;
        if (static_cast<int>(pattern.size()) != n) {
            throw std::invalid_argument("optimize_pvm: fixed weight pattern length mismatch");
        }
        for (double w : pattern) {
            if (w < 0.0 || w > 1.0) {
                throw std::invalid_argument("optimize_pvm: fixed weights must lie in [0,1]");
            }
        }
        // Pinned weights leave only the orientation free; the budget is
        // enforced by penalty continuation instead of the weight program.
        std::vector<Start> starts = build_starts(e, opts, 0x70u);
        std::vector<double> gains, costs;
        LocalResult best;
        std::vector<double> history;
        double lambda = 10.0;
        for (int stage = 0; stage < 8; ++stage) {
            auto objective = [&, lambda](const Matrix& u) {
                std::vector<double> g, c;
                contributions(e, u, g, c);
                double value = 0.0, err = 0.0;
                for (int i = 0; i < n; ++i) {
                    value += pattern[static_cast<std::size_t>(i)] *
                             (g[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)]);
                    err += pattern[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
                }
                return 1.0 - value + lambda * std::max(0.0, err - eps);
            };
            auto [stage_best, stage_history] = multistart(objective, starts, n, opts);
            best = stage_best;
            history = stage_history;
            contributions(e, best.basis, gains, costs);
            double err = 0.0;
            for (int i = 0; i < n; ++i) {
                err += pattern[static_cast<std::size_t>(i)] * costs[static_cast<std::size_t>(i)];
            }
            if (err <= eps + 1e-9) break;
            lambda *= 10.0;
            for (auto& s : starts) {
                s.base = best.basis;  // warm continuation
                s.step = 0.02;
            }
            starts.resize(std::max<std::size_t>(2, starts.size() / 4));
        }
        int used = static_cast<int>(history.size());
        return finalize(e, eps, best.basis, pattern, used, std::move(history), best.converged);
    }

    std::vector<Start> starts = build_starts(e, opts, 0x70u);
    auto objective = [&](const Matrix& u) {
        std::vector<double> gains, costs;
        contributions(e, u, gains, costs);
        WeightAllocation alloc = optimal_weights(gains, costs, eps);
        return 1.0 - alloc.correct - alloc.error;
    };
    auto [best, history] = multistart(objective, starts, n, opts);

    std::vector<double> gains, costs;
    contributions(e, best.basis, gains, costs);
    WeightAllocation alloc = optimal_weights(gains, costs, eps);
    int used = static_cast<int>(history.size());
    return finalize(e, eps, best.basis, alloc.weights, used, std::move(history), best.converged);
}

TradeoffCurve pvm_tradeoff_curve(const Ensemble& e, const std::vector<double>& eps_grid,
                                 const PvmOptions& opts) {
    if (eps_grid.empty()) {
        throw std::invalid_argument("pvm_tradeoff_curve: empty budget grid");
    }
    for (std::size_t k = 0; k + 1 < eps_grid.size(); ++k) {
        if (!(eps_grid[k] < eps_grid[k + 1])) {
            throw std::invalid_argument("pvm_tradeoff_curve: grid must be strictly ascending");
        }
    }
    std::size_t g = eps_grid.size();
    std::vector<PvmSolution> best;
    best.reserve(g);

    // Upward sweep, warm-started from the previous budget.
    for (std::size_t k = 0; k < g; ++k) {
        PvmOptions o = opts;
        o.seed = derive_seed(opts.seed, 2 * k);
        if (k > 0) o.warm_starts.push_back(best.back().strategy);
        best.push_back(optimize_pvm(e, eps_grid[k], o));
    }
    // Downward sweep.
    for (std::size_t k = g; k-- > 0;) {
        PvmOptions o = opts;
        o.seed = derive_seed(opts.seed, 2 * k + 1);
        if (k + 1 < g) o.warm_starts.push_back(best[k + 1].strategy);
        PvmSolution sol = optimize_pvm(e, eps_grid[k], o);
        if (sol.rates.inconclusive < best[k].rates.inconclusive) {
            best[k] = std::move(sol);
        }
    }
    // A strategy feasible at a smaller budget stays feasible later; carrying
    // it forward enforces monotonicity.
    for (std::size_t k = 1; k < g; ++k) {
        if (best[k - 1].rates.inconclusive < best[k].rates.inconclusive) {
            best[k] = best[k - 1];
            best[k].epsilon = eps_grid[k];
        }
    }

    TradeoffCurve curve;
    curve.points.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
        curve.points.push_back(TradeoffPoint{eps_grid[k], best[k].rates, best[k].strategy,
                                             best[k].certified});
    }
    validate(curve);
    return curve;
}

CmFamily cm_min_error(const Ensemble& e, int m, const PvmOptions& opts) {
    int n = e.size();
    if (m < 1 || m > n) {
        throw std::invalid_argument("cm_min_error: m must lie in [1, n]");
    }
    if (n > 8) {
        throw std::invalid_argument("cm_min_error: subset enumeration supported for n <= 8 only");
    }

    std::vector<int> subset(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) subset[static_cast<std::size_t>(i)] = i;

    CmFamily family;
    family.m = m;
    family.min_error = std::numeric_limits<double>::infinity();

    bool more = true;
    std::uint64_t subset_tag = 0;
    while (more) {
        PvmOptions o = opts;
        o.seed = derive_seed(opts.seed, 0xC000u + subset_tag);
        std::vector<Start> starts = build_starts(e, o, 0xC1u + subset_tag);
        auto objective = [&](const Matrix& u) {
            std::vector<double> gains, costs;
            contributions(e, u, gains, costs);
            double err = 0.0;
            for (int i : subset) err += costs[static_cast<std::size_t>(i)];
            return err;
        };
        auto [best, history] = multistart(objective, starts, n, o);
        if (best.value < family.min_error - 1e-15) {
            family.min_error = std::max(0.0, best.value);
            family.subset = subset;
        }

        // next lexicographic subset
        int i = m - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - m + i) --i;
        if (i < 0) {
            more = false;
        } else {
            ++subset[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j) {
                subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
        ++subset_tag;
    }
    return family;
}

}  // namespace discrim
