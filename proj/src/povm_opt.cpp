#include "discrim/povm_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "discrim/analytic.hpp"
#include "discrim/evaluate.hpp"
#include "discrim/pvm_opt.hpp"
#include "discrim/rng.hpp"
#include "discrim/weights.hpp"

namespace discrim {

namespace {

constexpr double kFeasibleSlack = 1e-6;  // budget slack accepted in results
constexpr double kTightSlack = 1e-8;     // budget slack targeted by continuation

struct Problem {
    int n = 0;
    Matrix identity;
    Matrix weighted_sum;            // R = sum eta_j |psi_j><psi_j|
    std::vector<Matrix> error_ops;  // E_i = R - eta_i |psi_i><psi_i|
};

Problem make_problem(const Ensemble& e) {
    Problem p;
    p.n = e.size();
    p.identity = Matrix::Identity(p.n, p.n);
    p.weighted_sum = Matrix::Zero(p.n, p.n);
    std::vector<Matrix> rhos;
    for (int j = 0; j < p.n; ++j) {
        const Vector& psi = e.state(j).amplitudes();
        rhos.push_back((psi * psi.adjoint()).eval());
        p.weighted_sum += e.prior(j) * rhos.back();
    }
    for (int i = 0; i < p.n; ++i) {
        p.error_ops.push_back(p.weighted_sum - e.prior(i) * rhos[static_cast<std::size_t>(i)]);
    }
    return p;
}

// Clip the factors' products to an exactly valid POVM.
PovmStrategy project_to_valid(const Problem& p, const std::vector<Matrix>& factors) {
    std::vector<Matrix> elements;
    elements.reserve(factors.size());
    Matrix sum = Matrix::Zero(p.n, p.n);
    for (const Matrix& a : factors) {
        Matrix pi = a.adjoint() * a;
        Eigen::SelfAdjointEigenSolver<Matrix> es(pi);
        Vector clipped = es.eigenvalues().cwiseMax(0.0).cast<Complex>();
        pi = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
        pi = 0.5 * (pi + pi.adjoint()).eval();
        elements.push_back(pi);
        sum += pi;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sum, Eigen::EigenvaluesOnly);
    double lmax = es.eigenvalues().maxCoeff();
    if (lmax > 1.0) {
        for (Matrix& pi : elements) pi /= lmax;
        sum /= lmax;
    }
    Matrix inconclusive = p.identity - sum;
    inconclusive = 0.5 * (inconclusive + inconclusive.adjoint()).eval();
    return PovmStrategy(std::move(elements), std::move(inconclusive));
}

Matrix hermitian_sqrt(const Matrix& psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
    Vector roots(psd.rows());
    for (Eigen::Index k = 0; k < psd.rows(); ++k) {
        roots(k) = std::sqrt(std::max(0.0, es.eigenvalues()(k)));
    }
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<Matrix> factors_from_strategy(const PovmStrategy& s) {
    std::vector<Matrix> factors;
    factors.reserve(s.elements().size());
    for (const Matrix& pi : s.elements()) {
        factors.push_back(hermitian_sqrt(pi));
    }
    return factors;
}

// F = P_In + mu [max(0, P_E - eps)]^2 + mu sum_k min(lambda_k(Pi_0), 0)^2,
// with gradient 2 A_i M_i, M_i = -R + 2 mu viol E_i - 2 mu N.
double penalty_objective(const Problem& p, const std::vector<Matrix>& factors, double eps,
                         double mu, std::vector<Matrix>* grads) {
    std::vector<Matrix> elements;
    elements.reserve(factors.size());
    Matrix sum = Matrix::Zero(p.n, p.n);
    for (const Matrix& a : factors) {
        elements.push_back(a.adjoint() * a);
        sum += elements.back();
    }
    Matrix p0 = p.identity - sum;
    double p_in = std::real((p.weighted_sum * p0).trace());
    double p_e = 0.0;
    for (int i = 0; i < p.n; ++i) {
        p_e += std::real((p.error_ops[static_cast<std::size_t>(i)] *
                          elements[static_cast<std::size_t>(i)])
                             .trace());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(p0);
    double neg_sq = 0.0;
    Matrix neg_part = Matrix::Zero(p.n, p.n);
    for (Eigen::Index k = 0; k < p0.rows(); ++k) {
        double lam = es.eigenvalues()(k);
        if (lam < 0.0) {
            neg_sq += lam * lam;
            neg_part += lam * (es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint());
        }
    }
    double viol = std::max(0.0, p_e - eps);
    double f = p_in + mu * viol * viol + mu * neg_sq;
    if (grads) {
        grads->clear();
        for (int i = 0; i < p.n; ++i) {
            Matrix m = -p.weighted_sum + (2.0 * mu * viol) * p.error_ops[static_cast<std::size_t>(i)] -
                       (2.0 * mu) * neg_part;
            grads->push_back(2.0 * factors[static_cast<std::size_t>(i)] * m);
        }
    }
    return f;
}

void adam_stage(const Problem& p, std::vector<Matrix>& factors, double eps, double mu, int iters,
                double lr0, double inner_tol) {
    std::vector<Matrix> m(factors.size(), Matrix::Zero(p.n, p.n));
    std::vector<Eigen::MatrixXd> v(factors.size(), Eigen::MatrixXd::Zero(p.n, p.n));
    const double b1 = 0.9, b2 = 0.999;
    std::vector<Matrix> grads;
    double prev = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= iters; ++t) {
        double f = penalty_objective(p, factors, eps, mu, &grads);
        double lr = lr0 * (0.05 + 0.95 * 0.5 * (1.0 + std::cos(std::numbers::pi * t / iters)));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * grads[i];
            v[i] = b2 * v[i] + (1.0 - b2) * grads[i].cwiseAbs2();
            double c1 = 1.0 - std::pow(b1, t), c2 = 1.0 - std::pow(b2, t);
            factors[i] -= (lr / c1) * (m[i].array() / ((v[i] / c2).cwiseSqrt().array() + 1e-12))
                              .matrix();
        }
        if (t > iters / 4 && std::abs(prev - f) < inner_tol) break;
        prev = f;
    }
}

struct Candidate {
    std::vector<Matrix> factors;
    bool polish = true;
};

struct Evaluated {
    double p_in = std::numeric_limits<double>::infinity();
    double p_e = 0.0;
    bool feasible = false;
    PovmStrategy strategy;
    Evaluated() : strategy({Matrix::Zero(1, 1)}, Matrix::Identity(1, 1)) {}
};

Evaluated evaluate_candidate(const Ensemble& e, const Problem& p,
                             const std::vector<Matrix>& factors, double eps) {
    Evaluated out;
    out.strategy = project_to_valid(p, factors);
    RatePoint r = evaluate_povm(e, out.strategy);
    out.p_in = r.inconclusive;
    out.p_e = r.error;
    out.feasible = r.error <= eps + kFeasibleSlack;
    return out;
}

// Zero-error family: Pi_i = a_i v_i v_i^† with v_i orthogonal to the other
// states; solves max sum eta_i a_i |<v_i|psi_i>|^2 s.t. sum a_i v_i v_i^† <= I
// by the same penalty scheme over the n scalars.
std::vector<Matrix> unambiguous_family_factors(const Ensemble& e) {
    int n = e.size();
    std::vector<Vector> vs;
    std::vector<double> quality;
    for (int i = 0; i < n; ++i) {
        vs.push_back(ud_direction(e, i).amplitudes());
        quality.push_back(e.prior(i) * std::norm(vs.back().dot(e.state(i).amplitudes())));
    }
    std::vector<Matrix> projectors;
    Matrix total = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        projectors.push_back((vs[static_cast<std::size_t>(i)] *
                              vs[static_cast<std::size_t>(i)].adjoint())
                                 .eval());
        total += projectors.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es0(total, Eigen::EigenvaluesOnly);
    std::vector<double> alpha(static_cast<std::size_t>(n),
                              std::sqrt(1.0 / es0.eigenvalues().maxCoeff()));

    double mu = 10.0, lr = 0.02;
    for (int stage = 0; stage < 12; ++stage) {
        std::vector<double> m(alpha.size(), 0.0), v(alpha.size(), 0.0);
        for (int t = 1; t <= 2500; ++t) {
            Matrix sum = Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                sum += alpha[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i)] *
                       projectors[static_cast<std::size_t>(i)];
            }
            Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(n, n) - sum);
            Matrix neg_part = Matrix::Zero(n, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                double lam = es.eigenvalues()(k);
                if (lam < 0.0) {
                    neg_part += lam * (es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint());
                }
            }
            double step = lr * (0.05 + 0.95 * 0.5 * (1.0 + std::cos(std::numbers::pi * t / 2500)));
            for (int i = 0; i < n; ++i) {
                double gpen = -4.0 * mu * alpha[static_cast<std::size_t>(i)] *
                              std::real(vs[static_cast<std::size_t>(i)]
                                            .dot(neg_part * vs[static_cast<std::size_t>(i)]));
                double g = -2.0 * quality[static_cast<std::size_t>(i)] *
                               alpha[static_cast<std::size_t>(i)] +
                           gpen;
                auto& mm = m[static_cast<std::size_t>(i)];
                auto& vv = v[static_cast<std::size_t>(i)];
                mm = 0.9 * mm + 0.1 * g;
                vv = 0.999 * vv + 0.001 * g * g;
                double c1 = 1.0 - std::pow(0.9, t), c2 = 1.0 - std::pow(0.999, t);
                alpha[static_cast<std::size_t>(i)] -=
                    step * (mm / c1) / (std::sqrt(vv / c2) + 1e-12);
            }
        }
        mu *= 10.0;
        lr *= 0.5;
    }
    std::vector<Matrix> factors;
    for (int i = 0; i < n; ++i) {
        factors.push_back(std::abs(alpha[static_cast<std::size_t>(i)]) *
                          projectors[static_cast<std::size_t>(i)]);
    }
    return factors;
}

}  // namespace

PovmSolution optimize_povm(const Ensemble& e, double eps, const PovmOptions& opts) {
    if (eps < 0.0 || eps > 0.5 + 1e-12) {
        throw std::invalid_argument("optimize_povm: eps must lie in [0, 1/2]");
    }
    Problem p = make_problem(e);
    int n = p.n;

    std::vector<Candidate> candidates;
    try {
        candidates.push_back({unambiguous_family_factors(e), true});
    } catch (const std::exception&) {
        // linearly dependent states: no zero-error family
    }
    try {
        std::vector<QuantumState> srm = srm_basis(e);
        candidates.push_back(
            {factors_from_strategy(povm_from_pvm(PvmStrategy(srm, std::vector<double>(n, 1.0)))),
             true});
        auto [weights, rates] = optimal_weights_for_basis(e, srm, eps);
        candidates.push_back(
            {factors_from_strategy(povm_from_pvm(PvmStrategy(srm, weights))), true});
    } catch (const std::invalid_argument&) {
    }
    if (opts.projective_warm_start) {
        PvmOptions po;
        po.restarts = opts.projective_restarts;
        po.seed = derive_seed(opts.seed, 0xAAu);
        po.parallel = opts.parallel;
        PvmSolution projective = optimize_pvm(e, eps, po);
        candidates.push_back({factors_from_strategy(povm_from_pvm(projective.strategy)), true});
    }
    for (const auto& warm : opts.warm_starts) {
        candidates.push_back({factors_from_strategy(warm), true});
    }
    for (int k = 0; k < opts.restarts; ++k) {
        SplitMix64 rng(derive_seed(opts.seed, 0x9000u + static_cast<std::uint64_t>(k)));
        std::vector<Matrix> factors;
        for (int i = 0; i < n; ++i) {
            Matrix a(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    a(r, c) = Complex(rng.gaussian(), rng.gaussian()) * 0.3;
                }
            }
            factors.push_back(a);
        }
        candidates.push_back({std::move(factors), true});
    }

    std::vector<Evaluated> results(candidates.size());
    auto run = [&](std::size_t k) {
        // raw candidate
        Evaluated best = evaluate_candidate(e, p, candidates[k].factors, eps);
        if (candidates[k].polish) {
            std::vector<Matrix> factors = candidates[k].factors;
            double mu = opts.initial_penalty;
            double lr = opts.learning_rate;
            for (int stage = 0; stage < opts.max_stages; ++stage) {
                adam_stage(p, factors, eps, mu, opts.iterations_per_stage, lr, opts.inner_tol);
                Evaluated ev = evaluate_candidate(e, p, factors, eps);
                if (ev.feasible && ev.p_in < best.p_in) best = ev;
                if (stage + 1 >= opts.stages && ev.p_e <= eps + kTightSlack) break;
                mu *= opts.penalty_growth;
                lr *= 0.45;
            }
        }
        results[k] = std::move(best);
    };
    unsigned hw = std::thread::hardware_concurrency();
    if (opts.parallel && hw > 1 && candidates.size() > 2) {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < std::min<unsigned>(hw, static_cast<unsigned>(candidates.size()));
             ++t) {
            futs.push_back(std::async(std::launch::async, [&]() {
                for (std::size_t k = next.fetch_add(1); k < candidates.size();
                     k = next.fetch_add(1)) {
                    run(k);
                }
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t k = 0; k < candidates.size(); ++k) run(k);
    }

    const Evaluated* best = nullptr;
    for (const auto& r : results) {
        if (r.feasible && (!best || r.p_in < best->p_in)) best = &r;
    }
    if (!best) {
        // No candidate met the budget: return the least infeasible iterate.
        for (const auto& r : results) {
            if (!best || r.p_e < best->p_e) best = &r;
        }
    }

    RatePoint rates = evaluate_povm(e, best->strategy);
    Feasibility feas;
    feas.min_eigenvalue = std::numeric_limits<double>::infinity();
    Matrix total = best->strategy.inconclusive_element();
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(best->strategy.inconclusive_element(),
                                                 Eigen::EigenvaluesOnly);
        feas.min_eigenvalue = es.eigenvalues().minCoeff();
    }
    for (const Matrix& pi : best->strategy.elements()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(pi, Eigen::EigenvaluesOnly);
        feas.min_eigenvalue = std::min(feas.min_eigenvalue, es.eigenvalues().minCoeff());
        total += pi;
    }
    feas.completeness_residual = (total - p.identity).cwiseAbs().maxCoeff();

    PovmSolution sol{best->strategy, rates, eps, feas,
                     rates.error <= eps + kFeasibleSlack};
    return sol;
}

TradeoffCurve povm_tradeoff_curve(const Ensemble& e, const std::vector<double>& eps_grid,
                                  const PovmOptions& opts) {
    if (eps_grid.empty()) {
        throw std::invalid_argument("povm_tradeoff_curve: empty budget grid");
    }
    for (std::size_t k = 0; k + 1 < eps_grid.size(); ++k) {
        if (!(eps_grid[k] < eps_grid[k + 1])) {
            throw std::invalid_argument("povm_tradeoff_curve: grid must be strictly ascending");
        }
    }
    std::size_t g = eps_grid.size();
    if (!opts.paired_warm_starts.empty() && opts.paired_warm_starts.size() != g) {
        throw std::invalid_argument(
            "povm_tradeoff_curve: paired warm starts must align with the grid");
    }
    std::vector<PovmSolution> best;
    best.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
        PovmOptions o = opts;
        o.paired_warm_starts.clear();
        o.seed = derive_seed(opts.seed, 2 * k);
        if (!opts.paired_warm_starts.empty()) o.warm_starts.push_back(opts.paired_warm_starts[k]);
        if (k > 0) o.warm_starts.push_back(best.back().strategy);
        best.push_back(optimize_povm(e, eps_grid[k], o));
    }
    for (std::size_t k = g; k-- > 0;) {
        PovmOptions o = opts;
        o.paired_warm_starts.clear();
        o.seed = derive_seed(opts.seed, 2 * k + 1);
        if (!opts.paired_warm_starts.empty()) o.warm_starts.push_back(opts.paired_warm_starts[k]);
        if (k + 1 < g) o.warm_starts.push_back(best[k + 1].strategy);
        PovmSolution sol = optimize_povm(e, eps_grid[k], o);
        if (sol.certified && sol.rates.inconclusive < best[k].rates.inconclusive) {
            best[k] = std::move(sol);
        }
    }
    for (std::size_t k = 1; k < g; ++k) {
        if (best[k - 1].certified && best[k - 1].rates.inconclusive < best[k].rates.inconclusive) {
            best[k] = best[k - 1];
            best[k].epsilon = eps_grid[k];
        }
    }

    // Convexification: a mixture of two POVM strategies is a POVM strategy
    // with the mixed rates, so the curve can be replaced by its lower convex
    // envelope over the computed points.
    for (int pass = 0; pass < 3; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < g; ++i) {
            for (std::size_t k = i + 1; k < g; ++k) {
                double err_i = best[i].rates.error, err_k = best[k].rates.error;
                if (err_k <= err_i + 1e-15) continue;
                for (std::size_t j = i + 1; j < k; ++j) {
                    double target = std::min(eps_grid[j], err_k);
                    if (err_i > target) continue;
                    double lam = (err_k - target) / (err_k - err_i);
                    lam = std::clamp(lam, 0.0, 1.0);
                    double mixed_in = lam * best[i].rates.inconclusive +
                                      (1.0 - lam) * best[k].rates.inconclusive;
                    if (mixed_in < best[j].rates.inconclusive - 1e-12) {
                        std::vector<Matrix> elements;
                        for (int t = 0; t < e.size(); ++t) {
                            elements.push_back(
                                lam * best[i].strategy.elements()[static_cast<std::size_t>(t)] +
                                (1.0 - lam) *
                                    best[k].strategy.elements()[static_cast<std::size_t>(t)]);
                        }
                        Matrix inc = lam * best[i].strategy.inconclusive_element() +
                                     (1.0 - lam) * best[k].strategy.inconclusive_element();
                        PovmStrategy mixed(std::move(elements), std::move(inc));
                        RatePoint r = evaluate_povm(e, mixed);
                        if (r.error <= eps_grid[j] + kFeasibleSlack &&
                            r.inconclusive < best[j].rates.inconclusive) {
                            best[j].strategy = std::move(mixed);
                            best[j].rates = r;
                            best[j].certified = best[i].certified && best[k].certified;
                            changed = true;
                        }
                    }
                }
            }
        }
        if (!changed) break;
    }

    TradeoffCurve curve;
    curve.points.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
        curve.points.push_back(
            TradeoffPoint{eps_grid[k], best[k].rates, best[k].strategy, best[k].certified});
    }
    validate(curve);
    return curve;
}

ZlgCheck zlg_inequality_check(const Ensemble& e, const PovmStrategy& s) {
    if (e.size() != 2) {
        throw std::invalid_argument("zlg_inequality_check: exactly two states required");
    }
    if (s.size() != 2 || s.dimension() != e.dimension()) {
        throw std::invalid_argument("zlg_inequality_check: strategy shape mismatch");
    }
    const Vector& psi1 = e.state(0).amplitudes();
    const Vector& psi2 = e.state(1).amplitudes();
    auto expect = [](const Vector& v, const Matrix& m) { return std::real(v.dot(m * v)); };
    double in1 = expect(psi1, s.inconclusive_element());
    double in2 = expect(psi2, s.inconclusive_element());
    double c1 = expect(psi1, s.elements()[0]);
    double c2 = expect(psi2, s.elements()[1]);
    double e1 = expect(psi1, s.elements()[1]);
    double e2 = expect(psi2, s.elements()[0]);
    Complex ip = psi1.dot(psi2);
    Complex inner = ip - std::sqrt(std::max(0.0, c1 * e2)) - std::sqrt(std::max(0.0, c2 * e1));
    ZlgCheck out;
    out.lhs = in1 * in2;
    out.rhs = std::norm(inner);
    out.holds = out.lhs >= out.rhs - 1e-9;
    return out;
}

}  // namespace discrim
