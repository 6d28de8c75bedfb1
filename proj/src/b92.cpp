#include "discrim/b92.hpp"

#include <cmath>
#include <stdexcept>

namespace discrim {

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("binary_entropy: argument must lie in [0,1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double b92_key_rate(const KeyRateInput& k) {
    if (k.n_sifted < 0.0) {
        throw std::invalid_argument("b92_key_rate: sifted count must be non-negative");
    }
    if (k.f_inconclusive < 0.0 || k.f_inconclusive > 1.0) {
        throw std::invalid_argument("b92_key_rate: inconclusive fraction must lie in [0,1]");
    }
    if (k.e_bit < 0.0 || k.e_bit > 0.5 || k.e_phase < 0.0 || k.e_phase > 0.5) {
        throw std::invalid_argument("b92_key_rate: error fractions must lie in [0,1/2]");
    }
    double r = k.n_sifted * (1.0 - k.f_inconclusive) *
               (1.0 - binary_entropy(k.e_bit) - binary_entropy(k.e_phase));
    return std::max(0.0, r);
}

B92Sweep b92_rate_vs_error(double n_sifted, double e_bit, double e_phase,
                           const std::vector<std::pair<double, double>>& eps_inconclusive) {
    if (eps_inconclusive.empty()) {
        throw std::invalid_argument("b92_rate_vs_error: empty curve");
    }
    B92Sweep sweep;
    sweep.points.reserve(eps_inconclusive.size());
    for (const auto& [eps, p_in] : eps_inconclusive) {
        KeyRateInput k{n_sifted, p_in, e_bit, e_phase};
        sweep.points.push_back({eps, p_in, b92_key_rate(k)});
    }
    for (std::size_t i = 1; i < sweep.points.size(); ++i) {
        if (sweep.points[i].rate > sweep.points[static_cast<std::size_t>(sweep.best_index)].rate) {
            sweep.best_index = static_cast<int>(i);
        }
    }
    return sweep;
}

B92Sweep b92_rate_vs_error(double n_sifted, double e_bit, double e_phase,
                           const TradeoffCurve& curve) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        pairs.emplace_back(p.epsilon, p.rates.inconclusive);
    }
    return b92_rate_vs_error(n_sifted, e_bit, e_phase, pairs);
}

}  // namespace discrim
