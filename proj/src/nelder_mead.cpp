#include "discrim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discrim {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
    const std::size_t d = x0.size();
    if (d == 0) {
        throw std::invalid_argument("nelder_mead: empty start point");
    }
    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : 400 * static_cast<int>(d);

    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        xs[i + 1][i] += opts.initial_step;
    }
    for (std::size_t i = 0; i <= d; ++i) {
        fs[i] = f(xs[i]);
    }

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), cand(d);
    NelderMeadResult result;

    auto diameter = [&]() {
        double m = 0.0;
        for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                m = std::max(m, std::abs(xs[order[i]][k] - xs[order[0]][k]));
            }
        }
        return m;
    };

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });

        if (fs[order[d]] - fs[order[0]] < opts.f_tol * (1.0 + std::abs(fs[order[0]])) &&
            diameter() < opts.x_tol) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[order[i]][k];
        }
        for (std::size_t k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

        std::size_t worst = order[d];
        auto blend = [&](double t) {
            for (std::size_t k = 0; k < d; ++k) {
                cand[k] = centroid[k] + t * (centroid[k] - xs[worst][k]);
            }
        };

        blend(1.0);  // reflection
        double fr = f(cand);
        if (fr < fs[order[0]]) {
            std::vector<double> reflected = cand;
            blend(2.0);  // expansion
            double fe = f(cand);
            if (fe < fr) {
                xs[worst] = cand;
                fs[worst] = fe;
            } else {
                xs[worst] = reflected;
                fs[worst] = fr;
            }
        } else if (fr < fs[order[d - 1]]) {
            xs[worst] = cand;
            fs[worst] = fr;
        } else {
            if (fr < fs[worst]) {
                blend(0.5);  // outside contraction
            } else {
                blend(-0.5);  // inside contraction
            }
            double fc = f(cand);
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = cand;
                fs[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i <= d; ++i) {
                    std::size_t idx = order[i];
                    for (std::size_t k = 0; k < d; ++k) {
                        xs[idx][k] = xs[order[0]][k] + 0.5 * (xs[idx][k] - xs[order[0]][k]);
                    }
                    fs[idx] = f(xs[idx]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (fs[i] < fs[best]) best = i;
    }
    result.x = xs[best];
    result.value = fs[best];
    result.iterations = iter;
    return result;
}

}  // namespace discrim
