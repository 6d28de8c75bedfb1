#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discrim/types.hpp"

namespace discrim {

struct EnsembleFile {
    Ensemble ensemble;
    std::string label;
};

// Ensemble JSON:
// {
//   "label": "...",                 (optional)
//   "dimension": 2,
//   "states": [[[re,im],[re,im]], ...],
//   "priors": [0.5, 0.5],           (optional; equal priors when absent)
//   "normalize": false              (optional; renormalize any input norm)
// }
EnsembleFile load_ensemble(const std::filesystem::path& path);

// Strategy dump: the ensemble plus one snapshot per curve point.
struct StrategySnapshotFile {
    Ensemble ensemble;
    std::string label;
    std::string measurement;  // "pvm" or "povm"
    std::vector<TradeoffPoint> points;
};

void save_strategies(const std::filesystem::path& path, const EnsembleFile& ef,
                     const TradeoffCurve& curve);
StrategySnapshotFile load_strategies(const std::filesystem::path& path);

// CSV schema: header `epsilon,p_in,p_c,p_e,certified`, 9 significant digits.
void write_curve_csv(std::ostream& out, const TradeoffCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const TradeoffCurve& curve);

// Reads back (epsilon, p_in) pairs from the CSV schema above.
std::vector<std::pair<double, double>> read_curve_csv(const std::filesystem::path& path);

// Budget-grid specification: `lin:<start>:<stop>:<count>`,
// `log:<start>:<stop>:<count>`, or a comma-separated list. The token `P_ME`
// may appear as a bound and resolves to the supplied minimum-error rate.
std::vector<double> parse_eps_grid(const std::string& spec, std::optional<double> p_me);

std::string format_double(double value);  // 9 significant digits

}  // namespace discrim
