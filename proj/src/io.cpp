#include "discrim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace discrim {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("expected complex number as [re, im] pair");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Vector vector_from_json(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim) +
                                    " complex entries");
    }
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, int dim, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim) +
                                    " rows");
    }
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw std::invalid_argument(std::string(what) + ": row " + std::to_string(r) +
                                        " must have " + std::to_string(dim) + " entries");
        }
        for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + err.what());
    }
    return j;
}

Ensemble ensemble_from_json(const json& j, std::string* label) {
    if (!j.contains("dimension")) {
        throw std::invalid_argument("ensemble: missing field 'dimension'");
    }
    int dim = j.at("dimension").get<int>();
    if (dim < 1) {
        throw std::invalid_argument("ensemble: field 'dimension' must be positive");
    }
    if (!j.contains("states") || !j.at("states").is_array()) {
        throw std::invalid_argument("ensemble: missing field 'states'");
    }
    bool normalize = j.value("normalize", false);
    std::vector<QuantumState> states;
    for (std::size_t k = 0; k < j.at("states").size(); ++k) {
        Vector v = vector_from_json(j.at("states")[k], dim,
                                    ("ensemble: state " + std::to_string(k)).c_str());
        if (normalize) {
            double norm = v.norm();
            if (norm <= 0.0) {
                throw std::invalid_argument("ensemble: state " + std::to_string(k) +
                                            " is the zero vector");
            }
            v /= norm;
        }
        states.emplace_back(std::move(v));
    }
    std::vector<double> priors;
    if (j.contains("priors")) {
        priors = j.at("priors").get<std::vector<double>>();
    } else {
        priors.assign(states.size(), 1.0 / static_cast<double>(states.size()));
    }
    if (label) *label = j.value("label", "");
    return Ensemble(std::move(states), std::move(priors));
}

json ensemble_to_json(const Ensemble& e, const std::string& label) {
    json j;
    if (!label.empty()) j["label"] = label;
    j["dimension"] = e.dimension();
    json states = json::array();
    for (const auto& s : e.states()) states.push_back(vector_to_json(s.amplitudes()));
    j["states"] = std::move(states);
    j["priors"] = e.priors();
    return j;
}

}  // namespace

EnsembleFile load_ensemble(const std::filesystem::path& path) {
    json j = load_json(path);
    std::string label;
    Ensemble e = ensemble_from_json(j, &label);
    return EnsembleFile{std::move(e), std::move(label)};
}

void save_strategies(const std::filesystem::path& path, const EnsembleFile& ef,
                     const TradeoffCurve& curve) {
    json j;
    j["ensemble"] = ensemble_to_json(ef.ensemble, ef.label);
    bool pvm = !curve.points.empty() &&
               std::holds_alternative<PvmStrategy>(curve.points.front().strategy);
    j["measurement"] = pvm ? "pvm" : "povm";
    json points = json::array();
    for (const auto& p : curve.points) {
        json point;
        point["epsilon"] = p.epsilon;
        point["certified"] = p.certified;
        point["rates"] = {{"p_c", p.rates.correct},
                          {"p_e", p.rates.error},
                          {"p_in", p.rates.inconclusive}};
        if (const auto* s = std::get_if<PvmStrategy>(&p.strategy)) {
            json basis = json::array();
            for (const auto& v : s->basis()) basis.push_back(vector_to_json(v.amplitudes()));
            point["basis"] = std::move(basis);
            point["weights"] = s->weights();
        } else {
            const auto& s2 = std::get<PovmStrategy>(p.strategy);
            json elements = json::array();
            for (const auto& m : s2.elements()) elements.push_back(matrix_to_json(m));
            point["elements"] = std::move(elements);
            point["inconclusive_element"] = matrix_to_json(s2.inconclusive_element());
        }
        points.push_back(std::move(point));
    }
    j["points"] = std::move(points);

    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path.string());
    }
    out << j.dump(1) << '\n';
}

StrategySnapshotFile load_strategies(const std::filesystem::path& path) {
    json j = load_json(path);
    if (!j.contains("ensemble")) {
        throw std::invalid_argument("strategy file: missing field 'ensemble'");
    }
    std::string label;
    Ensemble e = ensemble_from_json(j.at("ensemble"), &label);
    std::string measurement = j.value("measurement", "pvm");
    if (measurement != "pvm" && measurement != "povm") {
        throw std::invalid_argument("strategy file: field 'measurement' must be pvm or povm");
    }
    if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
        throw std::invalid_argument("strategy file: missing or empty field 'points'");
    }
    int n = e.size();
    std::vector<TradeoffPoint> points;
    for (const json& pj : j.at("points")) {
        Strategy strategy = [&]() -> Strategy {
            if (measurement == "pvm") {
                if (!pj.contains("basis") || !pj.contains("weights")) {
                    throw std::invalid_argument(
                        "strategy file: pvm point needs 'basis' and 'weights'");
                }
                std::vector<QuantumState> basis;
                for (int i = 0; i < n; ++i) {
                    basis.emplace_back(
                        vector_from_json(pj.at("basis")[static_cast<std::size_t>(i)], n,
                                         "strategy file: basis vector"));
                }
                return PvmStrategy(std::move(basis),
                                   pj.at("weights").get<std::vector<double>>());
            }
            if (!pj.contains("elements") || !pj.contains("inconclusive_element")) {
                throw std::invalid_argument(
                    "strategy file: povm point needs 'elements' and 'inconclusive_element'");
            }
            std::vector<Matrix> elements;
            for (int i = 0; i < n; ++i) {
                elements.push_back(matrix_from_json(pj.at("elements")[static_cast<std::size_t>(i)],
                                                    n, "strategy file: element"));
            }
            Matrix inc =
                matrix_from_json(pj.at("inconclusive_element"), n, "strategy file: inconclusive");
            return PovmStrategy(std::move(elements), std::move(inc));
        }();
        TradeoffPoint p{pj.value("epsilon", 0.0), RatePoint{}, std::move(strategy),
                        pj.value("certified", true)};
        if (pj.contains("rates")) {
            const auto& rates = pj.at("rates");
            p.rates.correct = rates.value("p_c", 0.0);
            p.rates.error = rates.value("p_e", 0.0);
            p.rates.inconclusive = rates.value("p_in", 1.0);
        }
        points.push_back(std::move(p));
    }
    return StrategySnapshotFile{std::move(e), std::move(label), std::move(measurement),
                                std::move(points)};
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_curve_csv(std::ostream& out, const TradeoffCurve& curve) {
    out << "epsilon,p_in,p_c,p_e,certified\n";
    for (const auto& p : curve.points) {
        out << format_double(p.epsilon) << ',' << format_double(p.rates.inconclusive) << ','
            << format_double(p.rates.correct) << ',' << format_double(p.rates.error) << ','
            << (p.certified ? 1 : 0) << '\n';
    }
}

void write_curve_csv(const std::filesystem::path& path, const TradeoffCurve& curve) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path.string());
    }
    write_curve_csv(out, curve);
}

std::vector<std::pair<double, double>> read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("curve CSV is empty: " + path.string());
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    int eps_col = -1, pin_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "epsilon") eps_col = static_cast<int>(c);
        if (header[c] == "p_in") pin_col = static_cast<int>(c);
    }
    if (eps_col < 0 || pin_col < 0) {
        throw std::invalid_argument("curve CSV is missing 'epsilon' or 'p_in' column");
    }
    std::vector<std::pair<double, double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> cells;
        while (std::getline(ss, tok, ',')) cells.push_back(tok);
        if (static_cast<int>(cells.size()) <= std::max(eps_col, pin_col)) {
            throw std::invalid_argument("curve CSV line " + std::to_string(line_no) +
                                        ": too few columns");
        }
        try {
            rows.emplace_back(std::stod(cells[static_cast<std::size_t>(eps_col)]),
                              std::stod(cells[static_cast<std::size_t>(pin_col)]));
        } catch (const std::exception&) {
            throw std::invalid_argument("curve CSV line " + std::to_string(line_no) +
                                        ": malformed number");
        }
    }
    if (rows.empty()) {
        throw std::invalid_argument("curve CSV has no data rows: " + path.string());
    }
    return rows;
}

std::vector<double> parse_eps_grid(const std::string& spec, std::optional<double> p_me) {
    auto resolve = [&](const std::string& tok) {
        if (tok == "P_ME" || tok == "p_me") {
            if (!p_me) {
                throw std::invalid_argument("eps grid: P_ME bound requested but unavailable");
            }
            return *p_me;
        }
        return std::stod(tok);
    };
    std::vector<double> grid;
    if (spec.rfind("lin:", 0) == 0 || spec.rfind("log:", 0) == 0) {
        bool logspace = spec[1] == 'o';
        std::stringstream ss(spec.substr(4));
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':')) {
            throw std::invalid_argument("eps grid: expected <kind>:<start>:<stop>:<count>");
        }
        double start = resolve(a), stop = resolve(b);
        int count = std::stoi(c);
        if (count < 1 || (logspace && (start <= 0.0 || stop <= 0.0)) || stop < start) {
            throw std::invalid_argument("eps grid: invalid bounds");
        }
        for (int k = 0; k < count; ++k) {
            double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
            grid.push_back(logspace ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                    : start + t * (stop - start));
        }
        grid.back() = stop;
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) grid.push_back(resolve(tok));
        }
    }
    if (grid.empty()) {
        throw std::invalid_argument("eps grid: no points");
    }
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        if (!(grid[k] < grid[k + 1])) {
            throw std::invalid_argument("eps grid: points must be strictly ascending");
        }
    }
    return grid;
}

}  // namespace discrim
