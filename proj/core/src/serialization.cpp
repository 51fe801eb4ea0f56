#include "normlab/serialization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "normlab/errors.hpp"

namespace normlab {

using nlohmann::json;

void to_json(json& j, const SpaceSpec& space) {
    if (space.is_sup()) {
        j = json{{"kind", "lp"}, {"p", "inf"}};
        return;
    }
    const ModularFamily& fam = space.family();
    switch (fam.kind()) {
        case FamilyKind::pure_power:
            j = json{{"kind", "lp"}, {"p", fam.p()}};
            break;
        case FamilyKind::orlicz_pr:
            j = json{{"kind", "orlicz"}, {"p", fam.p()}, {"r", fam.r()}};
            break;
        case FamilyKind::modular_ppi:
            j = json{{"kind", "modular"}, {"p", fam.p()}, {"i0", fam.offset()}};
            break;
    }
}

void to_json(json& j, const FiniteVector& v) {
    j = v.to_dense();
}

void to_json(json& j, const ClarksonReport& rep) {
    j = json{{"p", rep.p},
             {"r", rep.r},
             {"slack_lower_1", rep.slack_lower_1},
             {"slack_upper_1", rep.slack_upper_1},
             {"slack_lower_2", rep.slack_lower_2},
             {"slack_upper_2", rep.slack_upper_2}};
}

void to_json(json& j, const ObstructionCertificate& cert) {
    j = json{{"branch", cert.branch == Branch::p_lt_2 ? "p_lt_2" : "p_gt_2"},
             {"residuals", cert.residuals},
             {"A", cert.A},
             {"defect", cert.defect},
             {"chain_slack", cert.chain_slack},
             {"identity_gap", cert.identity_gap},
             {"verdict", cert.verdict}};
    if (cert.branch == Branch::p_lt_2) {
        j["B"] = cert.B;
    } else {
        json terms = json::array();
        for (const auto& t : cert.term_series)
            terms.push_back(json{{"index", t.index}, {"value", t.value}, {"coefficient", t.coefficient}});
        j["terms"] = std::move(terms);
    }
}

void to_json(json& j, const MidpointWitness& w) {
    j = json{{"p", std::isinf(w.p) ? json("inf") : json(w.p)},
             {"a", w.a},
             {"b", w.b},
             {"c", w.c},
             {"d", w.d},
             {"gaps", w.gaps},
             {"separation", w.separation}};
}

void to_json(json& j, const CriterionReport& rep) {
    j = json{{"p", rep.p},
             {"i0", rep.offset},
             {"K", rep.K},
             {"index_budget", rep.index_budget},
             {"criterion",
              json{{"a_min_slack", rep.a_min_slack},
                   {"a_grid_min_slack", rep.a_grid_min_slack},
                   {"b_partial_sum", rep.b_partial_sum},
                   {"b_tail_bound", rep.b_tail_bound},
                   {"verdict", rep.pass ? "pass" : "fail"}}}};
}

void to_json(json& j, const DistanceMatrix& D) {
    json rows = json::array();
    for (std::size_t i = 0; i < D.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < D.size(); ++k) row.push_back(D(i, k));
        rows.push_back(std::move(row));
    }
    j = json{{"n", D.size()}, {"d", std::move(rows)}};
}

void to_json(json& j, const PointConfig& config) {
    std::size_t dim = 0;
    for (const auto& pt : config.points) dim = std::max<std::size_t>(dim, pt.max_index());
    json pts = json::array();
    for (const auto& pt : config.points) pts.push_back(pt.to_dense(dim));
    j = json{{"space", config.space}, {"points", std::move(pts)}, {"gauge", config.gauge}};
}

void to_json(json& j, const EmbedResult& result) {
    j = json{{"config", result.config},
             {"distortion", result.distortion},
             {"per_pair_ratios", result.per_pair_ratios},
             {"starts_used", result.starts_used},
             {"seed", result.seed},
             {"converged", result.converged},
             {"elapsed_seconds", result.elapsed_seconds}};
}

void to_json(json& j, const ResidualResult& result) {
    j = json{{"x", result.x},
             {"y", result.y},
             {"residuals", result.residuals},
             {"max_residual", result.max_residual},
             {"starts_used", result.starts_used},
             {"seed", result.seed},
             {"converged", result.converged},
             {"elapsed_seconds", result.elapsed_seconds}};
}

namespace {

double read_exponent(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw input_error(std::string("unrecognized exponent string for '") + key + "'");
    }
    if (!v.is_number()) throw input_error(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

SpaceSpec space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw input_error("space spec must be an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") return SpaceSpec::lp(read_exponent(j, "p"));
    if (kind == "orlicz") return SpaceSpec::orlicz(read_exponent(j, "p"), read_exponent(j, "r"));
    if (kind == "modular") {
        const double p = read_exponent(j, "p");
        if (j.contains("i0")) return SpaceSpec::modular(p, j.at("i0").get<int>());
        return make_modular_space(p);
    }
    throw input_error("unknown space kind '" + kind + "'");
}

SpaceSpec parse_space(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw input_error("space spec is not valid JSON");
        return space_from_json(j);
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw input_error("space shorthand must look like lp:p, orlicz:p,r or modular:p");
    const std::string kind = text.substr(0, colon);
    std::vector<double> args;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        if (item == "inf") {
            args.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw input_error("bad numeric argument '" + item + "' in space shorthand");
        }
        if (used != item.size())
            throw input_error("bad numeric argument '" + item + "' in space shorthand");
        args.push_back(v);
    }
    if (kind == "lp" && args.size() == 1) return SpaceSpec::lp(args[0]);
    if (kind == "orlicz" && args.size() == 2) return SpaceSpec::orlicz(args[0], args[1]);
    if (kind == "modular" && args.size() == 1) return make_modular_space(args[0]);
    if (kind == "modular" && args.size() == 2)
        return SpaceSpec::modular(args[0], static_cast<int>(args[1]));
    throw input_error("unrecognized space shorthand '" + text + "'");
}

FiniteVector vector_from_json(const json& j) {
    if (!j.is_array()) throw input_error("vector must be a JSON array of numbers");
    std::vector<double> dense;
    dense.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw input_error("vector entries must be numbers");
        dense.push_back(v.get<double>());
    }
    return FiniteVector::from_dense(dense);
}

DistanceMatrix dmatrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("d"))
        throw input_error("distance matrix JSON must have fields 'n' and 'd'");
    const auto n = j.at("n").get<std::size_t>();
    const json& rows = j.at("d");
    if (!rows.is_array() || rows.size() != n)
        throw input_error("'d' must be an n-row array");
    std::vector<std::vector<double>> data;
    data.reserve(n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw input_error("'d' rows must have n entries");
        data.push_back(row.get<std::vector<double>>());
    }
    return DistanceMatrix::from_rows(data);
}

DistanceMatrix dmatrix_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw input_error("bad CSV cell '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw input_error("empty CSV distance matrix");
    for (const auto& row : rows)
        if (row.size() != rows.size())
            throw input_error("CSV distance matrix must be square");
    return DistanceMatrix::from_rows(rows);
}

}  // namespace normlab
