#include "bell/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "bell/errors.hpp"

namespace bell {

namespace {

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object()) fail(ErrorCode::ParseError, "expected an object");
    const auto it = doc.find(key);
    if (it == doc.end()) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return *it;
}

void check_header(const Json& doc, const char* type) {
    const Json& version = field(doc, "format_version");
    if (!version.is_number_integer() || version.get<int>() != format_version) {
        fail(ErrorCode::ParseError, "unsupported format_version");
    }
    const Json& tag = field(doc, "type");
    if (!tag.is_string() || tag.get<std::string>() != type) {
        fail(ErrorCode::ParseError, std::string("expected a '") + type + "' document");
    }
}

Rational rational_from_json(const Json& value) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    fail(ErrorCode::ParseError, "rationals must be \"p/q\" strings or integers, not floats");
}

RatVec rational_vector_from_json(const Json& value) {
    if (!value.is_array()) fail(ErrorCode::ParseError, "expected an array of rationals");
    RatVec out;
    out.reserve(value.size());
    for (const Json& entry : value) out.push_back(rational_from_json(entry));
    return out;
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const Json& value) {
    if (!value.is_array() || value.empty()) {
        fail(ErrorCode::ParseError, "expected a matrix as an array of rows");
    }
    const std::size_t rows = value.size();
    const Json& first = value.front();
    if (!first.is_array() || first.empty()) {
        fail(ErrorCode::ParseError, "matrix rows must be nonempty arrays");
    }
    const std::size_t cols = first.size();
    ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = value.at(i);
        if (!row.is_array() || row.size() != cols) {
            fail(ErrorCode::ParseError, "matrix rows have unequal lengths");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const Json& entry = row.at(j);
            double re = 0.0;
            double im = 0.0;
            if (entry.is_number()) {
                re = entry.get<double>();
            } else if (entry.is_array() && entry.size() == 2 && entry.at(0).is_number() &&
                       entry.at(1).is_number()) {
                re = entry.at(0).get<double>();
                im = entry.at(1).get<double>();
            } else {
                fail(ErrorCode::ParseError,
                     "matrix entries must be numbers or [re, im] pairs");
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re, im};
        }
    }
    return out;
}

}  // namespace

Json load_json(const std::string& path) {
    std::string content;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        content = buffer.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        content = buffer.str();
    }
    try {
        return Json::parse(content);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

void write_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

Json scenario_to_json(const Scenario& scenario) {
    Json parties = Json::array();
    for (const auto& party : scenario.parties()) {
        Json measurements = Json::array();
        for (const auto& outcomes : party) {
            Json values = Json::array();
            for (const Rational& outcome : outcomes) values.push_back(to_string(outcome));
            measurements.push_back(std::move(values));
        }
        parties.push_back(std::move(measurements));
    }
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "scenario";
    doc["parties"] = std::move(parties);
    return doc;
}

Scenario scenario_from_json(const Json& doc) {
    check_header(doc, "scenario");
    const Json& parties = field(doc, "parties");
    if (!parties.is_array()) fail(ErrorCode::ParseError, "'parties' must be an array");
    std::vector<Scenario::PartySpec> specs;
    specs.reserve(parties.size());
    for (const Json& party : parties) {
        if (!party.is_array()) fail(ErrorCode::ParseError, "each party must be an array");
        Scenario::PartySpec spec;
        spec.reserve(party.size());
        for (const Json& outcomes : party) spec.push_back(rational_vector_from_json(outcomes));
        specs.push_back(std::move(spec));
    }
    return Scenario::create(std::move(specs));
}

Json correlations_to_json(const CorrelationVector& correlations, const Scenario& scenario,
                          std::optional<unsigned long> max_denominator) {
    Json entries = Json::array();
    for (const Rational& entry : correlations.entries) entries.push_back(to_string(entry));
    Json labels = Json::array();
    for (const SettingTuple& setting : enumerate_settings(scenario)) {
        labels.push_back(setting_label(scenario, setting));
    }
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "correlations";
    doc["entries"] = std::move(entries);
    doc["settings"] = std::move(labels);
    if (max_denominator) {
        doc["provenance"] = Json{{"max_denominator", *max_denominator}};
    }
    return doc;
}

CorrelationsDocument correlations_from_json(const Json& doc) {
    check_header(doc, "correlations");
    CorrelationsDocument out;
    out.correlations.entries = rational_vector_from_json(field(doc, "entries"));
    if (doc.contains("provenance")) {
        const Json& provenance = doc.at("provenance");
        if (provenance.is_object() && provenance.contains("max_denominator") &&
            provenance.at("max_denominator").is_number_integer()) {
            out.max_denominator = provenance.at("max_denominator").get<unsigned long>();
        }
    }
    return out;
}

Json matrix_to_json(const ModelMatrix& matrix) {
    Json rows = Json::array();
    for (const SettingTuple& setting : matrix.settings()) {
        rows.push_back(setting_label(matrix.scenario(), setting));
    }
    Json columns = Json::array();
    for (const DeterministicStrategy& strategy : matrix.strategies()) {
        columns.push_back(strategy_label(matrix.scenario(), strategy));
    }
    Json entries = Json::array();
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < matrix.cols(); ++c) row.push_back(to_string(matrix.at(r, c)));
        entries.push_back(std::move(row));
    }
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "model_matrix";
    doc["scenario"] = scenario_to_json(matrix.scenario());
    doc["rows"] = std::move(rows);
    doc["columns"] = std::move(columns);
    doc["entries"] = std::move(entries);
    return doc;
}

ModelMatrix matrix_from_json(const Json& doc) {
    check_header(doc, "model_matrix");
    Scenario scenario = scenario_from_json(field(doc, "scenario"));
    ModelMatrix matrix = ModelMatrix::build(scenario);
    const Json& entries = field(doc, "entries");
    if (!entries.is_array() || entries.size() != matrix.rows()) {
        fail(ErrorCode::ParseError, "matrix entry grid has the wrong number of rows");
    }
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        const RatVec row = rational_vector_from_json(entries.at(r));
        if (row.size() != matrix.cols()) {
            fail(ErrorCode::ParseError, "matrix entry grid has the wrong number of columns");
        }
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            if (row[c] != matrix.at(r, c)) {
                fail(ErrorCode::ParseError,
                     "stored matrix entry disagrees with the scenario at row " +
                         std::to_string(r) + ", column " + std::to_string(c));
            }
        }
    }
    return matrix;
}

namespace {

Json inequality_to_json(const BellInequality& inequality, const ModelMatrix& matrix,
                        const Rational& margin) {
    Json coefficients;
    const auto& settings = matrix.settings();
    for (std::size_t i = 0; i < inequality.coefficients.size(); ++i) {
        coefficients[setting_label(matrix.scenario(), settings[i + 1])] =
            to_string(inequality.coefficients[i]);
    }
    Json out;
    out["coefficients"] = std::move(coefficients);
    out["bound"] = to_string(inequality.bound);
    out["margin"] = to_string(margin);
    return out;
}

}  // namespace

Json result_to_json(const Verdict& verdict, const ModelMatrix& matrix,
                    const ResultDiagnostics& diagnostics) {
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "result";
    switch (verdict.kind) {
        case VerdictKind::Local:
            doc["verdict"] = "local";
            break;
        case VerdictKind::Nonlocal:
            doc["verdict"] = "nonlocal";
            break;
        case VerdictKind::NonlocalUnbounded:
            doc["verdict"] = "nonlocal_unbounded";
            break;
    }
    if (verdict.distribution) {
        Json distribution;
        const auto& strategies = matrix.strategies();
        for (std::size_t i = 0; i < verdict.distribution->probabilities.size(); ++i) {
            distribution[strategy_label(matrix.scenario(), strategies[i])] =
                to_string(verdict.distribution->probabilities[i]);
        }
        doc["distribution"] = std::move(distribution);
    }
    if (verdict.inequality) {
        doc["inequality"] = inequality_to_json(*verdict.inequality, matrix, verdict.margin);
    }
    doc["diagnostics"] = Json{{"lp_iterations", verdict.lp_iterations},
                              {"elapsed_ms", diagnostics.elapsed_ms},
                              {"rounding_sensitive", diagnostics.rounding_sensitive}};
    return doc;
}

Json bell_set_to_json(const CompleteBellSet& set) {
    const ModelMatrix matrix = ModelMatrix::build(set.scenario);
    Json members = Json::array();
    for (const CompleteBellMember& member : set.members) {
        Json entry = inequality_to_json(member.inequality, matrix, Rational(0));
        entry.erase("margin");
        entry["facet"] = member.facet;
        entry["from_ray"] = member.from_ray;
        members.push_back(std::move(entry));
    }
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "bell_set";
    doc["scenario"] = scenario_to_json(set.scenario);
    doc["raw_vertex_count"] = set.raw_vertex_count;
    doc["member_count"] = set.members.size();
    doc["members"] = std::move(members);
    return doc;
}

Json quantum_setup_to_json(const QuantumSetup& setup) {
    Json observables = Json::array();
    for (const auto& party : setup.observables) {
        Json list = Json::array();
        for (const ComplexMatrix& observable : party) {
            list.push_back(complex_matrix_to_json(observable));
        }
        observables.push_back(std::move(list));
    }
    Json doc;
    doc["format_version"] = format_version;
    doc["type"] = "quantum_setup";
    doc["local_dimensions"] = setup.local_dimensions;
    doc["state"] = complex_matrix_to_json(setup.state);
    doc["observables"] = std::move(observables);
    return doc;
}

QuantumSetup quantum_setup_from_json(const Json& doc) {
    check_header(doc, "quantum_setup");
    QuantumSetup setup;
    const Json& dims = field(doc, "local_dimensions");
    if (!dims.is_array()) fail(ErrorCode::ParseError, "'local_dimensions' must be an array");
    for (const Json& dim : dims) {
        if (!dim.is_number_integer() || dim.get<long long>() < 1) {
            fail(ErrorCode::ParseError, "local dimensions must be positive integers");
        }
        setup.local_dimensions.push_back(dim.get<std::size_t>());
    }
    setup.state = complex_matrix_from_json(field(doc, "state"));
    const Json& observables = field(doc, "observables");
    if (!observables.is_array()) fail(ErrorCode::ParseError, "'observables' must be an array");
    for (const Json& party : observables) {
        if (!party.is_array()) {
            fail(ErrorCode::ParseError, "each party's observables must be an array");
        }
        std::vector<ComplexMatrix> list;
        list.reserve(party.size());
        for (const Json& observable : party) list.push_back(complex_matrix_from_json(observable));
        setup.observables.push_back(std::move(list));
    }
    return setup;
}

}  // namespace bell
