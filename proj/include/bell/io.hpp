#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bell/enumerate.hpp"
#include "bell/lhv.hpp"
#include "bell/quantum.hpp"
#include "bell/scenario.hpp"

namespace bell {

/// Insertion-ordered JSON keeps documents readable and diffs stable.
using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

/// Reads a whole document from a file path, or from standard input when the
/// path is "-". Throws Error{ParseError} on unreadable files or bad JSON.
Json load_json(const std::string& path);

/// dump(2) plus a trailing newline.
void write_json(std::ostream& out, const Json& doc);

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& doc);

/// Correlations carry optional provenance: the max_denominator used when the
/// entries came out of the float-to-rational bridge.
Json correlations_to_json(const CorrelationVector& correlations, const Scenario& scenario,
                          std::optional<unsigned long> max_denominator = std::nullopt);

struct CorrelationsDocument {
    CorrelationVector correlations;
    std::optional<unsigned long> max_denominator;
};
CorrelationsDocument correlations_from_json(const Json& doc);

Json matrix_to_json(const ModelMatrix& matrix);
/// Rebuilds the matrix from the embedded scenario and verifies the stored
/// entries against it entry by entry; any mismatch is Error{ParseError}.
ModelMatrix matrix_from_json(const Json& doc);

struct ResultDiagnostics {
    std::size_t lp_iterations = 0;
    double elapsed_ms = 0.0;
    bool rounding_sensitive = false;
};
Json result_to_json(const Verdict& verdict, const ModelMatrix& matrix,
                    const ResultDiagnostics& diagnostics);

Json bell_set_to_json(const CompleteBellSet& set);

Json quantum_setup_to_json(const QuantumSetup& setup);
QuantumSetup quantum_setup_from_json(const Json& doc);

}  // namespace bell
