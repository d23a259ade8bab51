#include <chrono>
#include <cstddef>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bell/enumerate.hpp"
#include "bell/errors.hpp"
#include "bell/io.hpp"
#include "bell/lhv.hpp"
#include "bell/quantum.hpp"
#include "bell/scenario.hpp"

namespace {

// Exit codes: 0 local/success, 2 input error, 3 nonlocal, 4 size limit,
// 1 internal failure.
constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_input = 2;
constexpr int exit_nonlocal = 3;
constexpr int exit_size = 4;

struct Options {
    std::string scenario_path;
    std::string correlations_path;
    std::string setup_path;
    unsigned long max_denominator = 1'000'000;
    std::size_t vertex_cap = 1'000'000;
    std::size_t column_cap = bell::default_column_cap;
    unsigned long seed = 0;  // reserved for randomized helpers
    bool quiet = false;
};

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

int classify(const bell::Error& error) {
    switch (error.code()) {
        case bell::ErrorCode::SizeLimit:
            return exit_size;
        case bell::ErrorCode::IterationLimit:
        case bell::ErrorCode::NotOptimal:
        case bell::ErrorCode::InvalidCertificate:
        case bell::ErrorCode::Internal:
            return exit_internal;
        default:
            return exit_input;
    }
}

int run_check(const Options& options) {
    const auto start = std::chrono::steady_clock::now();
    const bell::Scenario scenario =
        bell::scenario_from_json(bell::load_json(options.scenario_path));
    const bell::CorrelationsDocument doc =
        bell::correlations_from_json(bell::load_json(options.correlations_path));
    const bell::ModelMatrix matrix = bell::ModelMatrix::build(scenario, options.column_cap);
    const bell::Verdict verdict = bell::check_local_realism(matrix, doc.correlations);

    bell::ResultDiagnostics diagnostics;
    diagnostics.lp_iterations = verdict.lp_iterations;
    diagnostics.elapsed_ms = elapsed_ms(start);
    if (!verdict.local() && doc.max_denominator) {
        // Rationalized inputs carry rounding noise up to 1/max_denominator per
        // entry; a margin below rows(M) * 2/max_denominator could flip under a
        // different rounding and is flagged.
        const bell::Rational threshold =
            bell::Rational(2 * static_cast<long long>(matrix.rows())) /
            bell::Rational(static_cast<long long>(*doc.max_denominator));
        diagnostics.rounding_sensitive = verdict.margin < threshold;
    }

    bell::write_json(std::cout, bell::result_to_json(verdict, matrix, diagnostics));
    if (!options.quiet) {
        switch (verdict.kind) {
            case bell::VerdictKind::Local:
                std::cerr << "verdict: local (" << verdict.lp_iterations << " LP iterations)\n";
                break;
            case bell::VerdictKind::Nonlocal:
                std::cerr << "verdict: nonlocal, margin " << bell::to_string(verdict.margin)
                          << " (" << verdict.lp_iterations << " LP iterations)\n";
                break;
            case bell::VerdictKind::NonlocalUnbounded:
                std::cerr << "verdict: nonlocal_unbounded, margin "
                          << bell::to_string(verdict.margin) << "\n";
                break;
        }
        if (diagnostics.rounding_sensitive) {
            std::cerr << "warning: margin is within rationalization noise; "
                         "re-run with a larger --max-denominator upstream\n";
        }
    }
    return verdict.local() ? exit_ok : exit_nonlocal;
}

int run_enumerate(const Options& options) {
    const bell::Scenario scenario =
        bell::scenario_from_json(bell::load_json(options.scenario_path));
    bell::EnumerationOptions enum_options;
    enum_options.ray_cap = options.vertex_cap;
    const bell::CompleteBellSet set =
        bell::enumerate_complete_set(scenario, enum_options, options.column_cap);
    bell::write_json(std::cout, bell::bell_set_to_json(set));
    if (!options.quiet) {
        std::size_t facets = 0;
        for (const auto& member : set.members) facets += member.facet ? 1 : 0;
        std::cerr << "members: " << set.members.size() << " (" << facets << " facets) from "
                  << set.raw_vertex_count << " polytope vertices\n";
    }
    return exit_ok;
}

int run_quantum(const Options& options) {
    const bell::Scenario scenario =
        bell::scenario_from_json(bell::load_json(options.scenario_path));
    const bell::QuantumSetup setup =
        bell::quantum_setup_from_json(bell::load_json(options.setup_path));
    const std::vector<double> values = bell::correlations_from_quantum(setup, scenario);
    const bell::CorrelationVector correlations =
        bell::rationalize(values, options.max_denominator, scenario);
    bell::write_json(std::cout,
                     bell::correlations_to_json(correlations, scenario, options.max_denominator));
    if (!options.quiet) {
        std::cerr << "correlations: " << correlations.entries.size()
                  << " entries, max denominator " << options.max_denominator << "\n";
    }
    return exit_ok;
}

int run_matrix(const Options& options) {
    const bell::Scenario scenario =
        bell::scenario_from_json(bell::load_json(options.scenario_path));
    const bell::ModelMatrix matrix = bell::ModelMatrix::build(scenario, options.column_cap);
    bell::write_json(std::cout, bell::matrix_to_json(matrix));
    if (!options.quiet) {
        std::cerr << "matrix: " << matrix.rows() << " settings x " << matrix.cols()
                  << " strategies\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local realism tester: decides whether correlations admit a local "
                 "hidden-variable model, or exhibits a violated Bell inequality"};
    app.require_subcommand(1);

    Options options;
    app.add_option("--max-denominator", options.max_denominator,
                   "Denominator cap for float-to-rational conversion")
        ->capture_default_str();
    app.add_option("--vertex-cap", options.vertex_cap,
                   "Abort enumeration beyond this many intermediate rays")
        ->capture_default_str();
    app.add_option("--column-cap", options.column_cap,
                   "Refuse scenarios with more deterministic strategies than this");
    app.add_option("--seed", options.seed, "Seed for randomized helpers (reserved)");
    app.add_flag("--quiet", options.quiet, "Suppress the summary on standard error");

    CLI::App* check =
        app.add_subcommand("check", "Decide local realism for a correlation vector");
    check->fallthrough();  // allow the global flags after the subcommand too
    check->add_option("scenario", options.scenario_path, "Scenario document ('-' for stdin)")
        ->required();
    check->add_option("correlations", options.correlations_path,
                      "Correlations document ('-' for stdin)")
        ->required();

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "List the complete set of Bell inequalities");
    enumerate->fallthrough();
    enumerate->add_option("scenario", options.scenario_path, "Scenario document ('-' for stdin)")
        ->required();

    CLI::App* quantum = app.add_subcommand(
        "quantum", "Compute rationalized correlations from a quantum state and observables");
    quantum->fallthrough();
    quantum->add_option("setup", options.setup_path, "Quantum setup document ('-' for stdin)")
        ->required();
    quantum->add_option("scenario", options.scenario_path, "Scenario document ('-' for stdin)")
        ->required();

    CLI::App* matrix = app.add_subcommand("matrix", "Print the scenario's model matrix");
    matrix->fallthrough();
    matrix->add_option("scenario", options.scenario_path, "Scenario document ('-' for stdin)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (check->parsed()) return run_check(options);
        if (enumerate->parsed()) return run_enumerate(options);
        if (quantum->parsed()) return run_quantum(options);
        if (matrix->parsed()) return run_matrix(options);
        return exit_input;
    } catch (const bell::Error& error) {
        std::cerr << "error [" << bell::error_code_name(error.code()) << "]: " << error.what()
                  << "\n";
        return classify(error);
    } catch (const std::exception& error) {
        std::cerr << "internal error: " << error.what() << "\n";
        return exit_internal;
    }
}
