#include "bell/lhv.hpp"

#include <cstdlib>
#include <utility>

#include "bell/errors.hpp"

namespace bell {

void validate_distribution(const JointDistribution& distribution) {
    Rational total(0);
    for (const Rational& p : distribution.probabilities) {
        if (p < 0) fail(ErrorCode::InvalidCertificate, "distribution has a negative probability");
        total += p;
    }
    if (total != 1) {
        fail(ErrorCode::InvalidCertificate,
             "distribution probabilities sum to " + to_string(total) + ", expected 1");
    }
}

Rational classical_bound(const RatVec& coefficients, const ModelMatrix& matrix) {
    if (coefficients.size() + 1 != matrix.rows()) {
        fail(ErrorCode::DimensionMismatch,
             "expected " + std::to_string(matrix.rows() - 1) + " coefficients, got " +
                 std::to_string(coefficients.size()));
    }
    Rational best(0);
    bool first = true;
    for (std::size_t column = 0; column < matrix.cols(); ++column) {
        Rational value(0);
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (coefficients[i] == 0) continue;
            value += coefficients[i] * matrix.at(i + 1, column);
        }
        if (first || value > best) {
            best = std::move(value);
            first = false;
        }
    }
    if (first) fail(ErrorCode::Internal, "model matrix has no strategy columns");
    return best;
}

BellInequality make_inequality(RatVec coefficients, const ModelMatrix& matrix,
                               BellInequality::Origin origin) {
    BellInequality inequality;
    inequality.coefficients = std::move(coefficients);
    inequality.bound = classical_bound(inequality.coefficients, matrix);
    inequality.origin = origin;
    return inequality;
}

namespace {

// Exact (M^T v)_column for one strategy column.
Rational column_dot(const ModelMatrix& matrix, const RatVec& v, std::size_t column) {
    Rational value(0);
    for (std::size_t s = 0; s < matrix.rows(); ++s) {
        if (v[s] == 0) continue;
        value += v[s] * matrix.at(s, column);
    }
    return value;
}

}  // namespace

BellInequality extract_bell_inequality(const RatVec& certificate, const ModelMatrix& matrix,
                                       CertificateKind kind) {
    if (certificate.size() != matrix.rows()) {
        fail(ErrorCode::DimensionMismatch,
             "certificate has " + std::to_string(certificate.size()) + " entries, expected " +
                 std::to_string(matrix.rows()));
    }
    for (const Rational& entry : certificate) {
        if (entry < 0) fail(ErrorCode::InvalidCertificate, "certificate entry is negative");
    }
    if (kind == CertificateKind::DualOptimum) {
        const RatVec& sums = matrix.column_sums();
        for (std::size_t column = 0; column < matrix.cols(); ++column) {
            if (column_dot(matrix, certificate, column) > sums[column]) {
                fail(ErrorCode::InvalidCertificate,
                     "dual point violates M^T Q <= M^T 1 at strategy " + std::to_string(column));
            }
        }
    } else {
        for (std::size_t column = 0; column < matrix.cols(); ++column) {
            if (column_dot(matrix, certificate, column) > 0) {
                fail(ErrorCode::InvalidCertificate,
                     "dual ray violates M^T y <= 0 at strategy " + std::to_string(column));
            }
        }
    }

    RatVec coefficients(certificate.size() - 1);
    for (std::size_t i = 0; i + 1 < certificate.size(); ++i) {
        coefficients[i] = certificate[i + 1];
        if (kind == CertificateKind::DualOptimum) coefficients[i] -= 1;
    }
    return make_inequality(std::move(coefficients), matrix,
                           kind == CertificateKind::DualOptimum ? BellInequality::Origin::DualOptimum
                                                                : BellInequality::Origin::DualRay);
}

BellInequality canonical_scaled(const BellInequality& inequality, const ModelMatrix& matrix) {
    Rational largest(0);
    for (const Rational& q : inequality.coefficients) {
        Rational magnitude = q < 0 ? Rational(-q) : q;
        if (magnitude > largest) largest = std::move(magnitude);
    }
    RatVec scaled = inequality.coefficients;
    if (largest != 0) {
        for (Rational& q : scaled) q /= largest;
    }
    return make_inequality(std::move(scaled), matrix, inequality.origin);
}

Rational evaluate_inequality(const BellInequality& inequality, const CorrelationVector& correlations) {
    if (inequality.coefficients.size() + 1 != correlations.entries.size()) {
        fail(ErrorCode::DimensionMismatch,
             "inequality has " + std::to_string(inequality.coefficients.size()) +
                 " coefficients, correlations have " + std::to_string(correlations.entries.size()) +
                 " entries");
    }
    Rational value(0);
    for (std::size_t i = 0; i < inequality.coefficients.size(); ++i) {
        if (inequality.coefficients[i] == 0) continue;
        value += inequality.coefficients[i] * correlations.entries[i + 1];
    }
    return value - inequality.bound;
}

LinearProgram lhv_feasibility_program(const ModelMatrix& matrix, const CorrelationVector& correlations) {
    validate_correlations(matrix.scenario(), correlations.entries);
    LinearProgram program;
    program.sense = LPSense::Minimize;
    program.objective = matrix.column_sums();
    program.matrix.reserve(matrix.rows());
    for (std::size_t s = 0; s < matrix.rows(); ++s) program.matrix.push_back(matrix.row(s));
    program.rhs = correlations.entries;
    return program;
}

CorrelationVector reconstruct_correlations(const JointDistribution& distribution,
                                           const ModelMatrix& matrix) {
    if (distribution.probabilities.size() != matrix.cols()) {
        fail(ErrorCode::DimensionMismatch,
             "distribution has " + std::to_string(distribution.probabilities.size()) +
                 " entries, expected " + std::to_string(matrix.cols()));
    }
    return CorrelationVector{matrix.multiply(distribution.probabilities)};
}

Verdict check_local_realism(const ModelMatrix& matrix, const CorrelationVector& correlations) {
    LinearProgram program = lhv_feasibility_program(matrix, correlations);
    LPOutcome outcome = solve(program);

    Verdict verdict;
    verdict.lp_iterations = outcome.iterations;

    if (outcome.optimal()) {
        const LPOptimal& optimal = outcome.as_optimal();
        Rational target = sum(correlations.entries);
        if (optimal.objective == target) {
            verdict.kind = VerdictKind::Local;
            verdict.distribution = JointDistribution{optimal.solution};
            verdict.margin = Rational(0);
            validate_distribution(*verdict.distribution);
            return verdict;
        }
        verdict.kind = VerdictKind::Nonlocal;
        BellInequality raw =
            extract_bell_inequality(optimal.dual, matrix, CertificateKind::DualOptimum);
        verdict.inequality = canonical_scaled(raw, matrix);
    } else if (outcome.infeasible()) {
        verdict.kind = VerdictKind::NonlocalUnbounded;
        BellInequality raw = extract_bell_inequality(outcome.as_infeasible().certificate, matrix,
                                                     CertificateKind::DualRay);
        verdict.inequality = canonical_scaled(raw, matrix);
    } else {
        // The normalization row forces the objective to grow along any
        // feasible ray, so the program cannot be unbounded below.
        fail(ErrorCode::Internal, "feasibility program reported unbounded");
    }

    verdict.margin = evaluate_inequality(*verdict.inequality, correlations);
    if (verdict.margin <= 0) {
        fail(ErrorCode::Internal, "nonlocal verdict produced a non-violated inequality");
    }
    return verdict;
}

Verdict check_local_realism(const Scenario& scenario, const CorrelationVector& correlations,
                            std::size_t column_cap) {
    ModelMatrix matrix = ModelMatrix::build(scenario, column_cap);
    return check_local_realism(matrix, correlations);
}

}  // namespace bell
