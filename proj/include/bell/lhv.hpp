#pragma once

#include <cstddef>
#include <optional>

#include "bell/lp.hpp"
#include "bell/rational.hpp"
#include "bell/scenario.hpp"

namespace bell {

/// Probability per deterministic strategy, in strategy enumeration order.
/// Entries are >= 0 and sum to exactly 1.
struct JointDistribution {
    RatVec probabilities;
};

/// Throws Error{InvalidCertificate} unless probabilities are nonnegative and
/// sum to exactly 1.
void validate_distribution(const JointDistribution& distribution);

/// Bell inequality in standard form: coefficients q over the
/// non-normalization settings, classical bound q0 = max over deterministic
/// strategies of the expression value. The bound is always recomputed from
/// the model matrix, never trusted from a certificate.
struct BellInequality {
    enum class Origin { Direct, DualOptimum, DualRay };

    RatVec coefficients;  // one per setting tuple except the all-identity row
    Rational bound;       // q0, exact
    Origin origin = Origin::Direct;
};

/// Exact max over strategies of sum_s q_s M(s, strategy), s ranging over the
/// non-normalization rows. Throws Error{DimensionMismatch}.
Rational classical_bound(const RatVec& coefficients, const ModelMatrix& matrix);

/// Builds an inequality from raw coefficients; the bound is computed here.
BellInequality make_inequality(RatVec coefficients, const ModelMatrix& matrix,
                               BellInequality::Origin origin = BellInequality::Origin::Direct);

enum class CertificateKind {
    DualOptimum,  // Q >= 0 with M^T Q <= M^T 1; inequality direction is Q - 1
    DualRay,      // direction with ray >= 0 and M^T ray <= 0; used as-is
};

/// Turns a dual certificate into a Bell inequality: drop the normalization
/// component, keep the rest as q, recompute q0 exactly. Throws
/// Error{InvalidCertificate} when the stated constraints fail, and
/// Error{DimensionMismatch} on wrong length.
BellInequality extract_bell_inequality(const RatVec& certificate, const ModelMatrix& matrix,
                                       CertificateKind kind);

/// Fixed representative of the inequality's scale class: divides q by the
/// largest absolute coefficient (no-op for q = 0) and recomputes the bound.
BellInequality canonical_scaled(const BellInequality& inequality, const ModelMatrix& matrix);

/// c^T q - q0; positive means the correlations violate the inequality.
/// Throws Error{DimensionMismatch}.
Rational evaluate_inequality(const BellInequality& inequality, const CorrelationVector& correlations);

/// The feasibility program: minimize (M^T 1).P subject to M P >= C, P >= 0.
/// Its optimum equals 1.C exactly iff a reproducing distribution exists.
LinearProgram lhv_feasibility_program(const ModelMatrix& matrix, const CorrelationVector& correlations);

/// Exact M * P. Throws Error{DimensionMismatch}.
CorrelationVector reconstruct_correlations(const JointDistribution& distribution, const ModelMatrix& matrix);

enum class VerdictKind { Local, Nonlocal, NonlocalUnbounded };

/// Outcome of the local-realism decision. Local carries a reproducing
/// distribution; Nonlocal carries a violated inequality (canonically scaled)
/// with its margin; NonlocalUnbounded is the same but derived from an
/// improving dual ray (the feasibility program was infeasible).
struct Verdict {
    VerdictKind kind;
    std::optional<JointDistribution> distribution;
    std::optional<BellInequality> inequality;
    Rational margin;  // c^T q - q0 of the reported inequality; > 0 when nonlocal
    std::size_t lp_iterations = 0;

    bool local() const { return kind == VerdictKind::Local; }
};

/// Decides whether the correlations admit a local realistic model. Total on
/// validated input: every path yields Local, Nonlocal, or NonlocalUnbounded.
/// When several dual optima exist the deterministic pivot rule fixes which
/// inequality is reported.
Verdict check_local_realism(const ModelMatrix& matrix, const CorrelationVector& correlations);
Verdict check_local_realism(const Scenario& scenario, const CorrelationVector& correlations,
                            std::size_t column_cap = default_column_cap);

}  // namespace bell
