#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "bell/rational.hpp"

namespace bell {

enum class LPSense {
    /// minimize objective . x  s.t.  matrix x >= rhs, x >= 0   (|x| = cols)
    Minimize,
    /// maximize rhs . y  s.t.  matrix^T y <= objective, y >= 0 (|y| = rows)
    Maximize,
};

/// Canonical-form linear program over exact rationals. The same (objective,
/// matrix, rhs) triple carries both the primal (Minimize) and its dual
/// (Maximize), so dual_of only flips the sense.
struct LinearProgram {
    LPSense sense = LPSense::Minimize;
    RatVec objective;             // L, length = cols
    std::vector<RatVec> matrix;   // M, row-major
    RatVec rhs;                   // C, length = rows

    std::size_t rows() const { return matrix.size(); }
    std::size_t cols() const { return matrix.empty() ? objective.size() : matrix.front().size(); }
    std::size_t variable_count() const { return sense == LPSense::Minimize ? cols() : rows(); }

    /// Throws Error{DimensionMismatch} when the triple is inconsistent.
    void validate() const;
};

LinearProgram dual_of(const LinearProgram& lp);

struct LPOptimal {
    RatVec solution;    // optimal point in the program's own variables
    Rational objective; // exact optimal value
    RatVec dual;        // optimal point of the dual program
};

struct LPUnbounded {
    RatVec point;  // feasible point
    RatVec ray;    // improving recession direction: point + t*ray feasible for all t >= 0
};

/// Farkas-type infeasibility certificate.
/// Minimize sense: certificate y >= 0 with y^T M <= 0 and y^T C > 0.
/// Maximize sense: certificate x >= 0 with M x >= 0 and L^T x < 0.
struct LPInfeasible {
    RatVec certificate;
};

struct LPOutcome {
    std::variant<LPOptimal, LPUnbounded, LPInfeasible> result;
    std::size_t iterations = 0;

    bool optimal() const { return std::holds_alternative<LPOptimal>(result); }
    bool unbounded() const { return std::holds_alternative<LPUnbounded>(result); }
    bool infeasible() const { return std::holds_alternative<LPInfeasible>(result); }
    const LPOptimal& as_optimal() const { return std::get<LPOptimal>(result); }
    const LPUnbounded& as_unbounded() const { return std::get<LPUnbounded>(result); }
    const LPInfeasible& as_infeasible() const { return std::get<LPInfeasible>(result); }
};

struct SolveOptions {
    /// 0 selects the default 10 * (rows + cols)^2.
    std::size_t iteration_limit = 0;
};

/// Two-phase simplex with Bland's least-index rule on a dense rational
/// tableau. Deterministic: identical inputs give identical pivot sequences.
/// Throws Error{DimensionMismatch} on inconsistent input and
/// Error{IterationLimit} if the (anti-cycling) limit is ever hit.
LPOutcome solve(const LinearProgram& lp, const SolveOptions& options = {});

/// True iff both outcomes are optimal with exactly equal objective values.
/// Throws Error{NotOptimal} if either outcome is not optimal.
bool verify_strong_duality(const LPOutcome& primal, const LPOutcome& dual);

}  // namespace bell
