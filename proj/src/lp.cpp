#include "bell/lp.hpp"

#include <cstddef>
#include <limits>
#include <utility>

#include "bell/errors.hpp"

namespace bell {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Dense-tableau two-phase simplex for the canonical form
///   minimize c.x  s.t.  A x >= b, x >= 0.
/// Column layout: [0,n) structural, [n,n+m) surplus, [n+m,..) artificial.
/// Rows with b_i <= 0 are negated so every right-hand side starts >= 0 and
/// the surplus variable can open the basis; rows with b_i > 0 get an
/// artificial variable instead.
class SimplexEngine {
  public:
    SimplexEngine(const RatVec& c, const std::vector<RatVec>& A, const RatVec& b, std::size_t limit)
        : cost_(c), a_(A), b_(b), m_(A.size()), n_(c.size()), limit_(limit) {
        art_of_row_.assign(m_, npos);
        std::size_t art_count = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (b[i] > 0) art_of_row_[i] = n_ + m_ + art_count++;
        }
        width_ = n_ + m_ + art_count;
        rows_.assign(m_, RatVec(width_ + 1, Rational(0)));
        basis_.assign(m_, 0);
        allowed_.assign(width_, true);
        for (std::size_t i = 0; i < m_; ++i) {
            const int sigma = b[i] > 0 ? 1 : -1;
            RatVec& row = rows_[i];
            for (std::size_t j = 0; j < n_; ++j) row[j] = sigma * A[i][j];
            row[n_ + i] = -sigma;
            row[width_] = sigma * b[i];
            if (art_of_row_[i] != npos) {
                row[art_of_row_[i]] = 1;
                basis_[i] = art_of_row_[i];
            } else {
                basis_[i] = n_ + i;
            }
        }
        obj2_.assign(width_ + 1, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) obj2_[j] = cost_[j];
        obj1_.assign(width_ + 1, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (art_of_row_[i] == npos) continue;
            for (std::size_t j = 0; j <= width_; ++j) obj1_[j] -= rows_[i][j];
            obj1_[art_of_row_[i]] += 1;
        }
    }

    LPOutcome run() {
        if (!run_phase(/*phase1=*/true)) {
            fail(ErrorCode::Internal, "phase-1 objective reported unbounded");
        }
        if (-obj1_[width_] > 0) {
            // Farkas certificate: reduced costs of the surplus columns under
            // the phase-1 objective give y >= 0 with y^T A <= 0, y^T b > 0.
            RatVec certificate(m_);
            for (std::size_t i = 0; i < m_; ++i) certificate[i] = obj1_[n_ + i];
            check_infeasible(certificate);
            return LPOutcome{LPInfeasible{std::move(certificate)}, iterations_};
        }
        expel_artificials();
        for (std::size_t j = n_ + m_; j < width_; ++j) allowed_[j] = false;
        in_phase1_ = false;
        if (!run_phase(/*phase1=*/false)) {
            RatVec point = structural(current_point());
            RatVec ray = structural(unbounded_ray());
            check_unbounded(point, ray);
            return LPOutcome{LPUnbounded{std::move(point), std::move(ray)}, iterations_};
        }
        RatVec solution = structural(current_point());
        Rational value = dot(cost_, solution);
        RatVec dual(m_);
        for (std::size_t i = 0; i < m_; ++i) dual[i] = obj2_[n_ + i];
        check_optimal(solution, value, dual);
        return LPOutcome{LPOptimal{std::move(solution), std::move(value), std::move(dual)}, iterations_};
    }

  private:
    bool run_phase(bool phase1) {
        const RatVec& obj = phase1 ? obj1_ : obj2_;
        while (true) {
            const std::size_t e = entering(obj);
            if (e == npos) return true;
            const std::size_t r = leaving(e);
            if (r == npos) {
                if (phase1) fail(ErrorCode::Internal, "phase-1 ratio test failed");
                unbounded_col_ = e;
                return false;
            }
            if (basis_[r] >= n_ + m_) allowed_[basis_[r]] = false;
            pivot(r, e);
        }
    }

    // Bland: smallest-index allowed column with negative reduced cost.
    std::size_t entering(const RatVec& obj) const {
        for (std::size_t j = 0; j < width_; ++j) {
            if (allowed_[j] && obj[j] < 0) return j;
        }
        return npos;
    }

    // Bland: among minimal-ratio rows, the one with the smallest basic index.
    std::size_t leaving(std::size_t e) const {
        std::size_t best = npos;
        Rational best_ratio;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& t = rows_[i][e];
            if (t <= 0) continue;
            Rational ratio = rows_[i][width_] / t;
            if (best == npos || ratio < best_ratio ||
                (ratio == best_ratio && basis_[i] < basis_[best])) {
                best = i;
                best_ratio = std::move(ratio);
            }
        }
        return best;
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        if (++iterations_ > limit_) {
            fail(ErrorCode::IterationLimit,
                 "simplex exceeded " + std::to_string(limit_) + " pivots (internal error, not a verdict)");
        }
        RatVec& prowv = rows_[prow];
        const Rational piv = prowv[pcol];
        if (piv == 0) fail(ErrorCode::Internal, "zero pivot");
        if (piv != 1) {
            for (Rational& v : prowv) {
                if (v != 0) v /= piv;
            }
        }
        for (std::size_t r = 0; r < m_; ++r) {
            if (r != prow) eliminate(rows_[r], prowv, pcol);
        }
        eliminate(obj2_, prowv, pcol);
        if (in_phase1_) eliminate(obj1_, prowv, pcol);
        basis_[prow] = pcol;
    }

    static void eliminate(RatVec& target, const RatVec& prowv, std::size_t pcol) {
        const Rational factor = target[pcol];
        if (factor == 0) return;
        for (std::size_t j = 0; j < target.size(); ++j) {
            if (prowv[j] != 0) target[j] -= factor * prowv[j];
        }
    }

    // Pivots every zero-level artificial out of the basis where possible.
    // Rows whose non-artificial entries are all zero are redundant; they stay
    // frozen (their artificial keeps the unit column and no later pivot can
    // touch them).
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            std::size_t col = npos;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == npos) continue;
            allowed_[basis_[i]] = false;
            pivot(i, col);
        }
    }

    RatVec current_point() const {
        RatVec point(width_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) point[basis_[i]] = rows_[i][width_];
        return point;
    }

    RatVec unbounded_ray() const {
        RatVec ray(width_, Rational(0));
        ray[unbounded_col_] = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            if (rows_[i][unbounded_col_] != 0) ray[basis_[i]] = -rows_[i][unbounded_col_];
        }
        return ray;
    }

    RatVec structural(const RatVec& full) const { return RatVec(full.begin(), full.begin() + n_); }

    // Exact certificate checks against the original data; any violation is
    // an internal solver bug, never a verdict.
    void check_optimal(const RatVec& x, const Rational& value, const RatVec& y) const {
        require(feasible_point(x), "optimal point infeasible");
        Rational dual_value = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            require(y[i] >= 0, "dual multiplier negative");
            dual_value += y[i] * b_[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            Rational reduced = cost_[j];
            for (std::size_t i = 0; i < m_; ++i) reduced -= y[i] * a_[i][j];
            require(reduced >= 0, "dual constraint violated");
        }
        require(dual_value == value, "strong duality violated at solution");
    }

    void check_unbounded(const RatVec& x, const RatVec& d) const {
        require(feasible_point(x), "unbounded witness point infeasible");
        Rational slope = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            require(d[j] >= 0, "ray leaves the nonnegative orthant");
            slope += cost_[j] * d[j];
        }
        for (std::size_t i = 0; i < m_; ++i) {
            Rational row = 0;
            for (std::size_t j = 0; j < n_; ++j) row += a_[i][j] * d[j];
            require(row >= 0, "ray violates a constraint direction");
        }
        require(slope < 0, "ray does not improve the objective");
    }

    void check_infeasible(const RatVec& y) const {
        Rational rhs_value = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            require(y[i] >= 0, "infeasibility certificate negative");
            rhs_value += y[i] * b_[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            Rational col = 0;
            for (std::size_t i = 0; i < m_; ++i) col += y[i] * a_[i][j];
            require(col <= 0, "infeasibility certificate fails y^T A <= 0");
        }
        require(rhs_value > 0, "infeasibility certificate fails y^T b > 0");
    }

    bool feasible_point(const RatVec& x) const {
        for (std::size_t j = 0; j < n_; ++j) {
            if (x[j] < 0) return false;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            Rational row = 0;
            for (std::size_t j = 0; j < n_; ++j) row += a_[i][j] * x[j];
            if (row < b_[i]) return false;
        }
        return true;
    }

    static void require(bool condition, const char* what) {
        if (!condition) fail(ErrorCode::Internal, what);
    }

    const RatVec& cost_;
    const std::vector<RatVec>& a_;
    const RatVec& b_;
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::size_t width_ = 0;
    std::size_t limit_ = 0;
    std::vector<RatVec> rows_;
    RatVec obj1_;
    RatVec obj2_;
    std::vector<std::size_t> basis_;
    std::vector<char> allowed_;
    std::vector<std::size_t> art_of_row_;
    std::size_t unbounded_col_ = npos;
    std::size_t iterations_ = 0;
    bool in_phase1_ = true;
};

}  // namespace

void LinearProgram::validate() const {
    for (const RatVec& row : matrix) {
        if (row.size() != objective.size()) {
            fail(ErrorCode::DimensionMismatch, "matrix row length does not match objective length");
        }
    }
    if (rhs.size() != matrix.size()) {
        fail(ErrorCode::DimensionMismatch, "rhs length does not match row count");
    }
}

LinearProgram dual_of(const LinearProgram& lp) {
    lp.validate();
    LinearProgram dual = lp;
    dual.sense = lp.sense == LPSense::Minimize ? LPSense::Maximize : LPSense::Minimize;
    return dual;
}

LPOutcome solve(const LinearProgram& lp, const SolveOptions& options) {
    lp.validate();
    const std::size_t dims = lp.rows() + lp.cols();
    const std::size_t limit =
        options.iteration_limit != 0 ? options.iteration_limit : 10 * dims * dims + 16;
    if (lp.sense == LPSense::Minimize) {
        SimplexEngine engine(lp.objective, lp.matrix, lp.rhs, limit);
        return engine.run();
    }
    // maximize C.y s.t. M^T y <= L, y >= 0 becomes
    // minimize (-C).y s.t. (-M^T) y >= -L, y >= 0.
    const std::size_t rows = lp.cols();
    const std::size_t cols = lp.rows();
    std::vector<RatVec> negated_transpose(rows, RatVec(cols));
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        for (std::size_t j = 0; j < lp.cols(); ++j) negated_transpose[j][i] = -lp.matrix[i][j];
    }
    RatVec cost(cols);
    for (std::size_t i = 0; i < cols; ++i) cost[i] = -lp.rhs[i];
    RatVec rhs(rows);
    for (std::size_t j = 0; j < rows; ++j) rhs[j] = -lp.objective[j];
    SimplexEngine engine(cost, negated_transpose, rhs, limit);
    LPOutcome converted = engine.run();
    if (converted.optimal()) {
        LPOptimal opt = converted.as_optimal();
        opt.objective = -opt.objective;
        return LPOutcome{std::move(opt), converted.iterations};
    }
    return converted;
}

bool verify_strong_duality(const LPOutcome& primal, const LPOutcome& dual) {
    if (!primal.optimal() || !dual.optimal()) {
        fail(ErrorCode::NotOptimal, "strong duality check requires two optimal outcomes");
    }
    return primal.as_optimal().objective == dual.as_optimal().objective;
}

}  // namespace bell
