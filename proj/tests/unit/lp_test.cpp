#include <doctest.h>

#include <random>

#include "bell/errors.hpp"
#include "bell/lp.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using bell::LinearProgram;
using bell::LPOutcome;
using bell::LPSense;
using bell::Rational;
using bell::RatVec;
using testutil::code_of;

namespace {

Rational dot(const RatVec& a, const RatVec& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RatVec matvec(const std::vector<RatVec>& m, const RatVec& x) {
  RatVec out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(dot(row, x));
  return out;
}

RatVec transpose_matvec(const std::vector<RatVec>& m, const RatVec& y) {
  RatVec out(m.empty() ? 0 : m[0].size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += m[i][j] * y[i];
  return out;
}

/// Feasibility and exact complementary slackness of a primal/dual pair for
/// min c.x st Ax >= b, x >= 0.
void check_optimal_pair(const LinearProgram& lp, const bell::LPOptimal& opt) {
  const RatVec& x = opt.solution;
  const RatVec& y = opt.dual;
  REQUIRE(x.size() == lp.cols());
  REQUIRE(y.size() == lp.rows());
  const RatVec ax = matvec(lp.matrix, x);
  const RatVec aty = transpose_matvec(lp.matrix, y);
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(x[j] >= 0);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] >= 0);
  for (std::size_t i = 0; i < ax.size(); ++i) CHECK(ax[i] >= lp.rhs[i]);
  for (std::size_t j = 0; j < aty.size(); ++j) CHECK(aty[j] <= lp.objective[j]);
  CHECK(dot(lp.objective, x) == opt.objective);
  CHECK(dot(lp.rhs, y) == opt.objective);  // strong duality, exactly
  // Complementary slackness: y_i (Ax - b)_i = 0 and x_j (c - A^T y)_j = 0.
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] * (ax[i] - lp.rhs[i]) == 0);
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(x[j] * (lp.objective[j] - aty[j]) == 0);
}

}  // namespace

TEST_CASE("textbook minimization solves exactly") {
  // min x + y  st  x + 2y >= 4, 3x + y >= 6, x,y >= 0.
  // Constraint intersection (8/5, 6/5) gives the optimum 14/5: the objective
  // gradient (1,1) lies inside the cone of the two constraint normals, so the
  // optimum sits at the intersection point; solving the 2x2 system by hand
  // gives x = 8/5, y = 6/5.
  LinearProgram lp;
  lp.sense = LPSense::Minimize;
  lp.objective = {Rational(1), Rational(1)};
  lp.matrix = {{Rational(1), Rational(2)}, {Rational(3), Rational(1)}};
  lp.rhs = {Rational(4), Rational(6)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.optimal());
  const auto& opt = out.as_optimal();
  CHECK(opt.objective == Rational(14, 5));
  CHECK(opt.solution == RatVec{Rational(8, 5), Rational(6, 5)});
  check_optimal_pair(lp, opt);

  const LPOutcome dual_out = bell::solve(bell::dual_of(lp));
  REQUIRE(dual_out.optimal());
  CHECK(dual_out.as_optimal().objective == Rational(14, 5));
  CHECK(bell::verify_strong_duality(out, dual_out));
}

TEST_CASE("maximization sense solves the dual form directly") {
  // max 4u + 6v  st  u + 3v <= 1, 2u + v <= 1, u,v >= 0  (dual of the above).
  LinearProgram lp;
  lp.sense = LPSense::Maximize;
  lp.objective = {Rational(1), Rational(1)};
  lp.matrix = {{Rational(1), Rational(2)}, {Rational(3), Rational(1)}};
  lp.rhs = {Rational(4), Rational(6)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.as_optimal().objective == Rational(14, 5));
  // Dual of the Maximize program is the Minimize one; its dual field must be
  // primally feasible.
  const RatVec& x = out.as_optimal().dual;
  REQUIRE(x.size() == 2);
  const RatVec ax = matvec(lp.matrix, x);
  CHECK(ax[0] >= lp.rhs[0]);
  CHECK(ax[1] >= lp.rhs[1]);
}

TEST_CASE("infeasible program yields a Farkas certificate") {
  // -x >= 1 with x >= 0 is impossible.
  LinearProgram lp;
  lp.objective = {Rational(1)};
  lp.matrix = {{Rational(-1)}};
  lp.rhs = {Rational(1)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.infeasible());
  const RatVec& y = out.as_infeasible().certificate;
  REQUIRE(y.size() == 1);
  CHECK(y[0] >= 0);
  const RatVec yt_m = transpose_matvec(lp.matrix, y);
  for (const Rational& v : yt_m) CHECK(v <= 0);
  CHECK(dot(y, lp.rhs) > 0);
}

TEST_CASE("infeasible system with several rows yields a valid certificate") {
  // x + y >= 3 together with -x - y >= -1 (i.e. x + y <= 1).
  LinearProgram lp;
  lp.objective = {Rational(0), Rational(0)};
  lp.matrix = {{Rational(1), Rational(1)}, {Rational(-1), Rational(-1)}};
  lp.rhs = {Rational(3), Rational(-1)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.infeasible());
  const RatVec& y = out.as_infeasible().certificate;
  for (const Rational& v : y) CHECK(v >= 0);
  for (const Rational& v : transpose_matvec(lp.matrix, y)) CHECK(v <= 0);
  CHECK(dot(y, lp.rhs) > 0);
}

TEST_CASE("unbounded program reports a feasible point and improving ray") {
  // min -x  st  x - y >= -1, x,y >= 0: growing x keeps the constraint
  // satisfied, so the objective is unbounded below.
  LinearProgram lp;
  lp.objective = {Rational(-1), Rational(0)};
  lp.matrix = {{Rational(1), Rational(-1)}};
  lp.rhs = {Rational(-1)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.unbounded());
  const auto& ub = out.as_unbounded();
  const RatVec ap = matvec(lp.matrix, ub.point);
  for (std::size_t i = 0; i < ap.size(); ++i) CHECK(ap[i] >= lp.rhs[i]);
  for (const Rational& v : ub.point) CHECK(v >= 0);
  const RatVec ar = matvec(lp.matrix, ub.ray);
  for (const Rational& v : ar) CHECK(v >= 0);  // ray keeps constraints satisfied
  for (const Rational& v : ub.ray) CHECK(v >= 0);
  CHECK(dot(lp.objective, ub.ray) < 0);  // and strictly improves the objective
}

TEST_CASE("degenerate constraints terminate under Bland's rule") {
  // Many copies of the same constraint create degenerate vertices; Bland's
  // rule must still terminate at the optimum.
  LinearProgram lp;
  lp.objective = {Rational(1), Rational(2)};
  lp.matrix.assign(6, {Rational(1), Rational(1)});
  lp.matrix.push_back({Rational(2), Rational(2)});
  lp.matrix.push_back({Rational(1), Rational(0)});
  lp.rhs = {Rational(1), Rational(1), Rational(1), Rational(1),
            Rational(1), Rational(1), Rational(2), Rational(0)};

  const LPOutcome out = bell::solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.as_optimal().objective == Rational(1));  // x = (1, 0)
  check_optimal_pair(lp, out.as_optimal());
}

TEST_CASE("iteration limit raises IterationLimit") {
  LinearProgram lp;
  lp.objective = {Rational(1), Rational(1)};
  lp.matrix = {{Rational(1), Rational(2)}, {Rational(3), Rational(1)}};
  lp.rhs = {Rational(4), Rational(6)};
  bell::SolveOptions options;
  options.iteration_limit = 1;
  CHECK(code_of([&] { bell::solve(lp, options); }) == bell::ErrorCode::IterationLimit);
}

TEST_CASE("validate rejects inconsistent dimensions") {
  LinearProgram lp;
  lp.objective = {Rational(1)};
  lp.matrix = {{Rational(1), Rational(2)}};
  lp.rhs = {Rational(4)};
  CHECK(code_of([&] { lp.validate(); }) == bell::ErrorCode::DimensionMismatch);
  lp.objective = {Rational(1), Rational(1)};
  lp.rhs = {Rational(4), Rational(5)};
  CHECK(code_of([&] { lp.validate(); }) == bell::ErrorCode::DimensionMismatch);
  lp.rhs = {Rational(4)};
  CHECK_NOTHROW(lp.validate());
}

TEST_CASE("verify_strong_duality demands optimal outcomes") {
  LinearProgram feasible;
  feasible.objective = {Rational(1)};
  feasible.matrix = {{Rational(1)}};
  feasible.rhs = {Rational(1)};
  LinearProgram infeasible = feasible;
  infeasible.matrix = {{Rational(-1)}};

  const LPOutcome good = bell::solve(feasible);
  const LPOutcome bad = bell::solve(infeasible);
  CHECK(code_of([&] { bell::verify_strong_duality(good, bad); }) ==
        bell::ErrorCode::NotOptimal);
  CHECK(bell::verify_strong_duality(good, bell::solve(bell::dual_of(feasible))));
}

TEST_CASE("random feasible programs satisfy exact strong duality") {
  // Feasible by construction: pick x0 >= 0 and set b = A x0 - slack with
  // slack >= 0; bounded because the objective is nonnegative entrywise.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> rows_dist(1, 6);
  std::uniform_int_distribution<std::size_t> cols_dist(1, 8);
  std::uniform_int_distribution<int> small(0, 5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t rows = rows_dist(rng);
    const std::size_t cols = cols_dist(rng);
    LinearProgram lp;
    lp.matrix.assign(rows, RatVec(cols));
    for (auto& row : lp.matrix)
      for (auto& v : row) v = oracle::random_rational(rng, 8, 10);
    RatVec x0(cols);
    for (auto& v : x0) v = Rational(small(rng), 1 + small(rng));
    lp.rhs = matvec(lp.matrix, x0);
    for (auto& v : lp.rhs) v -= Rational(small(rng), 3);
    lp.objective.assign(cols, Rational(0));
    for (auto& v : lp.objective) v = Rational(small(rng), 1 + small(rng));

    const LPOutcome primal = bell::solve(lp);
    REQUIRE(primal.optimal());
    check_optimal_pair(lp, primal.as_optimal());
    const LPOutcome dual = bell::solve(bell::dual_of(lp));
    REQUIRE(dual.optimal());
    CHECK(bell::verify_strong_duality(primal, dual));
  }
}
