#include <doctest.h>

#include <random>

#include "bell/errors.hpp"
#include "bell/lhv.hpp"
#include "bell/scenario.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using bell::BellInequality;
using bell::CorrelationVector;
using bell::ErrorCode;
using bell::JointDistribution;
using bell::ModelMatrix;
using bell::Rational;
using bell::RatVec;
using bell::Scenario;
using bell::VerdictKind;
using testutil::code_of;

namespace {

CorrelationVector pr_box(const Scenario& chsh) {
  // All marginals zero; <A1B1> = <A1B2> = <A2B1> = 1, <A2B2> = -1.
  RatVec entries(9, Rational(0));
  entries[0] = 1;
  entries[4] = 1;   // A1 B1
  entries[5] = 1;   // A1 B2
  entries[7] = 1;   // A2 B1
  entries[8] = -1;  // A2 B2
  return bell::validate_correlations(chsh, std::move(entries));
}

}  // namespace

TEST_CASE("classical_bound matches the independent strategy sweep") {
  const Scenario s = oracle::chsh();
  const ModelMatrix m = ModelMatrix::build(s);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    RatVec q(8);
    for (auto& v : q) v = oracle::random_rational(rng, 6, 5);
    CHECK(bell::classical_bound(q, m) == oracle::classical_bound(q, s));
  }
  // The CHSH expression A1B1 + A1B2 + A2B1 - A2B2 has classical bound 2.
  // Coefficient i belongs to setting i+1; the correlator settings sit at
  // indices 3, 4, 6, 7.
  const RatVec chsh_q{Rational(0), Rational(0), Rational(0), Rational(1),
                      Rational(1), Rational(0), Rational(1), Rational(-1)};
  CHECK(bell::classical_bound(chsh_q, m) == Rational(2));
  CHECK(code_of([&] { bell::classical_bound(RatVec(5), m); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("PR box is nonlocal with margin exactly 2") {
  const Scenario s = oracle::chsh();
  const ModelMatrix m = ModelMatrix::build(s);
  const auto verdict = bell::check_local_realism(m, pr_box(s));
  REQUIRE(verdict.kind == VerdictKind::Nonlocal);
  REQUIRE(verdict.inequality.has_value());
  CHECK(!verdict.distribution.has_value());
  CHECK(verdict.margin == Rational(2));
  CHECK(verdict.inequality->bound == Rational(2));
  // The reported inequality must be valid: its bound is attained by some
  // strategy and exceeded by none (by construction of classical_bound, which
  // the oracle reproduces).
  CHECK(verdict.inequality->bound ==
        oracle::classical_bound(verdict.inequality->coefficients, s));
  // And the PR box violates it by exactly the margin.
  CHECK(bell::evaluate_inequality(*verdict.inequality, pr_box(s)) == verdict.margin);
}

TEST_CASE("uniform strategy mixtures are local with exact reconstruction") {
  const Scenario s = oracle::chsh();
  const ModelMatrix m = ModelMatrix::build(s);
  RatVec entries(9, Rational(0));
  entries[0] = 1;
  const auto correlations = bell::validate_correlations(s, std::move(entries));
  const auto verdict = bell::check_local_realism(m, correlations);
  REQUIRE(verdict.local());
  REQUIRE(verdict.distribution.has_value());
  CHECK(!verdict.inequality.has_value());
  bell::validate_distribution(*verdict.distribution);
  CHECK(bell::reconstruct_correlations(*verdict.distribution, m) == correlations);
}

TEST_CASE("deterministic strategy columns are local vertices") {
  const Scenario s = oracle::dichotomic(2, 2);
  const ModelMatrix m = ModelMatrix::build(s);
  for (std::size_t c : {std::size_t{0}, std::size_t{7}, std::size_t{15}}) {
    const auto correlations = bell::validate_correlations(s, m.column(c));
    const auto verdict = bell::check_local_realism(m, correlations);
    REQUIRE(verdict.local());
    CHECK(bell::reconstruct_correlations(*verdict.distribution, m) == correlations);
  }
}

TEST_CASE("random mixtures of strategies are always local and reproduced exactly") {
  const Scenario s = oracle::dichotomic(2, 2);
  const ModelMatrix m = ModelMatrix::build(s);
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const RatVec p = oracle::random_distribution(rng, m.cols());
    const auto correlations = bell::validate_correlations(s, m.multiply(p));
    const auto verdict = bell::check_local_realism(m, correlations);
    REQUIRE(verdict.local());
    CHECK(bell::reconstruct_correlations(*verdict.distribution, m) == correlations);
    CHECK(verdict.margin == Rational(0));
  }
}

TEST_CASE("scenario overload equals matrix overload and honors the column cap") {
  const Scenario s = oracle::chsh();
  const auto via_scenario = bell::check_local_realism(s, pr_box(s));
  CHECK(via_scenario.kind == VerdictKind::Nonlocal);
  CHECK(via_scenario.margin == Rational(2));
  CHECK(code_of([&] { bell::check_local_realism(s, pr_box(s), 8); }) == ErrorCode::SizeLimit);
}

TEST_CASE("infeasible feasibility program becomes NonlocalUnbounded with a valid inequality") {
  // One party, one measurement with outcomes {-1, -2}: <A1> must lie in
  // [-2, -1], so +1 is not just outside the local polytope but outside the
  // affine span reachable by any distribution, making the LP infeasible.
  const Scenario s = Scenario::create({{{Rational(-1), Rational(-2)}}});
  const ModelMatrix m = ModelMatrix::build(s);
  const auto correlations = bell::validate_correlations(s, {Rational(1), Rational(1)});
  const auto verdict = bell::check_local_realism(m, correlations);
  REQUIRE(verdict.kind == VerdictKind::NonlocalUnbounded);
  REQUIRE(verdict.inequality.has_value());
  CHECK(verdict.margin > 0);
  CHECK(verdict.inequality->origin == BellInequality::Origin::DualRay);
  CHECK(verdict.inequality->bound ==
        oracle::classical_bound(verdict.inequality->coefficients, s));
  CHECK(bell::evaluate_inequality(*verdict.inequality, correlations) == verdict.margin);
}

TEST_CASE("reported inequality never cuts off any deterministic strategy") {
  // Validity in the strict sense: M~^T q <= q0 across every strategy column.
  const Scenario s = oracle::chsh();
  const ModelMatrix m = ModelMatrix::build(s);
  const auto verdict = bell::check_local_realism(m, pr_box(s));
  REQUIRE(verdict.inequality.has_value());
  const auto columns = oracle::strategy_columns(s);
  for (const auto& column : columns) {
    Rational value(0);
    for (std::size_t i = 0; i < verdict.inequality->coefficients.size(); ++i) {
      value += verdict.inequality->coefficients[i] * column[i + 1];
    }
    CHECK(value <= verdict.inequality->bound);
  }
}

TEST_CASE("extract_bell_inequality validates its certificate") {
  const ModelMatrix m = ModelMatrix::build(oracle::chsh());
  SUBCASE("negative entries are rejected") {
    RatVec bad(9, Rational(0));
    bad[3] = -1;
    CHECK(code_of([&] {
            bell::extract_bell_inequality(bad, m, bell::CertificateKind::DualOptimum);
          }) == ErrorCode::InvalidCertificate);
  }
  SUBCASE("dual feasibility is enforced for DualOptimum") {
    RatVec bad(9, Rational(0));
    bad[0] = 50;  // M^T Q has entries 50 > M^T 1 = 1 per column... far out.
    CHECK(code_of([&] {
            bell::extract_bell_inequality(bad, m, bell::CertificateKind::DualOptimum);
          }) == ErrorCode::InvalidCertificate);
  }
  SUBCASE("ray condition is enforced for DualRay") {
    RatVec bad(9, Rational(0));
    bad[0] = 1;  // M^T y = 1 per column, not <= 0.
    CHECK(code_of([&] {
            bell::extract_bell_inequality(bad, m, bell::CertificateKind::DualRay);
          }) == ErrorCode::InvalidCertificate);
  }
  SUBCASE("wrong length reports DimensionMismatch") {
    CHECK(code_of([&] {
            bell::extract_bell_inequality(RatVec(4), m, bell::CertificateKind::DualRay);
          }) == ErrorCode::DimensionMismatch);
  }
  SUBCASE("a valid dual optimum round-trips with shifted coefficients") {
    // Q = 1 everywhere satisfies M^T Q = M^T 1 with equality; coefficients
    // become Q[1..] - 1 = 0 and the bound is the trivial 0.
    const auto ineq = bell::extract_bell_inequality(RatVec(9, Rational(1)), m,
                                                    bell::CertificateKind::DualOptimum);
    CHECK(ineq.coefficients == RatVec(8, Rational(0)));
    CHECK(ineq.bound == Rational(0));
  }
}

TEST_CASE("canonical_scaled fixes the representative of the scale class") {
  const ModelMatrix m = ModelMatrix::build(oracle::chsh());
  RatVec q(8, Rational(0));
  q[4] = Rational(4);
  q[5] = Rational(-2);
  const auto raw = bell::make_inequality(q, m);
  const auto canonical = bell::canonical_scaled(raw, m);
  CHECK(canonical.coefficients[4] == Rational(1));
  CHECK(canonical.coefficients[5] == Rational(-1, 2));
  CHECK(canonical.bound == oracle::classical_bound(canonical.coefficients, m.scenario()));
  // Scaling preserves the sign of the violation for any correlations.
  const auto zero = bell::canonical_scaled(bell::make_inequality(RatVec(8, Rational(0)), m), m);
  CHECK(zero.coefficients == RatVec(8, Rational(0)));
}

TEST_CASE("evaluate_inequality checks dimensions") {
  const ModelMatrix m = ModelMatrix::build(oracle::chsh());
  const auto ineq = bell::make_inequality(RatVec(8, Rational(0)), m);
  CorrelationVector short_vector{RatVec(4, Rational(0))};
  CHECK(code_of([&] { bell::evaluate_inequality(ineq, short_vector); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("validate_distribution rejects bad probability vectors") {
  CHECK(code_of([] {
          bell::validate_distribution(JointDistribution{{Rational(1, 2), Rational(-1, 2)}});
        }) == ErrorCode::InvalidCertificate);
  CHECK(code_of([] {
          bell::validate_distribution(JointDistribution{{Rational(1, 2), Rational(1, 4)}});
        }) == ErrorCode::InvalidCertificate);
  CHECK_NOTHROW(bell::validate_distribution(JointDistribution{{Rational(1, 2), Rational(1, 2)}}));
}

TEST_CASE("lhv_feasibility_program has the documented shape") {
  const Scenario s = oracle::dichotomic(2, 1);
  const ModelMatrix m = ModelMatrix::build(s);
  RatVec entries{Rational(1), Rational(0), Rational(0), Rational(0)};
  const auto correlations = bell::validate_correlations(s, entries);
  const auto lp = bell::lhv_feasibility_program(m, correlations);
  CHECK(lp.sense == bell::LPSense::Minimize);
  CHECK(lp.rows() == m.rows());
  CHECK(lp.cols() == m.cols());
  CHECK(lp.rhs == entries);
  CHECK(lp.objective == m.column_sums());
  lp.validate();
  // Local iff the optimum equals 1 . C; here C sums to 1 and the all-zero
  // correlations are local, so the optimum must be exactly 1.
  const auto out = bell::solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.as_optimal().objective == bell::sum(entries));
}
