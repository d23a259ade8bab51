#include "bell/quantum.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "bell/errors.hpp"

namespace bell {

namespace {

using Complex = std::complex<double>;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool hermitian_within(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

ComplexMatrix identity_matrix(std::size_t dimension) {
    if (dimension == 0) fail(ErrorCode::DimensionMismatch, "identity of dimension zero");
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dimension),
                                   static_cast<Eigen::Index>(dimension));
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors) {
    if (factors.empty()) fail(ErrorCode::DimensionMismatch, "tensor product of no factors");
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

ComplexMatrix singlet_state() {
    Eigen::VectorXcd psi(4);
    const double r = 1.0 / std::sqrt(2.0);
    psi << 0, r, -r, 0;
    return psi * psi.adjoint();
}

ComplexMatrix werner_state(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        fail(ErrorCode::OutOfRange, "visibility must lie in [0, 1]");
    }
    return visibility * singlet_state() + (1.0 - visibility) * 0.25 * identity_matrix(4);
}

void validate_setup(const QuantumSetup& setup, const Scenario& scenario, double tol) {
    const std::size_t parties = scenario.party_count();
    if (setup.observables.size() != parties || setup.local_dimensions.size() != parties) {
        fail(ErrorCode::DimensionMismatch, "setup does not cover every party");
    }

    std::size_t joint = 1;
    for (std::size_t p = 0; p < parties; ++p) {
        if (setup.local_dimensions[p] == 0) {
            fail(ErrorCode::DimensionMismatch, "local dimension zero for party " + party_symbol(p));
        }
        joint *= setup.local_dimensions[p];
        if (setup.observables[p].size() != scenario.measurement_count(p)) {
            fail(ErrorCode::DimensionMismatch,
                 "party " + party_symbol(p) + " needs " +
                     std::to_string(scenario.measurement_count(p)) + " observables, got " +
                     std::to_string(setup.observables[p].size()));
        }
    }
    if (setup.state.rows() != setup.state.cols() ||
        setup.state.rows() != static_cast<Eigen::Index>(joint)) {
        fail(ErrorCode::DimensionMismatch,
             "state dimension does not match the product of local dimensions");
    }

    if (!hermitian_within(setup.state, tol)) {
        fail(ErrorCode::NotAState, "density operator is not Hermitian");
    }
    if (std::abs(setup.state.trace().real() - 1.0) > tol ||
        std::abs(setup.state.trace().imag()) > tol) {
        fail(ErrorCode::NotAState, "density operator trace is not 1");
    }
    {
        const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(setup.state);
        if (solver.eigenvalues().minCoeff() < -tol) {
            fail(ErrorCode::NotAState, "density operator has a negative eigenvalue");
        }
    }

    for (std::size_t p = 0; p < parties; ++p) {
        const Eigen::Index dim = static_cast<Eigen::Index>(setup.local_dimensions[p]);
        for (std::size_t k = 0; k < setup.observables[p].size(); ++k) {
            const ComplexMatrix& observable = setup.observables[p][k];
            if (observable.rows() != dim || observable.cols() != dim) {
                fail(ErrorCode::DimensionMismatch,
                     "observable " + party_symbol(p) + std::to_string(k + 1) + " has the wrong dimension");
            }
            if (!hermitian_within(observable, tol)) {
                fail(ErrorCode::NotHermitian, "observable " + party_symbol(p) + std::to_string(k + 1) +
                                                  " is not Hermitian");
            }
            const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(observable);
            const auto& outcomes = scenario.outcomes(p, k);
            for (Eigen::Index e = 0; e < solver.eigenvalues().size(); ++e) {
                const double eigenvalue = solver.eigenvalues()(e);
                double best = std::numeric_limits<double>::infinity();
                for (const Rational& outcome : outcomes) {
                    best = std::min(best, std::abs(eigenvalue - to_double(outcome)));
                }
                if (best > tol) {
                    fail(ErrorCode::SpectrumMismatch,
                         "observable " + party_symbol(p) + std::to_string(k + 1) + " has eigenvalue " +
                             std::to_string(eigenvalue) + " outside the declared outcome set");
                }
            }
        }
    }
}

std::vector<double> correlations_from_quantum(const QuantumSetup& setup, const Scenario& scenario) {
    validate_setup(setup, scenario);
    std::vector<double> values;
    values.reserve(scenario.setting_count());
    for (const SettingTuple& tuple : enumerate_settings(scenario)) {
        std::vector<ComplexMatrix> factors;
        factors.reserve(scenario.party_count());
        for (std::size_t p = 0; p < scenario.party_count(); ++p) {
            const std::size_t choice = tuple.choices[p];
            if (choice == SettingTuple::identity) {
                factors.push_back(identity_matrix(setup.local_dimensions[p]));
            } else {
                factors.push_back(setup.observables[p][choice - 1]);
            }
        }
        values.push_back((setup.state * tensor(factors)).trace().real());
    }
    return values;
}

Rational rationalize(double x, unsigned long max_denominator) {
    if (max_denominator < 1) fail(ErrorCode::OutOfRange, "max denominator must be at least 1");
    if (!std::isfinite(x)) fail(ErrorCode::OutOfRange, "cannot rationalize a non-finite value");

    const bool negative = x < 0;
    double y = std::fabs(x);

    // Convergent recurrence p_n = a_n p_{n-1} + p_{n-2}; stop before the
    // denominator passes the cap.
    BigInt p_prev(1), q_prev(0);
    BigInt p(static_cast<long long>(std::floor(y))), q(1);
    double frac = y - std::floor(y);
    for (int iteration = 0; iteration < 64 && frac > 0.0; ++iteration) {
        y = 1.0 / frac;
        if (y > 9e18) break;
        const double a_floor = std::floor(y);
        const BigInt a(static_cast<long long>(a_floor));
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        if (q_next > max_denominator) break;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        frac = y - a_floor;
    }

    Rational result = Rational(p) / Rational(q);
    if (negative) result = -result;
    return result;
}

CorrelationVector rationalize(const std::vector<double>& values, unsigned long max_denominator,
                              const Scenario& scenario) {
    if (values.empty() || std::fabs(values.front() - 1.0) > 1e-9) {
        fail(ErrorCode::BadNormalization, "normalization entry must sit within 1e-9 of 1");
    }
    CorrelationVector correlations;
    correlations.entries.reserve(values.size());
    correlations.entries.emplace_back(1);
    for (std::size_t i = 1; i < values.size(); ++i) {
        correlations.entries.push_back(rationalize(values[i], max_denominator));
    }
    try {
        validate_correlations(scenario, correlations.entries);
    } catch (const Error& error) {
        if (error.code() == ErrorCode::MagnitudeExceedsBound) {
            fail(ErrorCode::OutOfRange, error.what());
        }
        throw;
    }
    return correlations;
}

}  // namespace bell
