#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bell/rational.hpp"
#include "bell/scenario.hpp"

namespace bell {

using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance for Hermiticity, positivity, trace, and spectrum checks.
inline constexpr double quantum_tolerance = 1e-8;

ComplexMatrix identity_matrix(std::size_t dimension);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Kronecker product of the factors in party order. Throws
/// Error{DimensionMismatch} when the list is empty.
ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors);

/// Projector onto the two-qubit singlet (|01> - |10>)/sqrt(2).
ComplexMatrix singlet_state();

/// v |psi-><psi-| + (1 - v) I/4. Throws Error{OutOfRange} unless 0 <= v <= 1.
ComplexMatrix werner_state(double visibility);

/// Density operator plus one Hermitian observable per (party, measurement).
struct QuantumSetup {
    ComplexMatrix state;
    std::vector<std::vector<ComplexMatrix>> observables;  // [party][measurement]
    std::vector<std::size_t> local_dimensions;            // one per party
};

/// Shape checks throw Error{DimensionMismatch}; a non-Hermitian, non-PSD, or
/// wrongly normalized state throws Error{NotAState}; a non-Hermitian
/// observable Error{NotHermitian}; an observable whose eigenvalues stray
/// farther than tol from the declared outcome set Error{SpectrumMismatch}.
void validate_setup(const QuantumSetup& setup, const Scenario& scenario,
                    double tol = quantum_tolerance);

/// entry(s) = Re Tr(state . tensor of per-party observables), identity for
/// IDENTITY choices; one entry per setting tuple in enumeration order.
/// Validates the setup first.
std::vector<double> correlations_from_quantum(const QuantumSetup& setup, const Scenario& scenario);

/// Best rational approximation with denominator <= max_denominator, via
/// continued-fraction convergents. |result - x| <= 1/max_denominator and the
/// map is the identity on ratios already within reach. Throws
/// Error{OutOfRange} for max_denominator < 1 or non-finite x.
Rational rationalize(double x, unsigned long max_denominator);

/// Applies rationalize entrywise; entry 0 must sit within 1e-9 of 1 (else
/// Error{BadNormalization}) and is pinned to exactly 1. A magnitude-bound
/// violation after rounding surfaces as Error{OutOfRange}.
CorrelationVector rationalize(const std::vector<double>& values, unsigned long max_denominator,
                              const Scenario& scenario);

}  // namespace bell
