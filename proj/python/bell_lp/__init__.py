"""Exact linear-programming test for local realism.

Decides whether a vector of measurement correlations admits a local
hidden-variable model. A LOCAL verdict carries an exact reproducing joint
distribution; a NONLOCAL verdict carries a violated Bell inequality with its
classical bound and violation margin. The complete, finite set of Bell
inequalities for a scenario is available through enumerate_complete_set.

All probabilities, correlators, coefficients, and bounds are exact rationals
(python fractions.Fraction at this boundary); only the optional quantum
helpers use floating point, bridged through rationalize().
"""

from bell_lp._core import (
    BellError,
    BellInequality,
    CompleteBellMember,
    CompleteBellSet,
    ModelMatrix,
    Scenario,
    Verdict,
    VerdictKind,
    check_local_realism,
    classical_bound,
    correlations_from_quantum,
    enumerate_complete_set,
    evaluate_inequality,
    is_complete_against,
    pauli_x,
    pauli_y,
    pauli_z,
    rationalize,
    rationalize_correlations,
    reconstruct_correlations,
    singlet_state,
    werner_state,
    __version__,
)

__all__ = [
    "BellError",
    "BellInequality",
    "CompleteBellMember",
    "CompleteBellSet",
    "ModelMatrix",
    "Scenario",
    "Verdict",
    "VerdictKind",
    "check_local_realism",
    "classical_bound",
    "correlations_from_quantum",
    "enumerate_complete_set",
    "evaluate_inequality",
    "is_complete_against",
    "pauli_x",
    "pauli_y",
    "pauli_z",
    "rationalize",
    "rationalize_correlations",
    "reconstruct_correlations",
    "singlet_state",
    "werner_state",
    "__version__",
]
