"""Post-selected unitary realizations of weakly contracting operators.

A linear operator L on C^n with largest singular value at most one
embeds in a 2n x 2n unitary

    U = [ L  * ]
        [ X  * ]

with X*X = I - L*L, acting on the system tensored with a qubit ancilla.
Preparing the ancilla in state 0, applying U, and post-selecting the
ancilla on 0 applies L to the system.  The guaranteed success
probability of that post-selection over all unit inputs is the smallest
eigenvalue of L*L; rescaling L by 1/sqrt(lambda_max) maximizes it at
lambda_min / lambda_max.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadWeights,
    NonFinite,
    NotContracting,
    NotNormalized,
    NotUnitary,
    NotUnitaryMember,
    ZeroOperator,
)
from .gram import vectors_with_gram
from .linalg import hermitian_eigensystem, max_abs, orthonormal_completion

CONTRACTION_TOL = 1e-9
UNITARY_TOL = 1e-8
STATE_NORM_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-10


@dataclass(frozen=True)
class DilationResult:
    """A unitary realization of a (possibly rescaled) operator.

    unitary realizes scale_c * L literally: its top-left n x n block is
    scale_c * L.  lambda_min and lambda_max are the extreme eigenvalues
    of L*L for the unscaled operator, and gsp is the guaranteed success
    probability of the realization over all unit inputs.
    """

    unitary: np.ndarray
    scale_c: complex
    lambda_min: float
    lambda_max: float
    gsp: float


@dataclass(frozen=True)
class PostSelectOutcome:
    """Post-selected system state (unnormalized) and success probability."""

    state: np.ndarray
    success_prob: float


def _as_operator(l):
    l = np.asarray(l, dtype=complex)
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise ValueError(f"operator must be square, got shape {l.shape}")
    if not np.isfinite(l.view(float)).all():
        raise NonFinite("operator contains non-finite entries")
    return l


def contraction_spectrum(l):
    """Extreme eigenvalues of L*L and the weak-contraction flag.

    Returns (lambda_min, lambda_max, weakly_contracting), where the flag
    allows lambda_max <= 1 + CONTRACTION_TOL.
    """
    l = _as_operator(l)
    if max_abs(l) == 0.0:
        raise ZeroOperator("the zero operator")
    w = hermitian_eigensystem(l.conj().T @ l).eigenvalues
    lam_min = max(float(w[0]), 0.0)
    lam_max = max(float(w[-1]), 0.0)
    if lam_max == 0.0:
        raise ZeroOperator("operator is zero to working precision")
    return lam_min, lam_max, lam_max <= 1.0 + CONTRACTION_TOL


def dilate_literal(l):
    """One-ancilla unitary dilation of a weakly contracting operator.

    The returned 2n x 2n unitary has top-left block exactly L and
    bottom-left block X with X*X = I - L*L; its last n columns are the
    greedy orthonormal completion, so dilating the identity yields the
    identity.
    """
    l = _as_operator(l)
    _, _, weakly = contraction_spectrum(l)
    if not weakly:
        raise NotContracting("largest singular value exceeds one")
    n = l.shape[0]
    x = vectors_with_gram(np.eye(n) - l.conj().T @ l)
    return orthonormal_completion(np.vstack([l, x]), 2 * n)


def exact_realize(l, optimal=True):
    """Unitary realization of L, optimally rescaled by default.

    With optimal=True the operator is rescaled by c = 1/sqrt(lambda_max)
    so the guaranteed success probability reaches its maximum
    lambda_min / lambda_max.  With optimal=False the operator is
    realized literally when lambda_max <= 1 (c = 1, gsp lambda_min) and
    rescaled as above otherwise.
    """
    l = _as_operator(l)
    lam_min, lam_max, _ = contraction_spectrum(l)
    if optimal or lam_max > 1.0:
        c = 1.0 / np.sqrt(lam_max)
        gsp = lam_min / lam_max
    else:
        c = 1.0
        gsp = lam_min
    u = dilate_literal(c * l)
    return DilationResult(unitary=u, scale_c=complex(c),
                          lambda_min=lam_min, lambda_max=lam_max, gsp=gsp)


def rho(l):
    """Success-probability ratio lambda_min / lambda_max of L*L.

    Scale invariant; zero exactly when L is singular; one exactly when L
    is proportional to a unitary.
    """
    lam_min, lam_max, _ = contraction_spectrum(l)
    return lam_min / lam_max


def apply_postselected(u, psi):
    """Run one post-selection branch of a realization on a unit state.

    Prepares (psi, 0) on system plus ancilla, applies the 2n x 2n
    unitary, and projects the ancilla on 0.  Returns the unnormalized
    system state together with the success probability, its squared
    norm.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] % 2:
        raise ValueError(f"expected an even square matrix, got {u.shape}")
    n = u.shape[0] // 2
    if max_abs(u.conj().T @ u - np.eye(2 * n)) > UNITARY_TOL:
        raise NotUnitary("matrix is not unitary within tolerance")
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != n:
        raise ValueError(f"state has length {psi.size}, expected {n}")
    if abs(np.linalg.norm(psi) - 1.0) > STATE_NORM_TOL:
        raise NotNormalized("input state is not unit length")
    state = u[:n, :n] @ psi
    prob = min(float(np.linalg.norm(state) ** 2), 1.0)
    return PostSelectOutcome(state=state, success_prob=prob)


def realize_convex_combination(unitaries, weights):
    """Literal realization of a convex combination of unitaries.

    Any convex combination L = sum w_i U_i of unitaries is weakly
    contracting, so it admits a literal one-ancilla realization; the
    guaranteed success probability is lambda_min of L*L.
    """
    unitaries = [np.asarray(u, dtype=complex) for u in unitaries]
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or len(unitaries) != weights.size or not weights.size:
        raise BadWeights("weights must match the unitaries one to one")
    if np.any(weights < 0.0):
        raise BadWeights("weights must be nonnegative")
    if abs(float(weights.sum()) - 1.0) > WEIGHT_SUM_TOL:
        raise BadWeights("weights must sum to one")
    n = unitaries[0].shape[0]
    eye = np.eye(n)
    for u in unitaries:
        if u.shape != (n, n):
            raise BadWeights("unitaries must share one dimension")
        if max_abs(u.conj().T @ u - eye) > UNITARY_TOL:
            raise NotUnitaryMember("a member is not unitary within tolerance")
    l = sum(w * u for w, u in zip(weights, unitaries))
    lam_min, lam_max, weakly = contraction_spectrum(l)
    if not weakly:
        raise NotContracting(
            "combination exceeds the unit ball beyond tolerance")
    return DilationResult(unitary=dilate_literal(l), scale_c=1.0 + 0.0j,
                          lambda_min=lam_min, lambda_max=lam_max, gsp=lam_min)
