"""Kraus channel view of a one-ancilla realization.

Embedding the system with the ancilla in state 0, applying the 2n x 2n
realization unitary, and reading the ancilla as a measurement gives a
two-branch quantum channel: branch 0 carries the realized operator (the
top-left block of the unitary), branch 1 the complementary block below
it.  Trace preservation is exactly the unitarity relation of the left
block column.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotUnitary
from .linalg import hermitian_eigensystem, max_abs

KRAUS_COMPLETENESS_TOL = 1e-10
UNITARY_TOL = 1e-8
DENSITY_TOL = 1e-10
DENSITY_PSD_TOL = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    """Completely positive trace-preserving map in Kraus form.

    The operators must satisfy sum K_i* K_i = I on the input space
    within KRAUS_COMPLETENESS_TOL.
    """

    kraus: tuple
    n_in: int
    n_out: int

    def __init__(self, kraus, n_in=None, n_out=None):
        kraus = tuple(np.asarray(k, dtype=complex) for k in kraus)
        if not kraus:
            raise ValueError("a channel needs at least one Kraus operator")
        rows, cols = kraus[0].shape
        n_in = cols if n_in is None else int(n_in)
        n_out = rows if n_out is None else int(n_out)
        for k in kraus:
            if k.shape != (n_out, n_in):
                raise DimensionMismatch(
                    f"Kraus operator of shape {k.shape}, expected "
                    f"{(n_out, n_in)}")
        total = sum(k.conj().T @ k for k in kraus)
        if max_abs(total - np.eye(n_in)) > KRAUS_COMPLETENESS_TOL:
            raise ValueError("Kraus operators do not sum to the identity")
        object.__setattr__(self, "kraus", kraus)
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "n_out", n_out)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite state."""

    rho: np.ndarray

    def __init__(self, rho):
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"expected a square matrix, got {rho.shape}")
        if max_abs(rho - rho.conj().T) > DENSITY_TOL:
            raise ValueError("state is not Hermitian within tolerance")
        if abs(complex(np.trace(rho)).real - 1.0) > DENSITY_TOL:
            raise ValueError("state trace differs from one")
        w = hermitian_eigensystem(rho).eigenvalues
        if float(w[0]) < -DENSITY_PSD_TOL:
            raise ValueError("state has a negative eigenvalue")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def pure(cls, psi):
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(psi)
        if nrm == 0.0:
            raise ValueError("zero vector is not a state")
        psi = psi / nrm
        return cls(np.outer(psi, psi.conj()))

    @property
    def dim(self):
        return self.rho.shape[0]


def build_kraus(u):
    """Two-branch channel of a realization unitary.

    Branch 0 is the top-left n x n block (the realized operator),
    branch 1 the bottom-left block; together they are trace preserving
    because the first n columns of the unitary are orthonormal.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] % 2:
        raise ValueError(f"expected an even square matrix, got {u.shape}")
    n = u.shape[0] // 2
    if max_abs(u.conj().T @ u - np.eye(2 * n)) > UNITARY_TOL:
        raise NotUnitary("matrix is not unitary within tolerance")
    return KrausChannel([u[:n, :n].copy(), u[n:, :n].copy()])


def apply_channel(channel, state):
    """Image sum_i K_i rho K_i* of a state under the channel."""
    if state.dim != channel.n_in:
        raise DimensionMismatch(
            f"state dimension {state.dim}, channel input {channel.n_in}")
    out = sum(k @ state.rho @ k.conj().T for k in channel.kraus)
    return DensityMatrix(out)


def postselect_branch(channel, index, state):
    """Unnormalized branch outcome and its probability.

    Returns (K_i rho K_i*, trace of it).  For a channel built from a
    realization unitary, branch 0 on a pure state reproduces the
    post-selected application of the realized operator, with the same
    success probability.
    """
    if not 0 <= index < len(channel.kraus):
        raise ValueError(f"branch {index} out of range")
    if state.dim != channel.n_in:
        raise DimensionMismatch(
            f"state dimension {state.dim}, channel input {channel.n_in}")
    k = channel.kraus[index]
    sub = k @ state.rho @ k.conj().T
    return sub, float(complex(np.trace(sub)).real)
