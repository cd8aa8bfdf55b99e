"""Gram factorization of positive semidefinite matrices."""

import numpy as np

from .errors import NotPSD
from .linalg import hermitian_eigensystem

# Relative PSD slack, plus an absolute floor so that matrices that are
# themselves at rounding scale (such as I - L*L for unitary L) are not
# rejected for eigenvalues of order -1e-16.
PSD_REL_TOL = 1e-9
PSD_ABS_TOL = 1e-12


def vectors_with_gram(q):
    """Factor a Hermitian PSD matrix Q as X*X with X square.

    The columns x_1, ..., x_n of the returned matrix X satisfy
    <x_i, x_j> = Q[i, j].  Eigenvalues more negative than
    ``-(PSD_REL_TOL * lambda_max + PSD_ABS_TOL)`` raise NotPSD;
    eigenvalues inside that band are clamped to zero.
    """
    es = hermitian_eigensystem(q)
    w = es.eigenvalues
    lam_max = max(float(w[-1]), 0.0)
    floor = PSD_REL_TOL * lam_max + PSD_ABS_TOL
    if float(w[0]) < -floor:
        raise NotPSD(
            f"eigenvalue {w[0]:.3e} below PSD tolerance {-floor:.3e}")
    w = np.clip(w, 0.0, None)
    return np.sqrt(w)[:, None] * es.eigenvectors.conj().T
