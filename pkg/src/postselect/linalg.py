"""Shared dense linear algebra helpers.

Thin, contract-checked wrappers around LAPACK (via numpy) plus a greedy
orthonormal completion.  All routines accept anything convertible to a
complex ndarray and return float64/complex128 arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotHermitian, NotOrthonormal

HERMITIAN_TOL = 1e-9
ORTHONORMAL_TOL = 1e-9
NULLSPACE_TOL = 1e-9


def max_abs(a):
    """Largest entry magnitude of an array, 0.0 for an empty array."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def _as_complex_matrix(m, name="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.isfinite(m.view(float)).all():
        raise NonFinite(f"{name} contains non-finite entries")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors[:, i] is the unit
    eigenvector for eigenvalues[i].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigensystem(m):
    """Eigenvalues and eigenvectors of a Hermitian matrix.

    The input must be square, finite, and Hermitian within
    ``HERMITIAN_TOL`` relative to its largest entry.  Eigenvalues come
    back ascending with an orthonormal eigenvector basis.
    """
    m = _as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    # absolute floor: differences of unit-scale Hermitian expressions
    # (I - L*L and friends) leave rounding-level asymmetry on matrices
    # that are themselves nearly zero
    if max_abs(m - m.conj().T) > HERMITIAN_TOL * max_abs(m) + 1e-12:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    # symmetrize so the decomposition reflects the whole input, not one
    # triangle
    h = (m + m.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def orthonormal_completion(partial, dim):
    """Complete k orthonormal columns to a dim x dim unitary matrix.

    Completion columns are drawn greedily from the standard basis: at
    each step the basis vector with the largest residual against the
    current span is orthonormalized and appended (ties broken by lowest
    index).  Completing zero columns therefore yields the identity.
    """
    dim = int(dim)
    if dim < 1:
        raise ValueError("dim must be positive")
    if partial is None:
        partial = np.zeros((dim, 0), dtype=complex)
    partial = _as_complex_matrix(partial, "partial")
    if partial.shape[0] != dim:
        raise ValueError(
            f"partial has {partial.shape[0]} rows, expected {dim}")
    k = partial.shape[1]
    if k > dim:
        raise ValueError("more columns than rows")
    if k:
        gram = partial.conj().T @ partial
        if max_abs(gram - np.eye(k)) > ORTHONORMAL_TOL:
            raise NotOrthonormal("partial columns are not orthonormal")

    basis = partial.copy()
    for _ in range(dim - k):
        residual = np.eye(dim, dtype=complex) - basis @ basis.conj().T
        norms = np.linalg.norm(residual, axis=0)
        j = int(np.argmax(norms))
        col = residual[:, j] / norms[j]
        # one re-orthogonalization pass keeps the completion orthonormal
        # to near machine precision
        col = col - basis @ (basis.conj().T @ col)
        col = col / np.linalg.norm(col)
        basis = np.column_stack([basis, col])
    return basis


def nullspace(a, tol_rel=NULLSPACE_TOL):
    """Orthonormal basis of the numerical null space of a matrix.

    Right singular vectors whose singular value is at most
    ``tol_rel * sigma_max`` span the returned space.  Returns a list of
    1-d complex vectors (possibly empty).
    """
    a = _as_complex_matrix(a)
    if not 0 < tol_rel < 1:
        raise ValueError("tol_rel must lie in (0, 1)")
    rows, cols = a.shape
    if cols == 0:
        return []
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    sigma_max = float(s[0]) if s.size else 0.0
    thresh = tol_rel * sigma_max
    rank = int(np.sum(s > thresh))
    return [vh[i].conj() for i in range(rank, cols)]
