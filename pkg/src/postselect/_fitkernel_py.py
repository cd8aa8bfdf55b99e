"""Pure Python fit kernel.

Reference implementation of the minimax objective and the coordinate
pattern search used by the suite fitter.  ``postselect._fitkernel`` is
a Cython translation with identical semantics; ``postselect.kernel``
selects between the two at import time.

Parameter layout for a suite with ell domain points in dimension n:

* ``x[0 : 2 n^2]``: candidate operator L, row-major, re/im interleaved.
* ``x[2 n^2 + i 2(n-1) + 2k]`` (and the following entry): re/im of the
  k-th tangent coefficient perturbing domain point i inside the frame
  ``frames[i]``, whose n-1 rows are orthonormal and orthogonal to
  ``dom[i]``.

The objective is the worst Fubini-Study misfit over all 2 ell
coordinates of the induced candidate suite: domain point i moves to
``dom[i] + sum_k c_ik frames[i, k]`` and its range image is the
projective action of L on the moved point.  Candidates that annihilate
a moved point score ``BIG``; candidates whose operator is numerically
singular (Hadamard-relative determinant below ``DET_FLOOR``) incur an
additive barrier penalty, keeping the witness invertible.
"""

import numpy as np

IMPLEMENTATION = "python"

BIG = 100.0
DEGENERATE_IMAGE_TOL = 2e-10
DET_FLOOR = 1e-12
DET_PENALTY = 10.0


def fit_objective(dom, ran, frames, x):
    """Worst-coordinate Fubini-Study misfit of the candidate given by x."""
    ell, n = dom.shape
    m = 2 * n * n
    l = (x[0:m:2] + 1j * x[1:m:2]).reshape(n, n)
    lmax = float(np.max(np.abs(l)))
    if lmax == 0.0:
        return BIG
    t = x[m:]
    coeff = (t[0::2] + 1j * t[1::2]).reshape(ell, n - 1)
    u = dom + np.einsum("ik,ikc->ic", coeff, frames)
    nu = np.sqrt(np.sum(u.real ** 2 + u.imag ** 2, axis=1))
    ov_d = np.abs(np.sum(dom.conj() * u, axis=1)) / nu
    w = u @ l.T
    nw = np.sqrt(np.sum(w.real ** 2 + w.imag ** 2, axis=1))
    if np.any(nw <= DEGENERATE_IMAGE_TOL * lmax * nu):
        return BIG
    ov_r = np.abs(np.sum(ran.conj() * w, axis=1)) / nw
    worst = np.arccos(np.clip(np.minimum(ov_d, ov_r), 0.0, 1.0))
    value = float(np.max(worst))
    denom = float(np.prod(np.linalg.norm(l, axis=1)))
    if denom == 0.0 or abs(np.linalg.det(l)) < DET_FLOOR * denom:
        value += DET_PENALTY
    return value


def pattern_search(dom, ran, frames, x0, step0, decay, min_step, max_iters,
                   target, dirs, n_probes):
    """Coordinate pattern search with optional random direction probes.

    Tries +/- step along every coordinate each iteration (keeping any
    improvement immediately), then ``n_probes`` probes along the rows of
    ``dirs`` consumed cyclically.  The step halves (by ``decay``) after
    an iteration without improvement; the search stops when the step
    falls below ``min_step``, when the objective drops below ``target``
    (pass a negative target to disable), or after ``max_iters``
    iterations.  Returns ``(x, f, iterations, converged)``.
    """
    x = np.array(x0, dtype=float)
    f = fit_objective(dom, ran, frames, x)
    if 0.0 <= target and f < target:
        return x, f, 0, True
    dim = x.size
    n_pool = 0 if dirs is None else dirs.shape[0]
    step = float(step0)
    pool_pos = 0
    iters = 0
    converged = False
    for _ in range(max_iters):
        iters += 1
        improved = False
        for d in range(dim):
            old = x[d]
            x[d] = old + step
            ft = fit_objective(dom, ran, frames, x)
            if ft < f:
                f = ft
                improved = True
                continue
            x[d] = old - step
            ft = fit_objective(dom, ran, frames, x)
            if ft < f:
                f = ft
                improved = True
                continue
            x[d] = old
        for _ in range(n_probes if n_pool else 0):
            v = dirs[pool_pos % n_pool]
            pool_pos += 1
            xt = x + step * v
            ft = fit_objective(dom, ran, frames, xt)
            if ft < f:
                x = xt
                f = ft
                improved = True
                continue
            xt = x - step * v
            ft = fit_objective(dom, ran, frames, xt)
            if ft < f:
                x = xt
                f = ft
                improved = True
        if 0.0 <= target and f < target:
            converged = True
            break
        if not improved:
            step *= decay
            if step < min_step:
                converged = True
                break
    return x, f, iters, converged
