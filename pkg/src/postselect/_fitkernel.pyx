# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fit kernel.

Cython translation of :mod:`postselect._fitkernel_py` with identical
semantics; see that module for the parameter layout and the algorithm.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport acos, sqrt

cnp.import_array()

IMPLEMENTATION = "cython"

BIG = 100.0
DEGENERATE_IMAGE_TOL = 2e-10
DET_FLOOR = 1e-12
DET_PENALTY = 10.0

cdef double _BIG = 100.0
cdef double _DEG_TOL = 2e-10
cdef double _DET_FLOOR = 1e-12
cdef double _DET_PENALTY = 10.0


cdef double _rel_det(double[::1] x, Py_ssize_t n,
                     double complex[:, ::1] lu) noexcept:
    """Hadamard-relative determinant magnitude |det L| / prod row norms,
    via partial-pivot LU on the scratch matrix; 0.0 for a zero row."""
    cdef Py_ssize_t r, c, k, piv
    cdef double denom = 1.0, rn, best, mag, adet = 1.0
    cdef double complex z, factor
    for r in range(n):
        rn = 0.0
        for c in range(n):
            z = x[2 * (r * n + c)] + 1j * x[2 * (r * n + c) + 1]
            lu[r, c] = z
            rn += z.real * z.real + z.imag * z.imag
        denom *= sqrt(rn)
    if denom == 0.0:
        return 0.0
    for k in range(n):
        best = 0.0
        piv = k
        for r in range(k, n):
            mag = lu[r, k].real * lu[r, k].real \
                + lu[r, k].imag * lu[r, k].imag
            if mag > best:
                best = mag
                piv = r
        if best == 0.0:
            return 0.0
        if piv != k:
            for c in range(n):
                z = lu[k, c]
                lu[k, c] = lu[piv, c]
                lu[piv, c] = z
        adet *= sqrt(best)
        for r in range(k + 1, n):
            factor = lu[r, k] / lu[k, k]
            for c in range(k + 1, n):
                lu[r, c] = lu[r, c] - factor * lu[k, c]
    return adet / denom


cdef double _objective(double complex[:, ::1] dom, double complex[:, ::1] ran,
                       double complex[:, :, ::1] frames, double[::1] x,
                       double complex[::1] u, double complex[::1] w,
                       double complex[:, ::1] lu) noexcept:
    cdef Py_ssize_t ell = dom.shape[0]
    cdef Py_ssize_t n = dom.shape[1]
    cdef Py_ssize_t i, k, r, c, off
    cdef double lmax = 0.0, m, nu, nw, ov, worst = 0.0, fs
    cdef double complex z, acc

    for r in range(n * n):
        m = sqrt(x[2 * r] * x[2 * r] + x[2 * r + 1] * x[2 * r + 1])
        if m > lmax:
            lmax = m
    if lmax == 0.0:
        return _BIG

    for i in range(ell):
        for c in range(n):
            u[c] = dom[i, c]
        off = 2 * n * n + i * 2 * (n - 1)
        for k in range(n - 1):
            z = x[off + 2 * k] + 1j * x[off + 2 * k + 1]
            for c in range(n):
                u[c] = u[c] + z * frames[i, k, c]
        nu = 0.0
        for c in range(n):
            nu += u[c].real * u[c].real + u[c].imag * u[c].imag
        nu = sqrt(nu)
        acc = 0.0
        for c in range(n):
            acc = acc + dom[i, c].conjugate() * u[c]
        ov = sqrt(acc.real * acc.real + acc.imag * acc.imag) / nu
        if ov > 1.0:
            ov = 1.0
        fs = acos(ov)
        if fs > worst:
            worst = fs
        for r in range(n):
            acc = 0.0
            for c in range(n):
                z = x[2 * (r * n + c)] + 1j * x[2 * (r * n + c) + 1]
                acc = acc + z * u[c]
            w[r] = acc
        nw = 0.0
        for r in range(n):
            nw += w[r].real * w[r].real + w[r].imag * w[r].imag
        nw = sqrt(nw)
        if nw <= _DEG_TOL * lmax * nu:
            return _BIG
        acc = 0.0
        for r in range(n):
            acc = acc + ran[i, r].conjugate() * w[r]
        ov = sqrt(acc.real * acc.real + acc.imag * acc.imag) / nw
        if ov > 1.0:
            ov = 1.0
        fs = acos(ov)
        if fs > worst:
            worst = fs
    if _rel_det(x, n, lu) < _DET_FLOOR:
        worst += _DET_PENALTY
    return worst


def fit_objective(dom, ran, frames, x):
    """Worst-coordinate Fubini-Study misfit of the candidate given by x."""
    dom = np.ascontiguousarray(dom, dtype=complex)
    ran = np.ascontiguousarray(ran, dtype=complex)
    frames = np.ascontiguousarray(frames, dtype=complex)
    x = np.ascontiguousarray(x, dtype=float)
    n = dom.shape[1]
    u = np.empty(n, dtype=complex)
    w = np.empty(n, dtype=complex)
    lu = np.empty((n, n), dtype=complex)
    return _objective(dom, ran, frames, x, u, w, lu)


def pattern_search(dom, ran, frames, x0, step0, decay, min_step, max_iters,
                   target, dirs, n_probes):
    """Coordinate pattern search with optional random direction probes.

    Matches postselect._fitkernel_py.pattern_search; returns
    ``(x, f, iterations, converged)``.
    """
    dom = np.ascontiguousarray(dom, dtype=complex)
    ran = np.ascontiguousarray(ran, dtype=complex)
    frames = np.ascontiguousarray(frames, dtype=complex)
    x_arr = np.array(x0, dtype=float)
    n = dom.shape[1]
    u_arr = np.empty(n, dtype=complex)
    w_arr = np.empty(n, dtype=complex)
    lu_arr = np.empty((n, n), dtype=complex)
    if dirs is None:
        dirs = np.zeros((0, x_arr.size), dtype=float)
    dirs = np.ascontiguousarray(dirs, dtype=float)
    trial_arr = np.empty_like(x_arr)

    cdef double complex[:, ::1] dom_v = dom
    cdef double complex[:, ::1] ran_v = ran
    cdef double complex[:, :, ::1] frames_v = frames
    cdef double[::1] x = x_arr
    cdef double[::1] trial = trial_arr
    cdef double[:, ::1] dirs_v = dirs
    cdef double complex[::1] u = u_arr
    cdef double complex[::1] w = w_arr
    cdef double complex[:, ::1] lu = lu_arr

    cdef double step = step0, tgt = target, dec = decay, floor = min_step
    cdef double f, ft, old
    cdef Py_ssize_t dim = x_arr.size
    cdef Py_ssize_t n_pool = dirs.shape[0]
    cdef Py_ssize_t pool_pos = 0, d, p, j
    cdef int iters = 0, max_it = max_iters, probes = n_probes
    cdef bint improved, converged = False

    f = _objective(dom_v, ran_v, frames_v, x, u, w, lu)
    if 0.0 <= tgt and f < tgt:
        return x_arr, f, 0, True

    for _ in range(max_it):
        iters += 1
        improved = False
        for d in range(dim):
            old = x[d]
            x[d] = old + step
            ft = _objective(dom_v, ran_v, frames_v, x, u, w, lu)
            if ft < f:
                f = ft
                improved = True
                continue
            x[d] = old - step
            ft = _objective(dom_v, ran_v, frames_v, x, u, w, lu)
            if ft < f:
                f = ft
                improved = True
                continue
            x[d] = old
        if n_pool > 0:
            for p in range(probes):
                for j in range(dim):
                    trial[j] = x[j] + step * dirs_v[pool_pos % n_pool, j]
                ft = _objective(dom_v, ran_v, frames_v, trial, u, w, lu)
                if ft < f:
                    for j in range(dim):
                        x[j] = trial[j]
                    f = ft
                    improved = True
                    pool_pos += 1
                    continue
                for j in range(dim):
                    trial[j] = x[j] - step * dirs_v[pool_pos % n_pool, j]
                ft = _objective(dom_v, ran_v, frames_v, trial, u, w, lu)
                if ft < f:
                    for j in range(dim):
                        x[j] = trial[j]
                    f = ft
                    improved = True
                pool_pos += 1
        if 0.0 <= tgt and f < tgt:
            converged = True
            break
        if not improved:
            step *= dec
            if step < floor:
                converged = True
                break
    return x_arr, f, iters, bool(converged)
