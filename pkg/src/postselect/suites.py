"""Finite transformations of projective space and their realizability.

A suite is a finite transformation: ell distinct domain points of
CP^(n-1) paired with ell range points.  A suite is exactly realizable
when some nonzero operator L maps every domain representative onto the
matching range ray without annihilating it; it is realizable by a
projective-linear map when such an L exists invertible.

This module classifies single-qubit suites (n = 2) into exactly
realizable by a projective-linear map, exactly realizable only
singularly, on the border of the projective-linear class (the limit of
realizable suites without being one), or not even infinitely
approximable.  It also constructs the border approximating sequences,
searches for exact realizers through the null space of the
interpolation constraints, and fits arbitrary suites by minimax
Fubini-Study misfit over perturbed exactly realizable suites.
"""

import enum
import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernel
from .errors import (
    BadOptions,
    InfiniteRangePoint,
    InvalidSuite,
    NotBorder,
    WrongDimension,
    WrongDomain,
)
from .linalg import max_abs, nullspace, orthonormal_completion
from .projective import (
    Moebius,
    ProjectivePoint,
    RiemannPoint,
    apply_ql,
    cross_ratio,
    from_riemann,
    fs_distance,
    in_general_position,
    pl_from_correspondence,
    to_riemann,
)

SUITE_DISTINCT_TOL = 1e-9

_EXACT_COMBO_SEED = 20200828
_EXACT_ATTEMPTS = 50
_MU_FLOOR = 1e-7
_EXACT_VERIFY_TOL = 1e-7

_DIRECTION_POOL = 64
_MAX_SUBSET_STARTS = 6


class Suite:
    """A finite transformation: paired domain and range points.

    Domain points must be pairwise distinct (Fubini-Study distance above
    ``SUITE_DISTINCT_TOL``); range points may coincide.
    """

    __slots__ = ("_domain", "_range")

    def __init__(self, domain, range_points):
        domain = tuple(domain)
        range_points = tuple(range_points)
        if not domain:
            raise InvalidSuite("a suite needs at least one point pair")
        if len(domain) != len(range_points):
            raise InvalidSuite(
                f"{len(domain)} domain points vs {len(range_points)} range "
                "points")
        n = domain[0].dim
        if n < 2:
            raise InvalidSuite("points must live in CP^1 or higher")
        for p in (*domain, *range_points):
            if not isinstance(p, ProjectivePoint):
                raise InvalidSuite("suite entries must be projective points")
            if p.dim != n:
                raise InvalidSuite("points of mixed dimension")
        for i in range(len(domain)):
            for j in range(i + 1, len(domain)):
                if fs_distance(domain[i], domain[j]) <= SUITE_DISTINCT_TOL:
                    raise InvalidSuite(
                        f"domain points {i} and {j} coincide")
        self._domain = domain
        self._range = range_points

    @property
    def domain(self):
        return self._domain

    @property
    def range_points(self):
        return self._range

    @property
    def n(self):
        """Representative dimension (points live in CP^(n-1))."""
        return self._domain[0].dim

    @property
    def ell(self):
        return len(self._domain)

    @classmethod
    def from_values(cls, domain_values, range_values):
        """Single-qubit suite from sphere values.

        Values may be finite numbers, the string ``"inf"`` or
        ``math.inf`` for the point at infinity, RiemannPoint instances,
        or ProjectivePoint instances of CP^1.
        """
        return cls([_point_from_value(v) for v in domain_values],
                   [_point_from_value(v) for v in range_values])

    def __repr__(self):
        return f"Suite(n={self.n}, ell={self.ell})"


def _point_from_value(v):
    if isinstance(v, ProjectivePoint):
        return v
    if isinstance(v, RiemannPoint):
        return from_riemann(v)
    if isinstance(v, str):
        if v == "inf":
            return from_riemann(RiemannPoint.infinity())
        raise ValueError(f"unrecognized sphere value {v!r}")
    if isinstance(v, (int, float)) and math.isinf(v):
        return from_riemann(RiemannPoint.infinity())
    return from_riemann(RiemannPoint.from_value(complex(v)))


class SingleQubitClass(enum.Enum):
    """Trichotomy verdicts for single-qubit suites."""

    EXACTLY_REALIZABLE_PL = "ExactlyRealizablePL"
    EXACTLY_REALIZABLE_SINGULAR = "ExactlyRealizableSingular"
    BORDER_OF_PL = "BorderOfPL"
    NOT_INFINITELY_APPROXIMABLE = "NotInfinitelyApproximable"


def _range_clusters(sigma):
    """Indices of coincident range points, grouped in order of first
    appearance; coincidence at the suite distinctness tolerance."""
    clusters = []
    for idx, p in enumerate(sigma.range_points):
        for cluster in clusters:
            if fs_distance(p, sigma.range_points[cluster[0]]) \
                    <= SUITE_DISTINCT_TOL:
                cluster.append(idx)
                break
        else:
            clusters.append([idx])
    return clusters


def _is_border_pattern(clusters, ell):
    return (ell >= 3 and len(clusters) == 2
            and max(len(c) for c in clusters) == ell - 1)


def classify_single_qubit(sigma):
    """Trichotomy classification of a single-qubit suite.

    A constant range (or a two-point suite with coincident range) is
    exactly realizable only by singular operators.  A range with ell - 1
    coincident points and one outlier (ell >= 3) is the border case:
    approximable to any precision but not realizable.  An all-distinct
    range is realizable by a projective-linear map exactly when the
    interpolation constraints admit a realizer.  Everything else cannot
    even be approximated.
    """
    if sigma.n != 2:
        raise WrongDimension("classification applies to CP^1 suites")
    clusters = _range_clusters(sigma)
    ell = sigma.ell
    if len(clusters) == 1:
        # one pair is realized bijectively; two or more pairs sharing a
        # range point force a singular realizer
        if ell == 1:
            return SingleQubitClass.EXACTLY_REALIZABLE_PL
        return SingleQubitClass.EXACTLY_REALIZABLE_SINGULAR
    if len(clusters) == ell:
        if ell <= 3 or exact_realize_suite(sigma) is not None:
            return SingleQubitClass.EXACTLY_REALIZABLE_PL
        return SingleQubitClass.NOT_INFINITELY_APPROXIMABLE
    if _is_border_pattern(clusters, ell):
        return SingleQubitClass.BORDER_OF_PL
    return SingleQubitClass.NOT_INFINITELY_APPROXIMABLE


def exact_realize_suite(sigma):
    """An operator realizing the suite exactly, or None.

    Stacks the interpolation constraints L v_i = mu_i w_i into a linear
    system over (vec L, mu) and searches the null space for a solution
    with every mu_i nonzero, trying basis vectors first and then random
    complex combinations (deterministically seeded).  The returned
    operator is scaled to unit largest entry and verified to map every
    domain point within Fubini-Study 1e-7 of its range point.
    """
    n, ell = sigma.n, sigma.ell
    dom = np.array([p.coords for p in sigma.domain])
    ran = np.array([p.coords for p in sigma.range_points])
    a = np.zeros((n * ell, n * n + ell), dtype=complex)
    for i in range(ell):
        for r in range(n):
            row = i * n + r
            a[row, r * n:(r + 1) * n] = dom[i]
            a[row, n * n + i] = -ran[i, r]
    basis = nullspace(a)
    if not basis:
        return None
    rng = np.random.default_rng(_EXACT_COMBO_SEED)
    candidates = list(basis)
    while len(candidates) < _EXACT_ATTEMPTS:
        c = rng.standard_normal(len(basis)) \
            + 1j * rng.standard_normal(len(basis))
        candidates.append(np.tensordot(c, basis, axes=(0, 0)))
    for u in candidates:
        mus = u[n * n:]
        mu_max = float(np.max(np.abs(mus)))
        if mu_max == 0.0 or float(np.min(np.abs(mus))) < _MU_FLOOR * mu_max:
            continue
        l = u[:n * n].reshape(n, n)
        scale = max_abs(l)
        if scale == 0.0:
            continue
        l = l / scale
        for p, q in zip(sigma.domain, sigma.range_points):
            img = apply_ql(l, p)
            if img is None or fs_distance(img, q) > _EXACT_VERIFY_TOL:
                break
        else:
            return l
    return None


def _border_operator(sigma, rep_idx, outlier_idx, k):
    """The 2x2 operator f^(-1) (g/k) f for the border construction.

    f sends the repeated range point p to 0 and the outlier range point
    q to infinity; g sends the f-image of the outlier's domain point to
    infinity; dividing the top row of g by k pulls every other image
    toward 0, hence (through f^(-1)) toward p, while the outlier's
    domain point keeps mapping exactly to q.
    """
    p = to_riemann(sigma.range_points[rep_idx])
    q = to_riemann(sigma.range_points[outlier_idx])
    f = Moebius([[p.b, -p.a], [q.b, -q.a]])
    x = f(to_riemann(sigma.domain[outlier_idx]))
    g_over_k = np.array([[x.a.conjugate() / k, x.b.conjugate() / k],
                         [x.b, -x.a]])
    return f.inverse().matrix @ g_over_k @ f.matrix


def border_sequence(sigma, k):
    """The k-th term of the approximating sequence of a border suite.

    For a suite classified BorderOfPL, returns the exactly realizable
    suite with the same domain whose range is the image of the domain
    under f^(-1) (g/k) f; its non-outlier range points lie within
    O(1/k) of the repeated point and the outlier coordinate is
    reproduced exactly.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("k must be a positive integer")
    if classify_single_qubit(sigma) is not SingleQubitClass.BORDER_OF_PL:
        raise NotBorder("suite is not on the border of the "
                        "projective-linear class")
    clusters = _range_clusters(sigma)
    big = max(clusters, key=len)
    outlier_idx = next(c[0] for c in clusters if c is not big)
    m = _border_operator(sigma, big[0], outlier_idx, float(k))
    new_range = [apply_ql(m, p) for p in sigma.domain]
    if any(img is None for img in new_range):
        raise NotBorder("border operator degenerated on a domain point")
    return Suite(domain=sigma.domain, range_points=new_range)


@dataclass(frozen=True)
class FitOptions:
    """Knobs for the multistart pattern-search fit.

    target, when set, stops the search as soon as the objective drops
    strictly below it.  probes counts extra random-direction trials per
    iteration on top of the coordinate sweep.
    """

    restarts: int = 20
    max_iters: int = 500
    seed: int = 0
    initial_step: float = 0.1
    step_decay: float = 0.5
    min_step: float = 1e-8
    target: float | None = None
    probes: int = 4


@dataclass(frozen=True)
class FitResult:
    """Best exactly realizable suite found near a target suite.

    The operator L realizes tau: tau pairs the perturbed domain points
    with their images under L.  max_fs is the worst Fubini-Study
    distance between corresponding coordinates of the target suite and
    tau, over both halves.
    """

    L: np.ndarray
    tau: Suite
    max_fs: float
    iterations: int
    restarts_used: int
    converged: bool


def _validate_options(opts):
    if opts.restarts < 1 or opts.max_iters < 1 or opts.probes < 0:
        raise BadOptions("restarts and max_iters must be positive")
    if not (opts.initial_step > 0 and opts.min_step > 0):
        raise BadOptions("steps must be positive")
    if not 0 < opts.step_decay < 1:
        raise BadOptions("step_decay must lie in (0, 1)")
    if opts.target is not None and not opts.target > 0:
        raise BadOptions("target must be positive when set")


def _tangent_frame(p):
    """Orthonormal basis of the orthogonal complement of a point's
    representative, as rows."""
    basis = orthonormal_completion(p.coords[:, None], p.dim)
    return basis[:, 1:].T.copy()


def _informed_starts(sigma):
    """Deterministic warm starts: an exact realizer when one exists,
    border operators for border patterns, and correspondence
    interpolants through subsets of the point pairs."""
    starts = []
    exact = exact_realize_suite(sigma)
    if exact is not None:
        starts.append(exact)
    n, ell = sigma.n, sigma.ell
    clusters = _range_clusters(sigma)
    if n == 2 and _is_border_pattern(clusters, ell):
        big = max(clusters, key=len)
        outlier_idx = next(c[0] for c in clusters if c is not big)
        for k in (100.0, 1000.0):
            starts.append(_border_operator(sigma, big[0], outlier_idx, k))
    count = 0
    for subset in itertools.combinations(range(ell), n + 1):
        if count >= _MAX_SUBSET_STARTS:
            break
        ps = [sigma.domain[i] for i in subset]
        qs = [sigma.range_points[i] for i in subset]
        if in_general_position(ps, n) and in_general_position(qs, n):
            starts.append(pl_from_correspondence(ps, qs))
            count += 1
    return starts


def _pack_start(l, dim, n):
    x0 = np.zeros(dim)
    scale = max_abs(l)
    flat = np.asarray(l, dtype=complex).ravel() / scale
    x0[0:2 * n * n:2] = flat.real
    x0[1:2 * n * n:2] = flat.imag
    return x0


def fit_suite(sigma, opts=None):
    """Best minimax approximation of a suite by exactly realizable
    suites.

    Runs a coordinate pattern search from deterministic warm starts
    followed by random operators, one search per restart, each with its
    own random-direction pool derived from opts.seed.  The returned
    FitResult holds the best candidate whose perturbed suite is valid;
    its max_fs bounds the distance from the target suite to the exactly
    realizable class from above.
    """
    if opts is None:
        opts = FitOptions()
    _validate_options(opts)
    n, ell = sigma.n, sigma.ell
    dom = np.ascontiguousarray([p.coords for p in sigma.domain])
    ran = np.ascontiguousarray([p.coords for p in sigma.range_points])
    frames = np.ascontiguousarray([_tangent_frame(p) for p in sigma.domain])
    dim = 2 * n * n + 2 * (n - 1) * ell
    target = -1.0 if opts.target is None else float(opts.target)

    starts = _informed_starts(sigma)
    attempts = []
    total_iters = 0
    for r in range(opts.restarts):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=opts.seed, spawn_key=(r,)))
        if r < len(starts):
            l0 = starts[r]
        else:
            l0 = rng.standard_normal((n, n)) \
                + 1j * rng.standard_normal((n, n))
        x0 = _pack_start(l0, dim, n)
        dirs = rng.standard_normal((_DIRECTION_POOL, dim))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        x, f, iters, conv = kernel.pattern_search(
            dom, ran, frames, x0, opts.initial_step, opts.step_decay,
            opts.min_step, opts.max_iters, target, dirs, opts.probes)
        total_iters += iters
        attempts.append((f, r, x, conv))
        if 0.0 <= target and f < target:
            break

    for f, r, x, conv in sorted(attempts, key=lambda t: (t[0], t[1])):
        result = _build_result(sigma, dom, frames, x, f, total_iters,
                               len(attempts), conv)
        if result is not None:
            return result
    raise RuntimeError("every fit candidate degenerated")


def _build_result(sigma, dom, frames, x, f, iterations, restarts_used,
                  converged):
    if f >= kernel.BIG:
        return None
    n, ell = sigma.n, sigma.ell
    m = 2 * n * n
    l = (x[0:m:2] + 1j * x[1:m:2]).reshape(n, n)
    l = l / max_abs(l)
    coeff = (x[m::2] + 1j * x[m + 1::2]).reshape(ell, n - 1)
    new_dom = []
    new_ran = []
    for i in range(ell):
        p = ProjectivePoint(dom[i] + coeff[i] @ frames[i])
        img = apply_ql(l, p)
        if img is None:
            return None
        new_dom.append(p)
        new_ran.append(img)
    try:
        tau = Suite(domain=new_dom, range_points=new_ran)
    except InvalidSuite:
        return None
    max_fs = 0.0
    for old, new in zip((*sigma.domain, *sigma.range_points),
                        (*new_dom, *new_ran)):
        max_fs = max(max_fs, fs_distance(old, new))
    return FitResult(L=l, tau=tau, max_fs=max_fs,
                     iterations=iterations, restarts_used=restarts_used,
                     converged=converged)


@dataclass(frozen=True)
class ApproxResult:
    """Outcome of an approximability query.

    verdict is "yes" with a certifying witness, or "unknown" (the
    search is incomplete, so there is no "no")."""

    verdict: str
    witness: FitResult | None


def is_eps_approximable(sigma, eps, opts=None):
    """Whether perturbing every coordinate by less than eps can make the
    suite exactly realizable.

    Sound but incomplete: "yes" comes with a witness suite strictly
    within eps in every coordinate; failure to find one answers
    "unknown".  The fit stops as soon as a witness is certified.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if opts is None:
        opts = FitOptions()
    opts = replace(opts, target=float(eps))
    fit = fit_suite(sigma, opts)
    if fit.max_fs < eps:
        return ApproxResult(verdict="yes", witness=fit)
    return ApproxResult(verdict="unknown", witness=None)


@dataclass(frozen=True)
class VarietyCheck:
    """Cross-ratio equality residuals pinning a suite to the closure of
    the realizable class."""

    on_variety: bool
    residuals: tuple


def pl_variety_check(sigma, tol=1e-8):
    """Cross-ratio necessity test for single-qubit suites.

    For every i >= 4 the cross-ratio of range points (1, 2, 3, i) must
    match the cross-ratio of the corresponding domain points whenever
    the suite lies in the closure of the exactly realizable class.
    Residuals are cross-multiplied homogeneous mismatches; suites with
    at most three pairs pass vacuously.
    """
    if sigma.n != 2:
        raise WrongDimension("variety check applies to CP^1 suites")
    if sigma.ell <= 3:
        return VarietyCheck(on_variety=True, residuals=())
    a = [to_riemann(p) for p in sigma.domain]
    b = [to_riemann(p) for p in sigma.range_points]
    residuals = []
    for i in range(3, sigma.ell):
        ca = cross_ratio(a[0], a[1], a[2], a[i])
        cb = cross_ratio(b[0], b[1], b[2], b[i])
        residuals.append(abs(ca.a * cb.b - ca.b * cb.a))
    return VarietyCheck(on_variety=all(r <= tol for r in residuals),
                        residuals=tuple(residuals))


_AVERAGES_DOMAIN = (0.0, math.inf, 1.0, -1.0)


def averages_identity_check(sigma):
    """Residual of the product-of-averages identity on the domain
    (0, infinity, 1, -1).

    For range values (a, b, c, d) returns
    |(ab + cd)/2 - ((a + b)/2) ((c + d)/2)|, which vanishes on every
    suite with that domain that is a limit of exactly realizable
    suites.  Range points at infinity are rejected.
    """
    if sigma.n != 2:
        raise WrongDimension("averages identity applies to CP^1 suites")
    if sigma.ell != 4:
        raise WrongDomain("averages identity needs exactly four pairs")
    expected = [_point_from_value(v) for v in _AVERAGES_DOMAIN]
    for p, e in zip(sigma.domain, expected):
        if fs_distance(p, e) > 1e-12:
            raise WrongDomain("domain must be (0, infinity, 1, -1)")
    values = []
    for p in sigma.range_points:
        z = to_riemann(p)
        if abs(z.b) <= 1e-12:
            raise InfiniteRangePoint(
                "averages identity needs finite range values")
        values.append(z.value)
    a, b, c, d = values
    return abs((a * b + c * d) / 2.0 - ((a + b) / 2.0) * ((c + d) / 2.0))
