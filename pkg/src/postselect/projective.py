"""Points of complex projective space and projective-linear maps.

A projective point is stored as a canonical unit representative: norm
one, with the largest-magnitude coordinate made real and positive (ties
broken by lowest index).  Distances are Fubini-Study angles,
``arccos |<u, v>|`` for unit representatives, which range over
[0, pi/2].

For the one-dimensional case (points of the Riemann sphere) a second
representation by homogeneous pairs (a, b), meaning the value a/b with
b = 0 for infinity, supports fractional-linear maps, cross-ratios, and
the chordal metric on the unit sphere.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFinite,
    NotGeneralPosition,
    NotInvertible,
    SingularConfiguration,
)
from .linalg import max_abs

GENERAL_POSITION_TOL = 1e-9
APPLY_QL_TOL = 1e-10
COINCIDENT_TOL = 1e-9


class ProjectivePoint:
    """A point of CP^(n-1), stored as its canonical unit representative."""

    __slots__ = ("_coords",)

    def __init__(self, coords):
        v = np.asarray(coords, dtype=complex).reshape(-1)
        if v.size == 0:
            raise ValueError("empty coordinate vector")
        if not np.isfinite(v.view(float)).all():
            raise NonFinite("coordinates contain non-finite entries")
        nrm = float(np.linalg.norm(v))
        if nrm == 0.0:
            raise ValueError("zero vector does not define a projective point")
        # each step is skipped when already satisfied so that
        # canonicalization is idempotent at the bit level (round trips
        # through serialization preserve equality and hashes)
        if abs(nrm - 1.0) > 1e-12:
            v = v / nrm
        j = int(np.argmax(np.abs(v)))
        anchor = complex(v[j])
        mag = math.hypot(anchor.real, anchor.imag)
        if not (anchor.imag == 0.0 and anchor.real > 0.0):
            v = v * complex(anchor.real / mag, -anchor.imag / mag)
        v = v + 0.0  # copies and flushes -0.0 components to +0.0
        v[j] = complex(mag, 0.0)
        v.flags.writeable = False
        self._coords = v

    @property
    def coords(self):
        """Canonical unit representative (read-only)."""
        return self._coords

    @property
    def dim(self):
        """Length n of the representative (the point lives in CP^(n-1))."""
        return self._coords.size

    def isclose(self, other, tol=COINCIDENT_TOL):
        return fs_distance(self, other) <= tol

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return (self.dim == other.dim
                and bool(np.array_equal(self._coords, other._coords)))

    def __hash__(self):
        return hash(self._coords.tobytes())

    def __repr__(self):
        entries = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j"
                            for z in self._coords)
        return f"ProjectivePoint([{entries}])"


def standard_basis_point(i, n):
    """The projective point of the i-th standard basis vector in C^n."""
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return ProjectivePoint(v)


def fs_distance(p, q):
    """Fubini-Study distance arccos |<p, q>| between two points.

    Computed as atan2 of the orthogonal and parallel components of one
    representative against the other, which stays accurate near zero
    where arccos of the overlap loses half the working precision.
    """
    if p.dim != q.dim:
        raise DimensionMismatch(
            f"points live in dimensions {p.dim} and {q.dim}")
    inner = np.vdot(q.coords, p.coords)
    ortho = np.linalg.norm(p.coords - inner * q.coords)
    return float(np.arctan2(ortho, abs(inner)))


def apply_ql(l, p):
    """Image of a point under the map induced by a linear operator.

    Returns None when the representative is annihilated, i.e. when
    ``||L v|| <= APPLY_QL_TOL * max|L|`` for the unit representative v.
    """
    l = np.asarray(l, dtype=complex)
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise ValueError(f"operator must be square, got shape {l.shape}")
    if l.shape[1] != p.dim:
        raise DimensionMismatch(
            f"operator acts on dimension {l.shape[1]}, point has {p.dim}")
    w = l @ p.coords
    if float(np.linalg.norm(w)) <= APPLY_QL_TOL * max_abs(l):
        return None
    return ProjectivePoint(w)


def in_general_position(points, n):
    """Whether every min(n, len(points)) of the points span maximally.

    Each subset of size min(n, len(points)) must have representative
    matrix with smallest singular value above ``GENERAL_POSITION_TOL``
    relative to the largest.
    """
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    for p in points:
        if p.dim != n:
            raise DimensionMismatch(
                f"point of dimension {p.dim} in an ambient dimension {n}")
    k = min(n, len(points))
    for subset in itertools.combinations(points, k):
        m = np.column_stack([p.coords for p in subset])
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= GENERAL_POSITION_TOL * s[0]:
            return False
    return True


def pl_from_correspondence(domain, range_):
    """The projective-linear map sending n+1 domain points to n+1 range
    points.

    Both tuples must consist of n+1 points of CP^(n-1) in general
    position.  The returned n x n matrix is the classical interpolant:
    unique up to a complex scale, it maps domain[i] exactly to range_[i].
    """
    domain = list(domain)
    range_ = list(range_)
    if not domain:
        raise ValueError("empty correspondence")
    n = domain[0].dim
    if len(domain) != n + 1 or len(range_) != n + 1:
        raise DimensionMismatch(
            f"need {n + 1} point pairs for dimension {n}, got "
            f"{len(domain)} and {len(range_)}")
    if not in_general_position(domain, n):
        raise NotGeneralPosition("domain points are not in general position")
    if not in_general_position(range_, n):
        raise NotGeneralPosition("range points are not in general position")

    def to_standard(points):
        # columns scaled so the map sends the standard simplex
        # e_1, ..., e_n, e_1 + ... + e_n to the given points
        m = np.column_stack([p.coords for p in points[:n]])
        z = np.linalg.solve(m, points[n].coords)
        return m * z[None, :]

    a = to_standard(range_)
    b = to_standard(domain)
    return np.linalg.solve(b.conj().T, a.conj().T).conj().T


@dataclass(frozen=True)
class RiemannPoint:
    """Point of the Riemann sphere as a homogeneous pair (a, b).

    The value is a/b, with b = 0 meaning infinity.  Pairs are stored
    scaled so max(|a|, |b|) = 1.
    """

    a: complex
    b: complex

    def __init__(self, a, b):
        a = complex(a)
        b = complex(b)
        if not (np.isfinite([a.real, a.imag, b.real, b.imag]).all()):
            raise NonFinite("homogeneous pair contains non-finite entries")
        m = max(abs(a), abs(b))
        if m == 0.0:
            raise ValueError("(0, 0) does not define a sphere point")
        object.__setattr__(self, "a", a / m)
        object.__setattr__(self, "b", b / m)

    @classmethod
    def from_value(cls, z):
        """Point with the given finite complex value."""
        return cls(complex(z), 1.0)

    @classmethod
    def infinity(cls):
        return cls(1.0, 0.0)

    @property
    def is_infinite(self):
        return self.b == 0.0

    @property
    def value(self):
        """The finite value a/b; raises ZeroDivisionError at infinity."""
        if self.is_infinite:
            raise ZeroDivisionError("point at infinity has no finite value")
        return self.a / self.b

    def __repr__(self):
        if self.is_infinite:
            return "RiemannPoint(inf)"
        return f"RiemannPoint({self.value:.6g})"


def to_riemann(p):
    """Homogeneous pair (a, b) of a point of CP^1."""
    if p.dim != 2:
        raise DimensionMismatch(f"expected a point of CP^1, got dim {p.dim}")
    return RiemannPoint(p.coords[0], p.coords[1])


def from_riemann(z):
    """Projective point of CP^1 with homogeneous coordinates (a, b)."""
    return ProjectivePoint([z.a, z.b])


def bracket(x, y):
    """Antisymmetric pairing a_x b_y - b_x a_y; zero iff x == y."""
    return x.a * y.b - x.b * y.a


def to_bloch(z):
    """Unit-sphere image (2 Re ab*, 2 Im ab*, |a|^2 - |b|^2) / (|a|^2 + |b|^2)."""
    s = abs(z.a) ** 2 + abs(z.b) ** 2
    cross = z.a * z.b.conjugate()
    return np.array([2 * cross.real / s, 2 * cross.imag / s,
                     (abs(z.a) ** 2 - abs(z.b) ** 2) / s])


def chordal_distance(x, y):
    """Euclidean distance of unit-sphere images; equals 2 sin(FS angle)."""
    return float(np.linalg.norm(to_bloch(x) - to_bloch(y)))


class Moebius:
    """Invertible fractional-linear map of the sphere as a 2x2 matrix.

    Matrices are stored scaled so the largest entry magnitude is one;
    proportional matrices give the same map.
    """

    __slots__ = ("_m",)

    def __init__(self, m):
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.isfinite(m.view(float)).all():
            raise NonFinite("matrix contains non-finite entries")
        scale = max_abs(m)
        if scale == 0.0:
            raise NotInvertible("zero matrix")
        m = m / scale
        if abs(np.linalg.det(m)) < 1e-12:
            raise NotInvertible("matrix is numerically singular")
        m.flags.writeable = False
        self._m = m

    @property
    def matrix(self):
        return self._m

    def __call__(self, z):
        m = self._m
        return RiemannPoint(m[0, 0] * z.a + m[0, 1] * z.b,
                            m[1, 0] * z.a + m[1, 1] * z.b)

    def compose(self, other):
        """The map applying ``other`` first, then this map."""
        return Moebius(self._m @ other._m)

    def inverse(self):
        m = self._m
        return Moebius([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])

    def apply_point(self, p):
        """Action on a point of CP^1."""
        return from_riemann(self(to_riemann(p)))


def moebius_apply(f, z):
    """Homogeneous action of a fractional-linear map on a sphere point.

    Accepts either a Moebius instance or a raw invertible 2x2 matrix.
    """
    if not isinstance(f, Moebius):
        f = Moebius(f)
    return f(z)


def moebius_to_standard_triple(z1, z2, z3):
    """The fractional-linear map sending (z1, z2, z3) to (0, infinity, 1).

    The three points must be pairwise distinct.
    """
    k1 = bracket(z3, z2)
    k2 = bracket(z3, z1)
    return Moebius([[k1 * z1.b, -k1 * z1.a], [k2 * z2.b, -k2 * z2.a]])


def moebius_through(sources, targets):
    """The fractional-linear map sending three sphere points to three
    sphere points; both triples must be pairwise distinct."""
    if len(sources) != 3 or len(targets) != 3:
        raise ValueError("need exactly three source and three target points")
    f = moebius_to_standard_triple(*sources)
    g = moebius_to_standard_triple(*targets)
    return g.inverse().compose(f)


def _coincidence_classes(points, tol):
    labels = []
    reps = []
    for z in points:
        for idx, r in enumerate(reps):
            if chordal_distance(z, r) <= tol:
                labels.append(idx)
                break
        else:
            labels.append(len(reps))
            reps.append(z)
    return labels


def cross_ratio(a, b, c, d, tol=COINCIDENT_TOL):
    """Cross-ratio ((a - c)/(b - c)) * ((b - d)/(a - d)) of four sphere
    points, computed homogeneously.

    Allowed coincidence patterns (at chordal tolerance ``tol``): all
    four distinct, exactly one coincident pair, or two coincident pairs.
    Two pairs force the exact value 1, 0, or infinity according to which
    pairing occurs.  Three or four coincident points raise
    SingularConfiguration.
    """
    points = (a, b, c, d)
    labels = _coincidence_classes(points, tol)
    classes = max(labels) + 1
    sizes = sorted((labels.count(i) for i in range(classes)), reverse=True)
    if sizes[0] >= 3:
        raise SingularConfiguration(
            "three or more coincident points have no cross-ratio")
    if sizes == [2, 2]:
        if labels[0] == labels[1]:
            return RiemannPoint.from_value(1.0)
        if labels[0] == labels[2]:
            return RiemannPoint.from_value(0.0)
        return RiemannPoint.infinity()
    num = bracket(a, c) * bracket(b, d)
    den = bracket(b, c) * bracket(a, d)
    if num == 0.0 and den == 0.0:
        raise SingularConfiguration("indeterminate cross-ratio")
    return RiemannPoint(num, den)
