"""Acceptance gate: twelve criteria, one test each.

Each test pins the advertised tolerance and sample count verbatim and
fails honestly if the library stops meeting it.  Runtime-limited
criteria assert their wall-clock budget.  All randomness is seeded, so
every run checks the same instances.
"""

import math
import time

import numpy as np
import pytest

from postselect.channel import DensityMatrix, build_kraus, postselect_branch
from postselect.errors import NotPSD
from postselect.gram import vectors_with_gram
from postselect.montecarlo import (
    estimate_exact_fraction,
    run_scaling_experiment,
)
from postselect.projective import (
    Moebius,
    ProjectivePoint,
    RiemannPoint,
    apply_ql,
    chordal_distance,
    cross_ratio,
    fs_distance,
    in_general_position,
    pl_from_correspondence,
    to_riemann,
)
from postselect.realize import (
    apply_postselected,
    dilate_literal,
    exact_realize,
    realize_convex_combination,
    rho,
)
from postselect.suites import (
    FitOptions,
    SingleQubitClass,
    Suite,
    averages_identity_check,
    border_sequence,
    classify_single_qubit,
    exact_realize_suite,
    fit_suite,
    pl_variety_check,
)


def random_unitary(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_contraction(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    margin = 1.0 + rng.uniform(0.05, 1.0)
    return a / (np.linalg.norm(a, 2) * margin)


def random_state(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_sphere_values(rng, count, min_sep=0.05):
    """Random finite sphere values, pairwise chordal-separated."""
    while True:
        vals = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        pts = [RiemannPoint.from_value(v) for v in vals]
        ok = all(chordal_distance(pts[i], pts[j]) >= min_sep
                 for i in range(count) for j in range(i + 1, count))
        if ok:
            return list(vals)


def random_moebius(rng):
    while True:
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        f = Moebius(m)
        if abs(np.linalg.det(f.matrix)) >= 1e-3:
            return f


def suite_distance(sigma, tau):
    """Largest Fubini-Study gap between paired range points."""
    return max(fs_distance(p, q)
               for p, q in zip(sigma.range_points, tau.range_points))


def trichotomy_corpus():
    """Fixed 60-suite corpus: 20 projective-linear, 20 border, 20 with
    neither pattern (10 two-pair ranges, 10 one-pair ranges)."""
    rng = np.random.default_rng(777)
    pl, border, two_two, two_one_one = [], [], [], []
    for i in range(20):
        ell = 3 + i % 3
        domain = random_sphere_values(rng, ell)
        f = random_moebius(rng)
        images = [f(RiemannPoint.from_value(v)) for v in domain]
        pl.append(Suite.from_values(domain, images))
    for i in range(20):
        ell = 3 + i % 3
        domain = random_sphere_values(rng, ell)
        p, q = random_sphere_values(rng, 2)
        values = [p] * (ell - 1)
        values.insert(i % ell, q)
        border.append(Suite.from_values(domain, values))
    for i in range(20):
        domain = random_sphere_values(rng, 4)
        p, q, r = random_sphere_values(rng, 3)
        pattern = [p, p, q, q] if i < 10 else [p, p, q, r]
        order = rng.permutation(4)
        values = [pattern[k] for k in order]
        (two_two if i < 10 else two_one_one).append(
            Suite.from_values(domain, values))
    return pl, border, two_two, two_one_one


def test_criterion_01_dilation_suite():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    for i in range(500):
        n = 2 + i % 4
        l = random_contraction(rng, n)
        u = dilate_literal(l)
        assert np.max(np.abs(u.conj().T @ u - np.eye(2 * n))) <= 1e-9
        assert np.max(np.abs(u[:n, :n] - l)) <= 1e-8
        for _ in range(20):
            psi = random_state(rng, n)
            outcome = apply_postselected(u, psi)
            assert np.max(np.abs(outcome.state - l @ psi)) <= 1e-7
    assert time.monotonic() - start < 30.0


def test_criterion_02_optimal_gsp():
    rng = np.random.default_rng(202)
    for i in range(100):
        n = 2 + i % 3
        l = random_contraction(rng, n)
        result = exact_realize(l)
        lam = np.linalg.eigvalsh(l.conj().T @ l)
        ratio = max(float(lam[0]), 0.0) / float(lam[-1])
        assert abs(result.gsp - ratio) <= 1e-10
        block = result.unitary[:n, :n]
        states = rng.standard_normal((n, 10000)) \
            + 1j * rng.standard_normal((n, 10000))
        states /= np.linalg.norm(states, axis=0)
        probs = np.sum(np.abs(block @ states) ** 2, axis=0)
        assert float(np.min(probs)) >= result.gsp - 1e-6
        # the small eigenvector of (cL)*(cL) attains the guarantee
        _, vecs = np.linalg.eigh(block.conj().T @ block)
        attained = float(np.linalg.norm(block @ vecs[:, 0]) ** 2)
        assert abs(attained - result.gsp) <= 1e-8


def test_criterion_03_convex_combinations():
    rng = np.random.default_rng(303)
    for i in range(200):
        n = 2 + i % 3
        members = 2 + i % 3
        unitaries = [random_unitary(rng, n) for _ in range(members)]
        weights = rng.dirichlet(np.ones(members))
        combo = sum(w * u for w, u in zip(weights, unitaries))
        assert np.linalg.norm(combo, 2) <= 1.0 + 1e-9
        result = realize_convex_combination(unitaries, weights)
        big = result.unitary
        assert np.max(np.abs(big.conj().T @ big - np.eye(2 * n))) <= 1e-9
        assert np.max(np.abs(big[:n, :n] - combo)) <= 1e-8


def test_criterion_04_gram_round_trip():
    rng = np.random.default_rng(404)
    for i in range(500):
        n = 1 + i % 6
        k = 1 + i % (n + 2)
        a = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        q = a @ a.conj().T
        x = vectors_with_gram(q)
        assert np.max(np.abs(x.conj().T @ x - q)) <= 1e-8 * np.max(np.abs(q))
    for n in range(2, 7):
        v = random_unitary(rng, n)
        d = rng.uniform(0.5, 2.0, n)
        d[int(rng.integers(n))] = -0.1
        planted = v @ np.diag(d) @ v.conj().T
        planted = (planted + planted.conj().T) / 2.0
        with pytest.raises(NotPSD):
            vectors_with_gram(planted)


def test_criterion_05_pl_interpolation():
    rng = np.random.default_rng(505)
    for i in range(200):
        n = 2 + i % 3
        def general_points():
            while True:
                pts = [ProjectivePoint(rng.standard_normal(n)
                                       + 1j * rng.standard_normal(n))
                       for _ in range(n + 1)]
                if in_general_position(pts, n):
                    return pts
        domain = general_points()
        range_ = general_points()
        l = pl_from_correspondence(domain, range_)
        for p, q in zip(domain, range_):
            assert fs_distance(apply_ql(l, p), q) <= 1e-8
        # uniqueness up to scale: a permuted correspondence recovers a
        # scalar multiple of the same operator
        order = list(rng.permutation(n + 1))
        l2 = pl_from_correspondence([domain[j] for j in order],
                                    [range_[j] for j in order])
        s = np.vdot(l, l2) / np.vdot(l, l)
        assert np.max(np.abs(l2 - s * l)) <= 1e-8 * np.max(np.abs(l2))


def test_criterion_06_cross_ratio_algebra():
    rng = np.random.default_rng(606)
    zero = RiemannPoint.from_value(0.0)
    one = RiemannPoint.from_value(1.0)
    inf = RiemannPoint.infinity()
    for _ in range(1000):
        tetrad = [RiemannPoint.from_value(v)
                  for v in random_sphere_values(rng, 4, min_sep=1e-6)]
        f = random_moebius(rng)
        before = cross_ratio(*tetrad)
        after = cross_ratio(*[f(z) for z in tetrad])
        assert chordal_distance(before, after) <= 1e-9
    a, c = (RiemannPoint.from_value(v)
            for v in random_sphere_values(rng, 2))
    assert cross_ratio(a, a, c, c).value == 1.0
    assert cross_ratio(a, c, a, c).value == 0.0
    assert cross_ratio(a, c, c, a).is_infinite
    for _ in range(1000):
        tetrad = [RiemannPoint.from_value(v)
                  for v in random_sphere_values(rng, 4, min_sep=1e-6)]
        chi = cross_ratio(*tetrad)
        for forced in (zero, one, inf):
            assert chordal_distance(chi, forced) > 1e-9


def test_criterion_07_single_qubit_trichotomy():
    start = time.monotonic()
    pl, border, two_two, two_one_one = trichotomy_corpus()
    expected = (
        [(s, SingleQubitClass.EXACTLY_REALIZABLE_PL) for s in pl]
        + [(s, SingleQubitClass.BORDER_OF_PL) for s in border]
        + [(s, SingleQubitClass.NOT_INFINITELY_APPROXIMABLE)
           for s in two_two + two_one_one])
    correct = sum(classify_single_qubit(s) is v for s, v in expected)
    assert correct == 60
    for idx, sigma in enumerate(pl + border):
        opts = FitOptions(restarts=20, max_iters=500, seed=1000 + idx,
                          target=1e-2)
        assert fit_suite(sigma, opts).max_fs < 1e-2
    for idx, sigma in enumerate(two_two):
        opts = FitOptions(restarts=20, max_iters=500, seed=2000 + idx)
        assert fit_suite(sigma, opts).max_fs > 0.01
    assert time.monotonic() - start < 300.0


def test_criterion_08_border_sequences():
    _, border, _, _ = trichotomy_corpus()
    assert len(border) == 20
    for sigma in border:
        terms = [border_sequence(sigma, k) for k in (10, 100, 1000)]
        gaps = [suite_distance(sigma, term) for term in terms]
        assert gaps[0] > gaps[1] > gaps[2]
        realizer = exact_realize_suite(terms[-1])
        assert realizer is not None
        assert rho(realizer) < 1e-3


def test_criterion_09_scaling_law():
    start = time.monotonic()
    report = run_scaling_experiment(n=2, ell=4, eps_grid=[0.05, 0.1, 0.2],
                                    samples=2000, seed=42)
    elapsed = time.monotonic() - start
    assert report.predicted_exponent == 2.0
    assert len(report.fractions) == 3
    assert report.fractions[0] <= report.fractions[1] <= report.fractions[2]
    assert 1.5 <= report.slope <= 2.5
    assert elapsed < 600.0


def test_criterion_10_exact_realization_full_measure():
    assert estimate_exact_fraction(2, 3, 250, seed=1010) == 1.0
    assert estimate_exact_fraction(3, 4, 250, seed=1011) == 1.0


def test_criterion_11_channel():
    rng = np.random.default_rng(1111)
    for i in range(500):
        n = 1 + i % 4
        u = random_unitary(rng, 2 * n)
        channel = build_kraus(u)
        total = sum(k.conj().T @ k for k in channel.kraus)
        assert np.max(np.abs(total - np.eye(n))) <= 1e-10
        if i < 200:
            psi = random_state(rng, n)
            _, prob = postselect_branch(channel, 0, DensityMatrix.pure(psi))
            direct = apply_postselected(u, psi).success_prob
            assert abs(prob - direct) <= 1e-8


def test_criterion_12_variety_checks():
    rng = np.random.default_rng(1212)
    domain = [0.0, math.inf, 1.0, -1.0]
    suites = []
    while len(suites) < 100:
        f = random_moebius(rng)
        images = [f(RiemannPoint.from_value(0.0)),
                  f(RiemannPoint.infinity()),
                  f(RiemannPoint.from_value(1.0)),
                  f(RiemannPoint.from_value(-1.0))]
        if any(abs(z.b) <= 1e-3 for z in images):
            continue
        if max(abs(z.value) for z in images) > 100.0:
            continue
        suites.append(Suite.from_values(domain, images))
    for sigma in suites:
        assert pl_variety_check(sigma).on_variety
        assert averages_identity_check(sigma) <= 1e-8
    for sigma in suites:
        base = [to_riemann(p).value for p in sigma.range_points]
        shift = 1e-2 * (rng.standard_normal(4)
                        + 1j * rng.standard_normal(4))
        perturbed = Suite.from_values(
            domain, [v + d for v, d in zip(base, shift)])
        assert not pl_variety_check(perturbed).on_variety
        assert averages_identity_check(perturbed) > 1e-8
