import numpy as np
import pytest

from postselect.errors import DegenerateGrid
from postselect.montecarlo import (
    estimate_exact_fraction,
    estimate_fraction,
    fit_scaling,
    predicted_exponent,
    run_scaling_experiment,
    sample_point,
    sample_rng,
    sample_suite,
)
from postselect.projective import fs_distance


def test_sample_rng_reproducible_and_split():
    a = sample_rng(42, 0).normal(size=4)
    b = sample_rng(42, 0).normal(size=4)
    c = sample_rng(42, 1).normal(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_sample_point_deterministic():
    p = sample_point(3, sample_rng(7, 3))
    q = sample_point(3, sample_rng(7, 3))
    assert p == q


def test_sample_point_fs_uniform():
    # under the unitarily invariant measure on CP^1 the mean pairwise
    # distance is pi/4
    rng = sample_rng(123, 0)
    total = 0.0
    pairs = 10_000
    for _ in range(pairs):
        total += fs_distance(sample_point(2, rng), sample_point(2, rng))
    assert total / pairs == pytest.approx(np.pi / 4, abs=0.01)


def test_sample_suite_shape_and_determinism():
    s = sample_suite(2, 4, sample_rng(5, 9))
    t = sample_suite(2, 4, sample_rng(5, 9))
    assert s.n == 2 and s.ell == 4
    assert all(p == q for p, q in zip(s.domain, t.domain))
    assert all(p == q for p, q in zip(s.range_points, t.range_points))


def test_estimate_fraction_full_measure_case():
    frac = estimate_fraction(2, 3, 0.05, samples=40, seed=3,
                             restarts=2, max_iters=200)
    assert frac == 1.0


def test_estimate_fraction_monotone_in_eps():
    fractions = [estimate_fraction(2, 4, eps, samples=60, seed=17,
                                   restarts=2, max_iters=150)
                 for eps in (0.05, 0.15, 0.4)]
    assert fractions[0] <= fractions[1] <= fractions[2]


def test_estimate_fraction_saturates_at_diameter():
    frac = estimate_fraction(2, 4, float(np.pi) / 2 + 0.01, samples=20,
                             seed=1, restarts=1, max_iters=50)
    assert frac == 1.0


def test_estimate_exact_fraction_claim_one():
    for n in (2, 3):
        frac = estimate_exact_fraction(n, n + 1, samples=60, seed=9)
        assert frac == 1.0


def test_predicted_exponent():
    assert predicted_exponent(2, 4) == 2
    assert predicted_exponent(3, 5) == 4
    assert predicted_exponent(2, 3) == 0


def test_fit_scaling_planted_square_law():
    eps = [0.05, 0.1, 0.2, 0.4]
    rep = fit_scaling(2, 4, eps, [e ** 2 for e in eps], 100, 0)
    assert rep.slope == pytest.approx(2.0, abs=1e-12)
    assert rep.excluded_eps == ()


def test_fit_scaling_planted_cubic_law():
    eps = [0.05, 0.1, 0.2]
    rep = fit_scaling(2, 4, eps, [0.3 * e ** 3 for e in eps], 100, 0)
    assert rep.slope == pytest.approx(3.0, abs=1e-12)


def test_fit_scaling_excludes_zero_fractions():
    eps = [0.05, 0.1, 0.2, 0.4]
    rep = fit_scaling(2, 4, eps, [0.0, 0.01, 0.04, 0.16], 100, 0)
    assert rep.excluded_eps == (0.05,)
    assert rep.slope == pytest.approx(2.0, abs=1e-9)


def test_fit_scaling_degenerate_grids():
    with pytest.raises(DegenerateGrid):
        fit_scaling(2, 4, [0.1, 0.2], [0.01, 0.04], 100, 0)
    with pytest.raises(DegenerateGrid):
        fit_scaling(2, 4, [0.1, 0.2, 0.3], [0.0, 0.0, 0.1], 100, 0)
    with pytest.raises(DegenerateGrid):
        fit_scaling(2, 4, [0.2, 0.1, 0.3], [0.01, 0.02, 0.03], 100, 0)
    with pytest.raises(ValueError):
        fit_scaling(2, 4, [0.1, 0.2, 0.3], [0.01, 0.02], 100, 0)
    with pytest.raises(ValueError):
        fit_scaling(2, 4, [0.1, 0.2, 0.3], [0.01, 0.02, 1.5], 100, 0)


def test_run_scaling_experiment_reproducible():
    grid = [0.15, 0.3, 0.6]
    a = run_scaling_experiment(2, 4, grid, 25, 13, restarts=2, max_iters=100)
    b = run_scaling_experiment(2, 4, grid, 25, 13, restarts=2, max_iters=100)
    assert a == b
    assert a.fractions[0] <= a.fractions[1] <= a.fractions[2]
    assert a.n == 2 and a.ell == 4
    assert a.samples_per_eps == 25 and a.seed == 13
