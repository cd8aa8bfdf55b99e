"""Monte-Carlo estimation of the measure of approximable suites.

Suites are sampled coordinate-wise from the unitarily invariant
(Fubini-Study) measure via normalized complex Gaussian vectors.  Each
sample index gets its own counter-based generator, so estimates are
reproducible for a given seed regardless of evaluation order, and the
suites drawn for one seed are identical across tolerance values; paired
with the truncation property of the fit's early stopping, that makes
the estimated fraction nondecreasing in eps.

The fraction of eps-approximable suites scales like
eps^(2 (ell - n - 1)(n - 1)) as eps tends to zero; fit_scaling checks a
measured fraction table against that exponent by an ordinary
least-squares slope in log-log coordinates.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGrid, InvalidSuite
from .projective import ProjectivePoint
from .suites import (
    FitOptions,
    Suite,
    exact_realize_suite,
    is_eps_approximable,
)

_RESAMPLE_CAP = 100


def sample_rng(seed, index):
    """Counter-based generator for one sample of one experiment.

    Distinct (seed, index) pairs give statistically independent streams;
    the same pair always reproduces the same stream.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(ss))


def sample_point(n, rng):
    """Fubini-Study uniform point of CP^(n-1)."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return ProjectivePoint(v)


def sample_suite(n, ell, rng):
    """Suite with Fubini-Study uniform coordinates.

    The domain is redrawn wholesale in the measure-zero event that two
    of its points collide at the suite distinctness tolerance.
    """
    for _ in range(_RESAMPLE_CAP):
        domain = [sample_point(n, rng) for _ in range(ell)]
        range_points = [sample_point(n, rng) for _ in range(ell)]
        try:
            return Suite(domain=domain, range_points=range_points)
        except InvalidSuite:
            continue
    raise RuntimeError("domain sampling kept colliding")


def estimate_fraction(n, ell, eps, samples, seed, restarts=5, max_iters=500):
    """Fraction of random suites certified eps-approximable.

    A lower-bound estimator: the underlying query is sound but
    incomplete.  Sample i uses the counter-based stream (seed, i) both
    for the suite and for the fit seed, so runs are reproducible and
    fractions are nondecreasing in eps for a fixed seed and sample
    count.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    hits = 0
    for i in range(samples):
        rng = sample_rng(seed, i)
        sigma = sample_suite(n, ell, rng)
        fit_seed = int(rng.integers(0, 2 ** 63))
        opts = FitOptions(restarts=restarts, max_iters=max_iters,
                          seed=fit_seed)
        if is_eps_approximable(sigma, eps, opts).verdict == "yes":
            hits += 1
    return hits / samples


def estimate_exact_fraction(n, ell, samples, seed):
    """Fraction of random suites admitting an exact realizer.

    One for ell <= n + 1 (interpolation always succeeds on points in
    general position); zero almost surely once the constraints
    outnumber the unknowns.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    hits = 0
    for i in range(samples):
        sigma = sample_suite(n, ell, sample_rng(seed, i))
        if exact_realize_suite(sigma) is not None:
            hits += 1
    return hits / samples


@dataclass(frozen=True)
class ScalingReport:
    """Measured approximable fractions against the predicted power law.

    slope is the ordinary least-squares slope of log(fraction) against
    log(eps) over the usable grid points (nonzero fraction);
    excluded_eps lists the grid points dropped because nothing was
    certified there.
    """

    n: int
    ell: int
    eps_grid: tuple
    fractions: tuple
    slope: float
    predicted_exponent: float
    samples_per_eps: int
    seed: int
    excluded_eps: tuple


def predicted_exponent(n, ell):
    """Power of eps governing the measure of eps-approximable suites."""
    return float(2 * (ell - n - 1) * (n - 1))


def fit_scaling(n, ell, eps_grid, fractions, samples_per_eps, seed):
    """Least-squares slope of a fraction table in log-log coordinates.

    Grid points with fraction exactly 0 (nothing certified, log
    undefined) are excluded; fewer than three usable points raise
    DegenerateGrid.
    """
    eps_grid = [float(e) for e in eps_grid]
    fractions = [float(f) for f in fractions]
    if len(eps_grid) != len(fractions):
        raise ValueError("eps grid and fractions must align")
    if len(eps_grid) < 3:
        raise DegenerateGrid("need at least three grid points")
    if any(not e > 0 for e in eps_grid):
        raise ValueError("eps values must be positive")
    if any(b <= a for a, b in zip(eps_grid, eps_grid[1:])):
        raise DegenerateGrid("eps grid must be strictly increasing")
    if any(not 0.0 <= f <= 1.0 for f in fractions):
        raise ValueError("fractions must lie in [0, 1]")
    usable = [(e, f) for e, f in zip(eps_grid, fractions) if f > 0.0]
    excluded = tuple(e for e, f in zip(eps_grid, fractions) if f == 0.0)
    if len(usable) < 3:
        raise DegenerateGrid(
            f"only {len(usable)} usable grid points after exclusions")
    x = np.log([e for e, _ in usable])
    y = np.log([f for _, f in usable])
    slope = float(np.polyfit(x, y, 1)[0])
    return ScalingReport(n=int(n), ell=int(ell), eps_grid=tuple(eps_grid),
                         fractions=tuple(fractions), slope=slope,
                         predicted_exponent=predicted_exponent(n, ell),
                         samples_per_eps=int(samples_per_eps),
                         seed=int(seed), excluded_eps=excluded)


def run_scaling_experiment(n, ell, eps_grid, samples, seed, restarts=5,
                           max_iters=500):
    """Estimate fractions over an eps grid and fit the power law.

    Every grid point reuses the same sample stream (same seed), so the
    fraction column is nondecreasing by construction.
    """
    fractions = [estimate_fraction(n, ell, eps, samples, seed,
                                   restarts=restarts, max_iters=max_iters)
                 for eps in eps_grid]
    return fit_scaling(n, ell, eps_grid, fractions, samples, seed)
