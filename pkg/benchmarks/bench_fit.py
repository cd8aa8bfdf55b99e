"""Benchmark of the compiled fit kernel against the pure Python one.

Times the minimax objective and the full pattern search on random
suites of a few sizes, checks that both implementations agree, and
prints evaluation rates plus the speedup.  Runs with only the pure
kernel (and says so) when the compiled extension is unavailable.

Usage: python3 benchmarks/bench_fit.py [--repeats N] [--seed S]
"""

import argparse
import time

import numpy as np

from postselect import _fitkernel_py
from postselect.montecarlo import sample_rng, sample_suite
from postselect.suites import _tangent_frame

try:
    from postselect import _fitkernel
except ImportError:
    _fitkernel = None


def packed_problem(seed, n, ell):
    """Arrays (dom, ran, frames, x0, dirs) for one random fit problem."""
    rng = sample_rng(seed, 0)
    sigma = sample_suite(n, ell, rng)
    dom = np.ascontiguousarray([p.coords for p in sigma.domain])
    ran = np.ascontiguousarray([p.coords for p in sigma.range_points])
    frames = np.ascontiguousarray([_tangent_frame(p) for p in sigma.domain])
    dim = 2 * n * n + 2 * (n - 1) * ell
    x0 = rng.standard_normal(dim)
    dirs = rng.standard_normal((64, dim))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return dom, ran, frames, x0, dirs


def time_objective(impl, problems, repeats):
    evals = 0
    start = time.perf_counter()
    for dom, ran, frames, x0, _ in problems:
        for r in range(repeats):
            impl.fit_objective(dom, ran, frames, x0 * (1.0 + 1e-6 * r))
            evals += 1
    return evals / (time.perf_counter() - start)


def time_search(impl, problems, max_iters):
    start = time.perf_counter()
    results = []
    for dom, ran, frames, x0, dirs in problems:
        out = impl.pattern_search(dom, ran, frames, x0, 0.1, 0.5, 1e-8,
                                  max_iters, -1.0, dirs, 4)
        results.append(out)
    return time.perf_counter() - start, results


def check_agreement(problems, trials, seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for dom, ran, frames, x0, _ in problems:
        for _ in range(trials):
            x = x0 + 0.3 * rng.standard_normal(x0.size)
            fc = _fitkernel.fit_objective(dom, ran, frames, x)
            fp = _fitkernel_py.fit_objective(dom, ran, frames, x)
            worst = max(worst, abs(fc - fp))
    return worst


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=2000,
                        help="objective evaluations per problem")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-iters", type=int, default=200,
                        help="pattern-search iteration cap")
    args = parser.parse_args()

    sizes = [(2, 4), (3, 4), (4, 5)]
    problems = [packed_problem(args.seed + i, n, ell)
                for i, (n, ell) in enumerate(sizes)]
    print(f"problems: {', '.join(f'n={n} ell={e}' for n, e in sizes)}")

    if _fitkernel is None:
        print("compiled kernel not built; timing the pure kernel only")
        rate = time_objective(_fitkernel_py, problems, args.repeats)
        secs, _ = time_search(_fitkernel_py, problems, args.max_iters)
        print(f"pure python: {rate:,.0f} objective evals/s, "
              f"search {secs:.3f} s")
        return

    worst = check_agreement(problems, trials=50, seed=args.seed)
    print(f"objective agreement (worst abs diff over 150 points): "
          f"{worst:.3e}")

    rate_c = time_objective(_fitkernel, problems, args.repeats)
    rate_p = time_objective(_fitkernel_py, problems, args.repeats)
    secs_c, res_c = time_search(_fitkernel, problems, args.max_iters)
    secs_p, res_p = time_search(_fitkernel_py, problems, args.max_iters)

    print(f"{'kernel':<12}{'objective evals/s':>20}{'search seconds':>16}")
    print(f"{'cython':<12}{rate_c:>20,.0f}{secs_c:>16.3f}")
    print(f"{'python':<12}{rate_p:>20,.0f}{secs_p:>16.3f}")
    print(f"speedup: objective x{rate_c / rate_p:.1f}, "
          f"search x{secs_p / secs_c:.1f}")
    for (xc, fc, ic, cc), (xp, fp, ip, cp) in zip(res_c, res_p):
        if ic != ip or abs(fc - fp) > 1e-9:
            print(f"WARNING: search trajectories diverge "
                  f"(iters {ic} vs {ip}, f {fc:.3e} vs {fp:.3e})")
            break
    else:
        print("search trajectories identical across kernels")


if __name__ == "__main__":
    main()
