"""Compact invariant checks runnable from the CLI.

Each suite is a scaled-down version of one of the package's guarantees;
the full-strength versions live in the test suite.
"""

from __future__ import annotations

import numpy as np

from .coarse import kcenter_1d
from .core import Dataset, cost, dist, min_sq_dists
from .covering import HashCoveringConfig, build_covering_hash
from .gridhash import count_cells_intersecting_ball, eval_hash_batch, sample_hash
from .sampling import SampleCoveringConfig, build_covering_sample
from .solver import gonzalez, merge_coverings, reduce_covering


def _covering_holds(dataset, result) -> bool:
    worst = float(np.sqrt(min_sq_dists(dataset, result.subset).max()))
    return worst <= result.radius_bound * (1 + 1e-12)


def _check_cell_diameter(rng) -> bool:
    for d in (1, 2, 5):
        scale = float(rng.uniform(0.2, 3.0))
        h = sample_hash(d, scale, int(rng.integers(2**32)))
        cells = rng.integers(-4, 5, size=(400, d))
        a = (cells + rng.random((400, d))) * h.side - h.shift
        b = (cells + rng.random((400, d))) * h.side - h.shift
        same = np.all(eval_hash_batch(h, a) == eval_hash_batch(h, b), axis=1)
        gaps = np.sqrt(((a - b) ** 2).sum(axis=1))
        if np.any(gaps[same] > scale * (1 + 1e-12)):
            return False
    return True


def _check_count_mean(rng) -> bool:
    h_side = 1.0
    r = 0.7
    counts = []
    for _ in range(800):
        h = sample_hash(1, h_side, int(rng.integers(2**32)))
        counts.append(count_cells_intersecting_ball(h, [0.3], r))
    expect = 1 + 2 * r / (h_side / 1.0)
    return abs(float(np.mean(counts)) - expect) / expect < 0.07


def _check_coverings(rng) -> bool:
    for trial in range(4):
        n = int(rng.integers(40, 200))
        d = int(rng.integers(1, 5))
        data = Dataset(rng.standard_normal((n, d)) * 3.0)
        k = int(rng.integers(1, 6))
        seed = int(rng.integers(2**32))
        hash_cfg = HashCoveringConfig(k=k, mode="budget", budget=max(k, n // 3), seed=seed)
        if not _covering_holds(data, build_covering_hash(data, hash_cfg)):
            return False
        samp_cfg = SampleCoveringConfig(k=k, seed=seed)
        if not _covering_holds(data, build_covering_sample(data, samp_cfg)):
            return False
    return True


def _check_gonzalez(rng) -> bool:
    from itertools import combinations

    for _ in range(20):
        n = int(rng.integers(4, 10))
        data = Dataset(rng.standard_normal((n, 2)))
        k = int(rng.integers(1, 4))
        got = gonzalez(data, k).cost_on_solve_set
        best = min(cost(data, np.array(c)) for c in combinations(range(n), min(k, n)))
        if got > 2 * best * (1 + 1e-9):
            return False
    return True


def _check_compose(rng) -> bool:
    for _ in range(5):
        a = Dataset(rng.standard_normal((60, 3)))
        b = Dataset(rng.standard_normal((40, 3)))
        seed = int(rng.integers(2**32))
        cfg = HashCoveringConfig(k=3, mode="budget", budget=20, seed=seed)
        ca = build_covering_hash(a, cfg)
        cb = build_covering_hash(b, cfg)
        merged_ds, merged = merge_coverings(a, ca, b, cb)
        if not _covering_holds(merged_ds, merged):
            return False
        inner_cfg = HashCoveringConfig(k=3, mode="budget", budget=10, seed=seed + 1)
        reduced = reduce_covering(a, ca, lambda ds: build_covering_hash(ds, inner_cfg))
        if not _covering_holds(a, reduced):
            return False
    return True


def _check_basics(rng) -> bool:
    if dist([0.0, 0.0], [3.0, 4.0]) != 5.0:
        return False
    if kcenter_1d(np.array([0.0, 1.0, 10.0]), 2) > 1.0:
        return False
    vals = rng.standard_normal((30, 2))
    p, q, r = vals[0], vals[1], vals[2]
    return dist(p, r) <= dist(p, q) + dist(q, r) + 1e-9


SUITES = (
    ("basic distances and 1-d solve", _check_basics),
    ("grid cell diameter", _check_cell_diameter),
    ("grid ball-count mean (d=1)", _check_count_mean),
    ("covering soundness", _check_coverings),
    ("greedy solver 2-approximation", _check_gonzalez),
    ("merge / reduce composition", _check_compose),
)


def run_selftest(seed: int = 0, out=print) -> bool:
    ok = True
    for suite_index, (name, fn) in enumerate(SUITES):
        rng = np.random.default_rng([seed, suite_index])
        passed = fn(rng)
        ok = ok and passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}")
    out("selftest: " + ("all suites passed" if ok else "FAILURES detected"))
    return ok
