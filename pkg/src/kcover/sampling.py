"""Covering construction by repeated uniform sampling.

At a candidate radius tau, each round draws a batch of uniform samples from
the not-yet-covered pool, builds a nearest-member oracle on just that batch,
and removes every pool point whose estimated distance to the batch is at
most 2 * beta * tau. When tau is at least the true cost, a batch of
Theta(k log n) samples halves the pool with constant probability, so a
logarithmic number of rounds empties it; the union of all batches is then a
covering with radius bound 2 * beta * tau. The outer loop sweeps tau over
the same geometric grid the hash construction uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coarse import coarse_approx
from .core import (
    STREAM_ROUND_SAMPLE,
    ConstructionFailedError,
    Dataset,
    rng_stream,
)
from .covering import CoveringResult
from .neighbor import build_oracle

_ROUNDS_PER_LOG = 5


@dataclass(frozen=True)
class SampleCoveringConfig:
    k: int
    beta: float = 2.0
    sample_constant: float = 3.0  # samples per round = ceil(c * k * ln n)
    oracle_kind: str = "exact"    # "exact" | "lsh"
    gamma: float | None = None
    seed: int = 0


def sample_with_replacement(pool, size: int, seed: int, stream=()) -> np.ndarray:
    """Uniform draws with replacement from a pool of row indices.

    Returns the distinct draws as a sorted index array (duplicates collapse).
    """
    arr = np.asarray(pool, dtype=np.int64).ravel()
    if arr.size == 0:
        raise ValueError("pool must be nonempty")
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = rng_stream(seed, STREAM_ROUND_SAMPLE, *stream)
    draws = rng.integers(0, arr.size, size=size)
    return np.unique(arr[draws])


def _round_budget(n: int) -> int:
    return _ROUNDS_PER_LOG * math.ceil(math.log2(max(n, 2)))


def _batch_size(n: int, k: int, c: float) -> int:
    return max(1, math.ceil(c * k * math.log(max(n, 2))))


def run_sampling_rounds(dataset: Dataset, tau: float, cfg: SampleCoveringConfig,
                        tau_index: int = 0):
    """Inner loop at one fixed tau.

    Returns (subset or None, accumulated sample count); None means the pool
    did not empty within the round budget at this tau.
    """
    n = dataset.n
    m = _batch_size(n, cfg.k, cfg.sample_constant)
    removal_radius = 2.0 * cfg.beta * tau
    pool = np.arange(n, dtype=np.int64)
    batches = []
    total = 0
    for j in range(_round_budget(n)):
        batch = sample_with_replacement(pool, m, cfg.seed, stream=(tau_index, j))
        batches.append(batch)
        total += batch.shape[0]
        oracle = build_oracle(dataset, batch, kind=cfg.oracle_kind,
                              beta=cfg.beta, seed=_oracle_seed(cfg.seed, tau_index, j))
        _, dists = oracle.query_many(dataset.coords[pool])
        pool = pool[dists > removal_radius]
        if pool.size == 0:
            return np.unique(np.concatenate(batches)), total
    return None, total


def _oracle_seed(seed: int, tau_index: int, j: int) -> int:
    # distinct deterministic 64-bit seed per (tau, round)
    return int(rng_stream(seed, STREAM_ROUND_SAMPLE, tau_index, j, 1).integers(0, 2**63))


def build_covering_sample(dataset: Dataset, cfg: SampleCoveringConfig) -> CoveringResult:
    """Sweep tau ascending and return the first radius whose rounds converge."""
    n = dataset.n
    if not 1 <= cfg.k <= n:
        raise ValueError("k must lie in [1, n]")
    if cfg.beta < 1:
        raise ValueError("beta must be >= 1")
    if cfg.sample_constant <= 0:
        raise ValueError("sample_constant must be positive")

    est = coarse_approx(dataset, cfg.k, cfg.seed, gamma=cfg.gamma)
    apx, gamma = est.apx, est.gamma
    sizes: list[int] = []

    if apx == 0.0:
        # duplicate-heavy data: at tau = 0 the rounds remove exact copies of
        # the samples, which suffices when few distinct rows remain
        subset, total = run_sampling_rounds(dataset, 0.0, cfg, tau_index=0)
        sizes.append(total if subset is None else subset.shape[0])
        if subset is not None:
            return CoveringResult(subset=subset, radius_bound=0.0, tau_used=0.0,
                                  iterations=1, sizes=tuple(sizes))
        spread = float((dataset.coords.max(axis=0) - dataset.coords.min(axis=0)).max())
        if spread == 0.0:
            raise ConstructionFailedError("rounds did not converge on identical rows",
                                          sizes=sizes)
        apx = spread

    n_iters = math.ceil(math.log2(gamma))
    for i in range(n_iters + 1):
        tau = (apx / gamma) * float(2**i)
        subset, total = run_sampling_rounds(dataset, tau, cfg, tau_index=i + 1)
        sizes.append(total if subset is None else subset.shape[0])
        if subset is not None:
            return CoveringResult(subset=subset,
                                  radius_bound=2.0 * cfg.beta * tau,
                                  tau_used=float(tau), iterations=i + 1,
                                  sizes=tuple(sizes))
    raise ConstructionFailedError(
        f"sampling rounds never emptied the pool within {n_iters + 1} radii",
        sizes=sizes)
