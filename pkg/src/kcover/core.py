"""Point-set container, Euclidean distances, and the max-of-min clustering objective.

Distances are computed on squared values internally; square roots are taken
only at API boundaries, so exact zeros for coincident rows survive.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64

# Stream tags: every randomized operation derives its generator from
# (master seed, tag, ...indices), so one seed reproduces the whole run
# and no two operations share a stream.
STREAM_GRID_SHIFT = 1
STREAM_JL = 2
STREAM_PROJECT_1D = 3
STREAM_UNIFORM_SAMPLE = 4
STREAM_ROUND_SAMPLE = 5
STREAM_LSH = 6
STREAM_SYNTH = 7
STREAM_SWEEP = 8
STREAM_SCALE_FILTER = 9


class ConstructionFailedError(Exception):
    """A covering construction exhausted its scale sweep without fitting.

    Carries the per-scale subset sizes observed before giving up.
    """

    def __init__(self, message, sizes=()):
        super().__init__(message)
        self.sizes = tuple(int(s) for s in sizes)


def rng_stream(seed, *path):
    """Deterministic generator for one named operation.

    Seeded from the 64-bit master seed plus an integer path; identical
    inputs reproduce bit-identical streams (numpy PCG64, ziggurat normals).
    """
    seed = int(seed)
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng([seed, *(int(p) for p in path)])


class Dataset:
    """Immutable n x d float64 matrix; points are addressed by row index."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        arr = np.array(coords, dtype=np.float64, order="C")
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("coords must be a nonempty 2-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coords must contain only finite values")
        arr.setflags(write=False)
        self.coords = arr

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    def row(self, i: int) -> np.ndarray:
        return self.coords[i]

    def take(self, indices) -> "Dataset":
        """New Dataset from the given rows (copies the selected coordinates)."""
        idx = index_subset(indices, self.n)
        return Dataset(self.coords[idx])

    def __repr__(self):
        return f"Dataset(n={self.n}, d={self.d})"


def index_subset(indices, n) -> np.ndarray:
    """Canonical row-index subset: sorted, distinct, int64, all in [0, n)."""
    idx = np.asarray(indices, dtype=np.int64).ravel()
    if idx.size == 0:
        raise ValueError("index subset must be nonempty")
    if idx.min() < 0 or idx.max() >= n:
        raise ValueError(f"indices must lie in [0, {n})")
    return np.unique(idx)


def dist(p, q) -> float:
    p = np.asarray(p, dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    if p.shape != q.shape:
        raise ValueError("points must have equal dimension")
    diff = p - q
    return float(np.sqrt(np.dot(diff, diff)))


def sq_dists_to_point(coords: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Squared distances from every row of coords to one point."""
    diff = coords - point
    return np.einsum("ij,ij->i", diff, diff)


def dist_to_set(point, subset, dataset: Dataset):
    """Distance from a point to its nearest member of a row subset.

    Returns (distance, original row index of the nearest member); ties are
    broken toward the lowest original index.
    """
    idx = np.asarray(subset, dtype=np.int64).ravel()
    if idx.size == 0:
        raise ValueError("subset must be nonempty")
    if idx.min() < 0 or idx.max() >= dataset.n:
        raise ValueError("subset indices out of range")
    p = np.asarray(point, dtype=np.float64).ravel()
    if p.shape[0] != dataset.d:
        raise ValueError("point dimension does not match dataset")
    d2 = sq_dists_to_point(dataset.coords[idx], p)
    best = d2.min()
    winner = int(idx[d2 == best].min())
    return float(np.sqrt(best)), winner


def _center_rows(dataset: Dataset, centers) -> np.ndarray:
    """Resolve centers given either as row indices or as explicit coordinates."""
    arr = np.asarray(centers)
    if arr.dtype.kind in "iu":
        idx = arr.ravel().astype(np.int64)
        if idx.size == 0:
            raise ValueError("centers must be nonempty")
        if idx.min() < 0 or idx.max() >= dataset.n:
            raise ValueError("center indices out of range")
        return dataset.coords[idx]
    rows = np.asarray(arr, dtype=np.float64)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] != dataset.d:
        raise ValueError("explicit centers must be a nonempty 2-D array matching d")
    return rows


def min_sq_dists(dataset: Dataset, centers) -> np.ndarray:
    """Per-row squared distance to the nearest center.

    Centers are processed in order with strict-improvement updates, so the
    implied nearest-center assignment breaks ties toward the earliest center.
    """
    rows = _center_rows(dataset, centers)
    best = sq_dists_to_point(dataset.coords, rows[0])
    for c in rows[1:]:
        np.minimum(best, sq_dists_to_point(dataset.coords, c), out=best)
    return best


def cost(dataset: Dataset, centers) -> float:
    """Max over all rows of the distance to the nearest center."""
    return float(np.sqrt(min_sq_dists(dataset, centers).max()))
