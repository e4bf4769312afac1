"""Exact k-nearest-neighbour index over a :class:`~quickshiftpp.dataset.Dataset`."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .dataset import Dataset, validate

#: Above this dimension kd-tree pruning stops paying off; use blocked brute force.
TREE_MAX_DIM = 8

_SLACK = 1e-9
_BLOCK_BYTES = 64 * 2**20


def point_distances(points: np.ndarray, i: int, others: np.ndarray) -> np.ndarray:
    """Euclidean distances from ``points[i]`` to ``points[others]``.

    Every distance in the package goes through this formula so that ties are
    decided identically everywhere.
    """
    diff = points[others] - points[i]
    return np.sqrt((diff * diff).sum(axis=1))


@dataclass(frozen=True)
class NeighborIndex:
    """Per-point k nearest neighbours, self first, then by (distance, index).

    Attributes
    ----------
    ids, dists : ndarray, shape (n, k)
        Neighbour indices and their distances. ``dists[:, -1]`` is the k-NN
        radius.
    tie_indptr, tie_ids : ndarray
        CSR layout of the points that lie exactly at the k-NN radius of a
        point but did not fit in its list. They matter for the mutual k-NN
        edge predicate, which is stated in terms of distances.
    """

    ids: np.ndarray
    dists: np.ndarray
    tie_indptr: np.ndarray
    tie_ids: np.ndarray

    @property
    def n(self) -> int:
        return self.ids.shape[0]

    @property
    def k(self) -> int:
        return self.ids.shape[1]

    @property
    def radius(self) -> np.ndarray:
        return self.dists[:, -1]

    def ties(self, i: int) -> np.ndarray:
        return self.tie_ids[self.tie_indptr[i] : self.tie_indptr[i + 1]]


def _refine(points, rows, cand, k):
    """Exact ordering of candidate blocks: self first, then (distance, index)."""
    diff = points[cand] - points[rows][:, None, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    # lexsort's primary key is the last one.
    perm = np.lexsort((cand, dist, cand != rows[:, None]), axis=-1)
    cand = np.take_along_axis(cand, perm, axis=-1)
    dist = np.take_along_axis(dist, perm, axis=-1)
    return cand[:, :k], dist[:, :k]


def _refine_one(points, i, cand, k):
    dist = point_distances(points, i, cand)
    perm = np.lexsort((cand, dist, cand != i))
    cand, dist = cand[perm], dist[perm]
    extra = cand[k:][dist[k:] == dist[k - 1]]
    return cand[:k], dist[:k], extra


def _tree_blocks(points, k, threads):
    """Split samples into unambiguous ``k``-sets and ones needing a radius query."""
    n = points.shape[0]
    tree = cKDTree(points)
    m = min(k + 1, n)
    dist, ids = tree.query(points, k=m, workers=threads)
    dist = dist.reshape(n, m)
    ids = ids.reshape(n, m).astype(np.int64)
    if m == k:
        clear = np.zeros(n, dtype=bool)
    else:
        clear = dist[:, k] > dist[:, k - 1] * (1 + _SLACK) + np.finfo(float).tiny
    rows = np.arange(n)
    ambiguous = rows[~clear]
    radius = dist[ambiguous, k - 1] * (1 + _SLACK) + np.finfo(float).tiny
    balls = tree.query_ball_point(points[ambiguous], radius, workers=threads) if ambiguous.size else []
    return rows[clear], ids[clear, :k], ambiguous, [np.asarray(b, dtype=np.int64) for b in balls]


def _brute_blocks(points, k, threads):
    n = points.shape[0]
    sq = np.einsum("ij,ij->i", points, points)
    block = max(1, min(n, _BLOCK_BYTES // (8 * n)))
    m = min(k + 1, n)
    clear_rows, clear_ids, amb_rows, amb_cands = [], [], [], []
    for start in range(0, n, block):
        stop = min(n, start + block)
        d2 = sq[start:stop, None] + sq[None, :] - 2.0 * (points[start:stop] @ points.T)
        part = np.argpartition(d2, m - 1, axis=1)[:, :m]
        pd2 = np.take_along_axis(d2, part, axis=1)
        perm = np.argsort(pd2, axis=1)
        part = np.take_along_axis(part, perm, axis=1)
        pd2 = np.take_along_axis(pd2, perm, axis=1)
        kth = pd2[:, k - 1]
        # Gram-form round-off is relative to the squared norms involved.
        slack = _SLACK * (np.abs(kth) + sq[start:stop] + sq.max()) + np.finfo(float).tiny
        clear = pd2[:, k] > kth + slack if m > k else np.zeros(stop - start, dtype=bool)
        rows = np.arange(start, stop)
        clear_rows.append(rows[clear])
        clear_ids.append(part[clear, :k])
        for r in np.flatnonzero(~clear):
            amb_rows.append(start + r)
            amb_cands.append(np.flatnonzero(d2[r] <= kth[r] + slack[r]))
    return (
        np.concatenate(clear_rows),
        np.concatenate(clear_ids),
        np.asarray(amb_rows, dtype=np.int64),
        amb_cands,
    )


def build_index(ds: Dataset, k: int, tree_max_dim: int = TREE_MAX_DIM, threads: int = 1) -> NeighborIndex:
    """Exact k-NN lists for every sample, including the sample itself.

    A kd-tree (or, for ``d > tree_max_dim``, a blocked Gram-matrix scan)
    proposes the ``k + 1`` closest candidates. Where the k-th and (k+1)-th
    are separated by more than round-off, the first ``k`` are the answer;
    otherwise every point within the (padded) radius is gathered. The final
    order is always decided on exactly recomputed distances.
    """
    validate(ds, k)
    points = ds.points
    n = ds.n
    ids = np.empty((n, k), dtype=np.int64)
    dists = np.empty((n, k), dtype=np.float64)
    tie_counts = np.zeros(n, dtype=np.int64)
    tie_chunks = []

    source = _tree_blocks if ds.d <= tree_max_dim else _brute_blocks
    clear_rows, clear_ids, amb_rows, amb_cands = source(points, k, threads)
    step = max(1, _BLOCK_BYTES // (8 * k * (ds.d + 4)))
    for start in range(0, clear_rows.size, step):
        rows = clear_rows[start : start + step]
        ids[rows], dists[rows] = _refine(points, rows, clear_ids[start : start + step], k)
    for i, cand in zip(amb_rows.tolist(), amb_cands):
        ids[i], dists[i], extra = _refine_one(points, i, cand, k)
        if extra.size:
            tie_counts[i] = extra.size
            tie_chunks.append(extra)

    tie_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(tie_counts, out=tie_indptr[1:])
    tie_ids = np.concatenate(tie_chunks) if tie_chunks else np.empty(0, dtype=np.int64)
    for arr in (ids, dists, tie_indptr, tie_ids):
        arr.setflags(write=False)
    return NeighborIndex(ids, dists, tie_indptr, tie_ids)
