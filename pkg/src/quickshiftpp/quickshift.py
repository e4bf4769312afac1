"""Assign every sample to a cluster-core by climbing to denser samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .density import DensityEstimate
from .mcores import CoreSet
from .neighbors import NeighborIndex, point_distances


@dataclass(frozen=True)
class Clustering:
    """Cluster labels (core creation order) and the hill-climbing forest.

    ``parent[i]`` is ``-1`` for core members, otherwise the nearest sample
    that comes earlier in the density order.
    """

    labels: np.ndarray
    parent: np.ndarray
    cores: CoreSet

    @property
    def n_clusters(self) -> int:
        return len(self.cores)


def _exhaustive_parent(i: int, points: np.ndarray, de: DensityEstimate) -> int:
    higher = de.order[: de.rank[i]]
    dist = point_distances(points, i, higher)
    best = dist.min()
    return int(higher[dist == best].min())


def find_parent(
    i: int, idx: NeighborIndex, de: DensityEstimate, ds: Dataset, fast_path: bool = True
) -> int:
    """Nearest sample of higher density than ``i``; lowest index on distance ties.

    With ``fast_path`` the k-NN list is consulted first. Its first denser
    entry is returned only when it lies strictly inside the k-NN radius, in
    which case no sample outside the list can be as close.
    """
    if de.rank[i] == 0:
        raise ValueError(f"sample {i} has the highest density and no parent")
    if fast_path:
        nbrs = idx.ids[i]
        denser = np.flatnonzero(de.rank[nbrs] < de.rank[i])
        if denser.size and idx.dists[i, denser[0]] < idx.dists[i, -1]:
            return int(nbrs[denser[0]])
    return _exhaustive_parent(i, ds.points, de)


def find_parents(
    candidates: np.ndarray, idx: NeighborIndex, de: DensityEstimate, ds: Dataset, fast_path: bool = True
) -> np.ndarray:
    """Vectorised :func:`find_parent` over an array of samples."""
    candidates = np.asarray(candidates, dtype=np.int64)
    out = np.full(candidates.shape[0], -1, dtype=np.int64)
    if candidates.size == 0:
        return out
    if np.any(de.rank[candidates] == 0):
        raise ValueError("the highest-density sample has no parent")
    slow = np.ones(candidates.shape[0], dtype=bool)
    if fast_path:
        nbrs = idx.ids[candidates]
        denser = de.rank[nbrs] < de.rank[candidates][:, None]
        first = denser.argmax(axis=1)
        rows = np.arange(candidates.shape[0])
        hit = denser[rows, first] & (idx.dists[candidates, first] < idx.dists[candidates, -1])
        out[hit] = nbrs[rows[hit], first[hit]]
        slow = ~hit
    for pos in np.flatnonzero(slow):
        out[pos] = _exhaustive_parent(int(candidates[pos]), ds.points, de)
    return out


def cluster(
    cores: CoreSet, idx: NeighborIndex, de: DensityEstimate, ds: Dataset, fast_path: bool = True
) -> Clustering:
    """Label core members by their core and everyone else by where they climb to."""
    labels = cores.membership()
    outside = np.flatnonzero(labels < 0)
    parent = np.full(de.n, -1, dtype=np.int64)
    parent[outside] = find_parents(outside, idx, de, ds, fast_path)

    # A parent always precedes its child in the density order, so one pass
    # in that order resolves whole chains.
    lab = labels.tolist()
    par = parent.tolist()
    for x in de.order.tolist():
        if lab[x] < 0:
            lab[x] = lab[par[x]]
    labels = np.array(lab, dtype=np.int64)
    labels.setflags(write=False)
    parent.setflags(write=False)
    return Clustering(labels, parent, cores)


def write_forest(clustering: Clustering, path) -> None:
    """``index,parent`` rows; ``-1`` marks core members."""
    with open(path, "w") as fh:
        fh.write("index,parent\n")
        fh.writelines(f"{i},{p}\n" for i, p in enumerate(clustering.parent.tolist()))
