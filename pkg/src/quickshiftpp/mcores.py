"""Cluster-core estimation by a top-down sweep over the mutual k-NN graph.

Samples are visited from highest to lowest density. When sample ``x`` with
density ``lam`` is visited, every sample with density at least
``(1 - beta) * lam`` has been added to a union-find over the mutual k-NN
graph. If the component holding ``x`` contains no member of an earlier
core, that whole component becomes a new core.

Both the visit pointer and the insertion pointer only move forward, so the
sweep does ``O(n k)`` unions and finds after the neighbour lists exist.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, NamedTuple, Union

import numpy as np

from .density import DensityEstimate
from .neighbors import NeighborIndex


class MutualKnnEdge(NamedTuple):
    i: int
    j: int
    length: float


@dataclass(frozen=True)
class MutualKnnEdges:
    """Undirected mutual k-NN edges as parallel arrays, ``i < j``, sorted by ``(i, j)``."""

    i: np.ndarray
    j: np.ndarray
    length: np.ndarray
    n: int

    def __len__(self) -> int:
        return self.i.shape[0]

    def __iter__(self) -> Iterator[MutualKnnEdge]:
        for a, b, w in zip(self.i.tolist(), self.j.tolist(), self.length.tolist()):
            yield MutualKnnEdge(a, b, w)

    def adjacency(self) -> List[List[int]]:
        """Neighbour lists of every vertex, ascending."""
        src = np.concatenate([self.i, self.j])
        dst = np.concatenate([self.j, self.i])
        perm = np.lexsort((dst, src))
        src, dst = src[perm], dst[perm]
        bounds = np.searchsorted(src, np.arange(self.n + 1))
        flat = dst.tolist()
        return [flat[bounds[v] : bounds[v + 1]] for v in range(self.n)]


@dataclass(frozen=True)
class ClusterCore:
    """One estimated cluster-core.

    ``threshold`` is ``(1 - beta) * peak_density``; membership is actually
    decided on ``log_threshold`` against the log-densities.
    """

    members: np.ndarray
    peak_index: int
    peak_density: float
    threshold: float
    log_threshold: float

    def __len__(self) -> int:
        return self.members.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ClusterCore):
            return NotImplemented
        return (
            self.peak_index == other.peak_index
            and self.peak_density == other.peak_density
            and self.threshold == other.threshold
            and np.array_equal(self.members, other.members)
        )

    def __hash__(self):
        return hash((self.peak_index, len(self)))


@dataclass(frozen=True)
class CoreSet:
    """Cores in creation order, i.e. by decreasing peak density."""

    cores: tuple
    beta: float
    k: int
    n: int

    def __len__(self) -> int:
        return len(self.cores)

    def __iter__(self):
        return iter(self.cores)

    def __getitem__(self, item) -> ClusterCore:
        return self.cores[item]

    def membership(self) -> np.ndarray:
        """Core id of every sample, ``-1`` outside all cores."""
        out = np.full(self.n, -1, dtype=np.int64)
        for c, core in enumerate(self.cores):
            out[core.members] = c
        return out

    def to_json(self) -> list:
        return [
            {
                "peak_index": core.peak_index,
                "peak_density": core.peak_density,
                "threshold": core.threshold,
                "members": core.members.tolist(),
            }
            for core in self.cores
        ]

    def dump(self, path: Union[str, Path]) -> None:
        payload = {"beta": self.beta, "k": self.k, "n": self.n, "cores": self.to_json()}
        Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly between 0 and 1, got {beta}")
    return beta


def build_mutual_knn_edges(idx: NeighborIndex, de: DensityEstimate) -> MutualKnnEdges:
    """Edges ``(i, j)`` with ``||x_i - x_j|| <= min(r_k(x_i), r_k(x_j))``.

    Every ``j`` within ``r_k(x_i)`` of ``x_i`` is either in the k-NN list of
    ``i`` or recorded as a radius tie, so it is enough to test the list and
    the ties of the smaller endpoint against the other endpoint's radius.
    """
    n, k = idx.ids.shape
    radius = de.radius
    rows = np.repeat(np.arange(n), k - 1)
    cols = idx.ids[:, 1:].ravel()
    lens = idx.dists[:, 1:].ravel()
    if idx.tie_ids.size:
        tie_rows = np.repeat(np.arange(n), np.diff(idx.tie_indptr))
        rows = np.concatenate([rows, tie_rows])
        cols = np.concatenate([cols, idx.tie_ids])
        lens = np.concatenate([lens, radius[tie_rows]])
    keep = (cols > rows) & (lens <= radius[cols])
    rows, cols, lens = rows[keep], cols[keep], lens[keep]
    perm = np.lexsort((cols, rows))
    return MutualKnnEdges(rows[perm], cols[perm], lens[perm], n)


def extract_cores(edges: MutualKnnEdges, de: DensityEstimate, beta: float) -> CoreSet:
    """Sweep the density levels with a union-find and snapshot new components.

    Each union-find root keeps a circular list of its members (spliced in
    O(1) on union) and a flag telling whether any member already belongs to
    a core, so a snapshot costs exactly its size.
    """
    beta = check_beta(beta)
    n = de.n
    log_keep = math.log1p(-beta)
    order = de.order.tolist()
    logf = de.log_density.tolist()
    adj = edges.adjacency()

    parent = list(range(n))
    size = [1] * n
    ring = list(range(n))
    has_core = [False] * n
    active = [False] * n
    in_core = [False] * n

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    cores = []
    front = 0
    for x in order:
        level = logf[x] + log_keep
        while front < n and logf[order[front]] >= level:
            y = order[front]
            active[y] = True
            for z in adj[y]:
                if not active[z]:
                    continue
                ry, rz = find(y), find(z)
                if ry == rz:
                    continue
                if size[ry] < size[rz]:
                    ry, rz = rz, ry
                parent[rz] = ry
                size[ry] += size[rz]
                has_core[ry] = has_core[ry] or has_core[rz]
                ring[ry], ring[rz] = ring[rz], ring[ry]
            front += 1

        if in_core[x]:
            continue
        root = find(x)
        if has_core[root]:
            continue
        members = [root]
        m = ring[root]
        while m != root:
            members.append(m)
            m = ring[m]
        for m in members:
            in_core[m] = True
        has_core[root] = True
        cores.append(_make_core(members, x, de, beta, level))

    return CoreSet(tuple(cores), beta, de.k, n)


def _make_core(members, peak, de: DensityEstimate, beta: float, log_threshold: float) -> ClusterCore:
    arr = np.array(sorted(members), dtype=np.int64)
    arr.setflags(write=False)
    peak_density = float(de.density[peak])
    return ClusterCore(arr, int(peak), peak_density, (1.0 - beta) * peak_density, float(log_threshold))
