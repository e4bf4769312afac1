"""k-NN density estimate and the strict density order shared by every stage."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .neighbors import NeighborIndex


def log_unit_ball_volume(d: int) -> float:
    """log of the volume of the Euclidean unit ball in ``d`` dimensions."""
    return 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1)


def unit_ball_volume(d: int) -> float:
    return math.exp(log_unit_ball_volume(d))


@dataclass(frozen=True)
class DensityEstimate:
    """Per-sample k-NN radius and density, plus the density order.

    ``log_density`` is what all comparisons use; ``density`` is reported
    as-is and may underflow to zero in high dimension. ``order`` lists the
    samples from highest to lowest density, lower index first on ties, and
    ``rank`` is its inverse permutation.
    """

    radius: np.ndarray
    density: np.ndarray
    log_density: np.ndarray
    order: np.ndarray
    rank: np.ndarray
    k: int
    d: int

    @property
    def n(self) -> int:
        return self.radius.shape[0]


def estimate(idx: NeighborIndex, ds: Dataset, k: int = None) -> DensityEstimate:
    """Compute ``f_k(x_i) = k / (n * v_d * r_k(x_i)**d)`` for every sample."""
    d = ds.d
    if k is None:
        k = idx.k
    if k != idx.k:
        raise ValueError(f"index was built with k={idx.k}, not k={k}")
    n = idx.n
    if n != ds.n:
        raise ValueError(f"index covers {n} samples, dataset has {ds.n}")
    radius = np.array(idx.radius, dtype=np.float64)
    log_density = math.log(k) - math.log(n) - log_unit_ball_volume(d) - d * np.log(radius)
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        density = k / (n * unit_ball_volume(d) * radius**d)
    # The closed form breaks down when v_d or r**d leaves the float range.
    bad = ~np.isfinite(density) | (density == 0)
    density[bad] = np.exp(log_density[bad])
    order = np.lexsort((np.arange(n), -log_density))
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    for arr in (radius, density, log_density, order, rank):
        arr.setflags(write=False)
    return DensityEstimate(radius, density, log_density, order, rank, k, d)


def higher_density(de: DensityEstimate, i: int, j: int) -> bool:
    """True iff sample ``i`` precedes ``j``: higher density, or equal and lower index."""
    if i == j:
        raise ValueError("higher_density needs two distinct samples")
    fi, fj = de.log_density[i], de.log_density[j]
    return bool(fi > fj or (fi == fj and i < j))
