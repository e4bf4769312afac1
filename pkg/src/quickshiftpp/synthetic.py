"""Seeded toy datasets in the spirit of the usual clustering demos."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .dataset import Dataset


def two_rings(
    n_inner: int = 300,
    n_outer: int = 600,
    radii: Sequence[float] = (1.0, 2.0),
    jitter: float = 0.0,
    seed: int = 0,
) -> Dataset:
    """Two concentric circles with evenly spaced angles and radial jitter.

    Angles start at a random phase per ring; ``jitter`` is the standard
    deviation of the radial noise.
    """
    rng = np.random.default_rng(seed)
    parts, labels = [], []
    for label, (count, radius) in enumerate(zip((n_inner, n_outer), radii)):
        theta = rng.uniform(0, 2 * np.pi) + 2 * np.pi * np.arange(count) / count
        r = radius + jitter * rng.standard_normal(count)
        parts.append(np.c_[r * np.cos(theta), r * np.sin(theta)])
        labels.append(np.full(count, label))
    return Dataset(np.concatenate(parts), np.concatenate(labels))


def gaussian_blobs(
    centers: Sequence[Sequence[float]],
    scales: Sequence[float],
    sizes: Sequence[int],
    seed: int = 0,
    max_sigma: Optional[float] = None,
) -> Dataset:
    """Isotropic Gaussian clusters, one per centre.

    With ``max_sigma`` each cluster is truncated: draws farther than
    ``max_sigma * scale`` from their centre are redrawn, so no stray tail
    sample sits far away from the rest of its cluster.
    """
    rng = np.random.default_rng(seed)
    centers = np.asarray(centers, dtype=np.float64)
    parts, labels = [], []
    for label, (mu, s, m) in enumerate(zip(centers, scales, sizes)):
        z = rng.standard_normal((m, centers.shape[1]))
        if max_sigma is not None:
            far = np.linalg.norm(z, axis=1) > max_sigma
            while far.any():
                z[far] = rng.standard_normal((int(far.sum()), centers.shape[1]))
                far = np.linalg.norm(z, axis=1) > max_sigma
        parts.append(mu + s * z)
        labels.append(np.full(m, label))
    return Dataset(np.concatenate(parts), np.concatenate(labels))


def three_density_blobs(n_per_blob: int = 300, seed: int = 0, max_sigma: Optional[float] = None) -> Dataset:
    """Three well-separated 2-D Gaussians whose densities differ by ~16x."""
    return gaussian_blobs(
        centers=[(0.0, 0.0), (12.0, 0.0), (6.0, 12.0)],
        scales=[0.5, 1.0, 2.0],
        sizes=[n_per_blob] * 3,
        seed=seed,
        max_sigma=max_sigma,
    )


def gaussian_mixture(n: int, n_components: int, d: int = 2, seed: int = 0) -> Dataset:
    """Random mixture: uniform centres in a box, random scales and weights."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-5, 5, size=(n_components, d))
    scales = rng.uniform(0.3, 1.5, size=n_components)
    weights = rng.dirichlet(np.ones(n_components) * 2)
    labels = rng.choice(n_components, size=n, p=weights)
    points = centers[labels] + scales[labels, None] * rng.standard_normal((n, d))
    return Dataset(points, labels)
