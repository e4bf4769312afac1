"""End-to-end Quickshift++ runs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import density, mcores, neighbors, quickshift
from .dataset import Dataset


@dataclass(frozen=True)
class Result:
    dataset: Dataset
    index: neighbors.NeighborIndex
    density: density.DensityEstimate
    edges: mcores.MutualKnnEdges
    cores: mcores.CoreSet
    clustering: quickshift.Clustering

    @property
    def labels(self) -> np.ndarray:
        return self.clustering.labels


def run(ds: Dataset, k: int, beta: float, threads: int = 1, fast_path: bool = True) -> Result:
    mcores.check_beta(beta)
    idx = neighbors.build_index(ds, k, threads=threads)
    de = density.estimate(idx, ds, k)
    edges = mcores.build_mutual_knn_edges(idx, de)
    cores = mcores.extract_cores(edges, de, beta)
    clustering = quickshift.cluster(cores, idx, de, ds, fast_path=fast_path)
    return Result(ds, idx, de, edges, cores, clustering)


class QuickshiftPP:
    """Estimator-style wrapper.

    >>> import numpy as np
    >>> X = np.r_[np.linspace(0, 1, 20), np.linspace(10, 11, 20)][:, None]
    >>> labels = QuickshiftPP(k=5, beta=0.5).fit_predict(X)
    >>> np.bincount(labels).tolist(), len(set(labels[:20]))
    ([20, 20], 1)
    """

    def __init__(self, k: int = 20, beta: float = 0.3, threads: int = 1):
        self.k = k
        self.beta = beta
        self.threads = threads

    def fit(self, X, y=None):
        ds = X if isinstance(X, Dataset) else Dataset(np.asarray(X, dtype=np.float64))
        self.result_ = run(ds, self.k, self.beta, threads=self.threads)
        self.labels_ = self.result_.labels
        self.cores_ = self.result_.cores
        self.n_clusters_ = len(self.cores_)
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).labels_
