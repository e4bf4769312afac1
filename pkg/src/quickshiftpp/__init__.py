"""Quickshift++: cluster-cores from the mutual k-NN graph plus nearest-denser hill-climbing."""

from .dataset import Dataset, DatasetError, load_csv, validate
from .density import DensityEstimate, estimate, higher_density
from .mcores import ClusterCore, CoreSet, build_mutual_knn_edges, extract_cores
from .metrics import adjusted_mutual_info, adjusted_rand_index
from .neighbors import NeighborIndex, build_index
from .pipeline import QuickshiftPP, Result, run
from .quickshift import Clustering, cluster, find_parent

__all__ = [
    "ClusterCore",
    "Clustering",
    "CoreSet",
    "Dataset",
    "DatasetError",
    "DensityEstimate",
    "NeighborIndex",
    "QuickshiftPP",
    "Result",
    "adjusted_mutual_info",
    "adjusted_rand_index",
    "build_index",
    "build_mutual_knn_edges",
    "cluster",
    "estimate",
    "extract_cores",
    "find_parent",
    "higher_density",
    "load_csv",
    "run",
    "validate",
]

__version__ = "0.1.0"
