"""Chance-adjusted agreement scores between two labelings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int


def contingency_table(pred, truth) -> ContingencyTable:
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.ndim != 1 or truth.ndim != 1:
        raise ValueError("label arrays must be one-dimensional")
    if pred.shape != truth.shape:
        raise ValueError(f"label arrays differ in length: {pred.size} vs {truth.size}")
    if pred.size < 2:
        raise ValueError("at least two samples are needed to compare labelings")
    _, p = np.unique(pred, return_inverse=True)
    _, t = np.unique(truth, return_inverse=True)
    counts = np.zeros((p.max() + 1, t.max() + 1), dtype=np.int64)
    np.add.at(counts, (p, t), 1)
    return ContingencyTable(counts, counts.sum(axis=1), counts.sum(axis=0), int(pred.size))


def _pairs(x: np.ndarray) -> int:
    x = x.astype(object)
    return int((x * (x - 1) // 2).sum())


def adjusted_rand_index(pred, truth) -> float:
    """Adjusted Rand index from exact integer pair counts.

    The only zero-denominator cases are two identical trivial partitions
    (one cluster each, or all singletons on both sides); those score 1.
    """
    table = contingency_table(pred, truth)
    index = _pairs(table.counts.ravel())
    a = _pairs(table.row_sums)
    b = _pairs(table.col_sums)
    total = table.n * (table.n - 1) // 2
    # Scale by 2 * total so every term stays an integer.
    numer = 2 * (total * index - a * b)
    denom = total * (a + b) - 2 * a * b
    if denom == 0:
        return 1.0
    return numer / denom


def _entropy(sums: np.ndarray, n: int) -> float:
    p = sums[sums > 0] / n
    return float(-(p * np.log(p)).sum())


def mutual_info(table: ContingencyTable) -> float:
    nz = table.counts > 0
    nij = table.counts[nz].astype(np.float64)
    a = np.broadcast_to(table.row_sums[:, None], table.counts.shape)[nz]
    b = np.broadcast_to(table.col_sums[None, :], table.counts.shape)[nz]
    n = table.n
    return float((nij / n * (np.log(n) + np.log(nij) - np.log(a) - np.log(b))).sum())


def expected_mutual_info(table: ContingencyTable) -> float:
    """Expected mutual information under the hypergeometric permutation model.

    Every probability is assembled from a log-factorial table, which keeps
    the computation finite for ``n`` in the tens of thousands.
    """
    n = table.n
    a = table.row_sums.astype(np.int64)
    b = table.col_sums.astype(np.int64)
    lfact = gammaln(np.arange(n + 1, dtype=np.float64) + 1)
    log_n = np.log(n)
    total = 0.0
    for ai in a:
        for bj in b:
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if lo > hi:
                continue
            nij = np.arange(lo, hi + 1)
            log_p = (
                lfact[ai] + lfact[bj] + lfact[n - ai] + lfact[n - bj]
                - lfact[n] - lfact[nij] - lfact[ai - nij] - lfact[bj - nij]
                - lfact[n - ai - bj + nij]
            )
            term = nij / n * (log_n + np.log(nij) - np.log(ai) - np.log(bj))
            total += float((term * np.exp(log_p)).sum())
    return total


def adjusted_mutual_info(pred, truth) -> float:
    """Adjusted mutual information, arithmetic-mean normalisation, natural log.

    Identical partitions (up to relabelling) score exactly 1.0 and a
    single-cluster side against a split one scores exactly 0.0. When the
    normaliser vanishes otherwise the score is 0.0.
    """
    table = contingency_table(pred, truth)
    rows, cols = table.counts.shape
    if rows == cols == np.count_nonzero(table.counts):
        return 1.0
    if rows == 1 or cols == 1:
        return 0.0
    mi = mutual_info(table)
    emi = expected_mutual_info(table)
    h_pred = _entropy(table.row_sums, table.n)
    h_true = _entropy(table.col_sums, table.n)
    denom = 0.5 * (h_pred + h_true) - emi
    if abs(denom) < 1e-15:
        return 0.0
    return float((mi - emi) / denom)
