"""Point-set container, CSV ingestion and pre-clustering validation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np


class DatasetError(ValueError):
    """Raised for malformed input files or datasets unusable for clustering."""


@dataclass(frozen=True)
class Dataset:
    """An ``n x d`` sample with optional integer ground-truth labels.

    ``label_names`` keeps the raw label strings so that ``true_labels[i]``
    indexes into it.
    """

    points: np.ndarray
    true_labels: Optional[np.ndarray] = None
    label_names: Optional[tuple] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DatasetError(f"points must be a non-empty 2-D array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            row, col = np.argwhere(~np.isfinite(pts))[0]
            raise DatasetError(f"non-finite value at row {row}, column {col}")
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.true_labels is not None:
            labels = np.asarray(self.true_labels, dtype=np.int64)
            if labels.shape != (pts.shape[0],):
                raise DatasetError(
                    f"true_labels has length {labels.size}, expected {pts.shape[0]}"
                )
            labels.setflags(write=False)
            object.__setattr__(self, "true_labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def standardized(self) -> "Dataset":
        """Per-feature z-scores; constant columns are centred but not scaled."""
        mean = self.points.mean(axis=0)
        std = self.points.std(axis=0)
        std[std == 0] = 1.0
        return Dataset((self.points - mean) / std, self.true_labels, self.label_names)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _is_int(cell: str) -> bool:
    return cell.strip().lstrip("-").isdigit()


def _resolve_column(selector: Union[int, str], header: Optional[list], width: int) -> int:
    if isinstance(selector, str) and not selector.lstrip("-").isdigit():
        if header is None or selector not in header:
            raise DatasetError(f"label column {selector!r} not found in header")
        return header.index(selector)
    col = int(selector)
    if col < 0:
        col += width
    if not 0 <= col < width:
        raise DatasetError(f"label column {selector} out of range for {width} columns")
    return col


def load_csv(
    path: Union[str, Path],
    label_column: Optional[Union[int, str]] = None,
    delimiter: str = ",",
    header: Optional[bool] = None,
) -> Dataset:
    """Read a delimited text file into a :class:`Dataset`.

    Parameters
    ----------
    path : str or Path
        Input file, one sample per row.
    label_column : int or str, optional
        Column holding ground-truth classes, as a (possibly negative) index
        or a header name. It is removed from the features and mapped to dense
        ids ``0..C-1`` in order of first appearance.
    delimiter : str
        Field separator.
    header : bool, optional
        Force presence/absence of a header row. By default a header is
        assumed when any feature cell of the first row is non-numeric.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row and any(c.strip() for c in row)]
    if not rows:
        raise DatasetError(f"{path}: empty file")

    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DatasetError(f"{path}: row {lineno} has {len(row)} fields, expected {width}")

    if header is None:
        first = rows[0]
        # Column selection by name implies a header.
        if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
            header = True
        else:
            skip = None
            if label_column is not None:
                skip = _resolve_column(label_column, None, width)
            # A cell that is non-numeric in every row is bad data, not a header.
            second = rows[1] if len(rows) > 1 else None
            header = any(
                not _is_number(c) and (second is None or _is_number(second[j]))
                for j, c in enumerate(first)
                if j != skip
            )
    names = [c.strip() for c in rows[0]] if header else None
    body = rows[1:] if header else rows
    first_line = 2 if header else 1
    if not body:
        raise DatasetError(f"{path}: no data rows")

    label_col = None if label_column is None else _resolve_column(label_column, names, width)
    feature_cols = [j for j in range(width) if j != label_col]
    if not feature_cols:
        raise DatasetError(f"{path}: no feature columns")

    points = np.empty((len(body), len(feature_cols)), dtype=np.float64)
    raw_labels = []
    for r, row in enumerate(body):
        for c, j in enumerate(feature_cols):
            cell = row[j].strip()
            try:
                value = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}: cannot parse {cell!r} at row {r + first_line}, column {j}"
                ) from None
            if not np.isfinite(value):
                raise DatasetError(f"{path}: non-finite value at row {r + first_line}, column {j}")
            points[r, c] = value
        if label_col is not None:
            raw_labels.append(row[label_col].strip())

    if label_col is None:
        return Dataset(points)
    ids: dict = {}
    labels = np.array([ids.setdefault(lab, len(ids)) for lab in raw_labels], dtype=np.int64)
    return Dataset(points, labels, tuple(ids))


def save_csv(ds: Dataset, path: Union[str, Path], delimiter: str = ",", precision: int = 17) -> None:
    """Write features (and raw label names, if any) as a header-less CSV.

    ``precision=17`` significant digits round-trips float64 exactly.
    """
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        for i, row in enumerate(ds.points):
            cells = [f"{v:.{precision}g}" for v in row]
            if ds.true_labels is not None:
                lab = ds.true_labels[i]
                cells.append(ds.label_names[lab] if ds.label_names else str(lab))
            writer.writerow(cells)


def validate(ds: Dataset, k: int) -> None:
    """Check that the k-NN density is well defined for every sample.

    Requires ``2 <= k <= n`` and that no point occurs ``k`` or more times
    (counting itself), since that would force a zero k-NN radius.
    """
    if isinstance(k, bool) or int(k) != k:
        raise DatasetError(f"k must be an integer, got {k!r}")
    if k < 2:
        raise DatasetError(f"k must be at least 2, got {k}")
    if k > ds.n:
        raise DatasetError(f"k={k} exceeds the number of samples n={ds.n}")
    _, first, counts = np.unique(ds.points, axis=0, return_index=True, return_counts=True)
    bad = counts >= k
    if bad.any():
        idx = int(first[bad][0])
        raise DatasetError(
            f"point {idx} has {int(counts[bad][0])} identical copies (k={k}); its k-NN radius is zero"
        )


def write_labels(labels: Sequence[int], path: Union[str, Path], header: str = "label") -> None:
    """Single-column label CSV aligned with the input row order."""
    with Path(path).open("w", newline="") as fh:
        fh.write(header + "\n")
        fh.writelines(f"{int(v)}\n" for v in labels)


def read_labels(
    path: Union[str, Path],
    column: Union[int, str] = 0,
    delimiter: str = ",",
    header: Optional[bool] = None,
) -> np.ndarray:
    """Read one column of labels; non-integer labels are mapped to dense ids.

    A header is assumed when the column is selected by name, or when only
    the first row holds a non-integer.
    """
    with Path(path).open(newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if not rows:
        raise DatasetError(f"{path}: empty file")
    width = len(rows[0])
    if isinstance(column, str) and not column.lstrip("-").isdigit():
        col = _resolve_column(column, [c.strip() for c in rows[0]], width)
        rows = rows[1:]
    else:
        col = _resolve_column(column, None, width)
        if header is None:
            header = not _is_int(rows[0][col]) and len(rows) > 1 and _is_int(rows[1][col])
        if header:
            rows = rows[1:]
    try:
        cells = [row[col].strip() for row in rows]
    except IndexError:
        raise DatasetError(f"{path}: ragged rows") from None
    if not cells:
        raise DatasetError(f"{path}: no labels")
    if all(_is_int(c) for c in cells):
        return np.array([int(c) for c in cells], dtype=np.int64)
    ids: dict = {}
    return np.array([ids.setdefault(c, len(ids)) for c in cells], dtype=np.int64)
