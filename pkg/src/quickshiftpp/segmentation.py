"""Image segmentation by clustering (row, col, R, G, B) pixel vectors."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from .dataset import Dataset, write_labels
from .pipeline import run

ImageLike = Union[str, Path, Image.Image, np.ndarray]


class ImageError(ValueError):
    pass


@dataclass(frozen=True)
class PixelFeatures:
    height: int
    width: int
    features: np.ndarray

    @property
    def colors(self) -> np.ndarray:
        return self.features[:, 2:]


def load_rgb(img: ImageLike) -> np.ndarray:
    """``H x W x 3`` uint8 array; alpha is dropped and grey is replicated."""
    if isinstance(img, np.ndarray):
        arr = np.asarray(img)
        if arr.ndim == 2:
            arr = np.repeat(arr[:, :, None], 3, axis=2)
        if arr.ndim != 3 or arr.shape[2] not in (3, 4):
            raise ImageError(f"unsupported image array shape {arr.shape}")
        if arr.dtype != np.uint8:
            raise ImageError(f"expected 8-bit image data, got {arr.dtype}")
        return np.ascontiguousarray(arr[:, :, :3])
    if not isinstance(img, Image.Image):
        try:
            with Image.open(img) as opened:
                opened.load()
                img = opened.convert("RGB")
        except (UnidentifiedImageError, OSError, SyntaxError) as exc:
            raise ImageError(f"cannot read image {img}: {exc}") from exc
    return np.asarray(img.convert("RGB"), dtype=np.uint8)


def image_to_features(img: ImageLike, spatial_scale: float = 1.0) -> PixelFeatures:
    if spatial_scale <= 0:
        raise ValueError(f"spatial_scale must be positive, got {spatial_scale}")
    rgb = load_rgb(img)
    h, w, _ = rgb.shape
    rows, cols = np.divmod(np.arange(h * w), w)
    feats = np.empty((h * w, 5), dtype=np.float64)
    feats[:, 0] = rows * spatial_scale
    feats[:, 1] = cols * spatial_scale
    feats[:, 2:] = rgb.reshape(-1, 3)
    return PixelFeatures(h, w, feats)


def features_to_image(pf: PixelFeatures) -> np.ndarray:
    return pf.colors.reshape(pf.height, pf.width, 3).astype(np.uint8)


def render_segments(rgb: np.ndarray, label_map: np.ndarray) -> np.ndarray:
    """Paint each segment with the mean colour of its pixels."""
    flat = rgb.reshape(-1, 3).astype(np.float64)
    labels = label_map.ravel()
    n_seg = labels.max() + 1
    sums = np.zeros((n_seg, 3))
    np.add.at(sums, labels, flat)
    counts = np.bincount(labels, minlength=n_seg)[:, None]
    means = np.rint(sums / np.maximum(counts, 1)).astype(np.uint8)
    return means[labels].reshape(rgb.shape)


def segment(
    img: ImageLike,
    k: int,
    beta: float = 0.9,
    spatial_scale: float = 1.0,
    max_side: Optional[int] = None,
    threads: int = 1,
) -> Tuple[np.ndarray, np.ndarray]:
    """Segment an image; returns ``(label_map, rendered)``.

    With ``max_side`` the image is first box-downscaled so that neither side
    exceeds it, and the label map is brought back to full size by
    nearest-neighbour lookup.
    """
    rgb = load_rgb(img)
    h, w, _ = rgb.shape
    work = rgb
    if max_side is not None and max(h, w) > max_side:
        factor = max_side / max(h, w)
        size = (max(1, round(w * factor)), max(1, round(h * factor)))
        work = np.asarray(Image.fromarray(rgb).resize(size, Image.BOX))
    pf = image_to_features(work, spatial_scale)
    labels = run(Dataset(pf.features), k, beta, threads=threads).labels
    label_map = labels.reshape(pf.height, pf.width)
    if (pf.height, pf.width) != (h, w):
        r = np.minimum((np.arange(h) * pf.height) // h, pf.height - 1)
        c = np.minimum((np.arange(w) * pf.width) // w, pf.width - 1)
        label_map = label_map[r[:, None], c[None, :]]
    return label_map, render_segments(rgb, label_map)


def save_segmentation(label_map: np.ndarray, rendered: np.ndarray, png_path, csv_path=None) -> None:
    Image.fromarray(rendered).save(png_path, format="PNG")
    if csv_path is not None:
        write_labels(label_map.ravel(), csv_path)
