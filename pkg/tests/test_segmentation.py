import numpy as np
import pytest
from PIL import Image

from quickshiftpp.segmentation import (
    ImageError,
    PixelFeatures,
    features_to_image,
    image_to_features,
    load_rgb,
    render_segments,
    save_segmentation,
    segment,
)


def two_blocks(h=16, w=20, split=9):
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[:, :split] = (230, 30, 30)
    img[:, split:] = (20, 40, 210)
    mask = np.zeros((h, w), dtype=bool)
    mask[:, split:] = True
    return img, mask


def test_black_square_features():
    pf = image_to_features(np.zeros((2, 2, 3), dtype=np.uint8))
    assert pf.features.tolist() == [[0, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [1, 1, 0, 0, 0]]


def test_spatial_scale():
    img = np.array([[[255, 0, 0], [0, 255, 0], [0, 0, 255]]], dtype=np.uint8)
    pf = image_to_features(img, spatial_scale=2)
    assert pf.features[:, :2].tolist() == [[0, 0], [0, 2], [0, 4]]
    assert pf.colors.tolist() == img.reshape(-1, 3).tolist()
    with pytest.raises(ValueError):
        image_to_features(img, spatial_scale=0)


def test_color_round_trip():
    img = np.random.default_rng(0).integers(0, 256, size=(7, 5, 3), dtype=np.uint8)
    back = features_to_image(image_to_features(img, spatial_scale=3.5))
    assert back.dtype == np.uint8
    np.testing.assert_array_equal(back, img)


def test_two_blocks_are_two_segments():
    img, mask = two_blocks()
    label_map, rendered = segment(img, k=50, beta=0.9)
    assert label_map.shape == mask.shape
    assert len(np.unique(label_map)) == 2
    assert len(np.unique(label_map[mask])) == 1 and len(np.unique(label_map[~mask])) == 1
    np.testing.assert_array_equal(rendered, img)


def test_uniform_image_is_one_segment():
    img = np.full((12, 12, 3), 128, dtype=np.uint8)
    label_map, rendered = segment(img, k=50, beta=0.9)
    assert np.unique(label_map).tolist() == [0]
    np.testing.assert_array_equal(rendered, img)


def test_render_uses_segment_means():
    rgb = np.array([[[0, 0, 0], [10, 20, 30], [200, 200, 200]]], dtype=np.uint8)
    out = render_segments(rgb, np.array([[0, 0, 1]]))
    assert out.tolist() == [[[5, 10, 15], [5, 10, 15], [200, 200, 200]]]


def test_grey_and_alpha_inputs(tmp_path):
    grey = np.arange(12, dtype=np.uint8).reshape(3, 4)
    assert load_rgb(grey).shape == (3, 4, 3)
    assert np.all(load_rgb(grey)[..., 2] == grey)
    rgba = np.zeros((2, 2, 4), dtype=np.uint8)
    rgba[..., 0] = 9
    assert load_rgb(rgba).tolist() == [[[9, 0, 0]] * 2] * 2
    Image.fromarray(rgba, "RGBA").save(tmp_path / "a.png")
    assert load_rgb(tmp_path / "a.png").shape == (2, 2, 3)
    assert load_rgb(Image.fromarray(grey)).shape == (3, 4, 3)


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.png"
    bad.write_bytes(b"\x89PNG\r\n\x1a\nnot really")
    with pytest.raises(ImageError, match="cannot read"):
        load_rgb(bad)
    with pytest.raises(ImageError):
        load_rgb(np.zeros((2, 2, 3), dtype=np.float32))
    with pytest.raises(ImageError):
        load_rgb(np.zeros((2, 2, 2), dtype=np.uint8))


def test_downscaled_segmentation_keeps_full_size():
    img, mask = two_blocks(60, 80, 40)
    label_map, rendered = segment(img, k=30, beta=0.9, max_side=20)
    assert label_map.shape == (60, 80) and rendered.shape == (60, 80, 3)
    assert len(np.unique(label_map)) == 2
    assert len(np.unique(label_map[mask])) == 1


def test_row_permutation_is_consistent():
    img, _ = two_blocks(10, 12, 5)
    img[::3, 5:] = (20, 200, 40)
    a, _ = segment(img, k=20, beta=0.9)
    flipped, _ = segment(img[::-1], k=20, beta=0.9)
    # The same partition comes back, mirrored.
    pairs = set(zip(a.ravel().tolist(), flipped[::-1].ravel().tolist()))
    assert len(pairs) == len(np.unique(a)) == len(np.unique(flipped))


def test_save_segmentation(tmp_path):
    img, _ = two_blocks(6, 8, 3)
    label_map, rendered = segment(img, k=10, beta=0.9)
    save_segmentation(label_map, rendered, tmp_path / "s.png", tmp_path / "s.csv")
    np.testing.assert_array_equal(np.asarray(Image.open(tmp_path / "s.png")), rendered)
    # One label per pixel, row-major, aligned with the feature rows.
    rows = (tmp_path / "s.csv").read_text().splitlines()
    assert rows[0] == "label"
    assert [int(r) for r in rows[1:]] == label_map.ravel().tolist()
