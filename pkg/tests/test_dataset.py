import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quickshiftpp.dataset import Dataset, DatasetError, load_csv, read_labels, save_csv, validate, write_labels


@pytest.fixture
def small_csv(tmp_path):
    path = tmp_path / "small.csv"
    path.write_text("1,2,a\n3,4,a\n5,6,b\n")
    return path


def test_label_column_is_split_off(small_csv):
    ds = load_csv(small_csv, label_column=-1)
    assert (ds.n, ds.d) == (3, 2)
    assert ds.true_labels.tolist() == [0, 0, 1]
    assert ds.label_names == ("a", "b")
    np.testing.assert_array_equal(ds.points, [[1, 2], [3, 4], [5, 6]])


def test_text_column_without_label_selection_fails(small_csv):
    with pytest.raises(DatasetError, match=r"'a' at row 1, column 2"):
        load_csv(small_csv)


def test_iris(iris_path):
    ds = load_csv(iris_path, label_column="species")
    assert (ds.n, ds.d) == (150, 4)
    assert len(np.unique(ds.true_labels)) == 3


def test_header_detection_and_named_column(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("x;y;cls\n0.5;1;u\n2;3;v\n")
    ds = load_csv(path, label_column="cls", delimiter=";")
    assert ds.points.tolist() == [[0.5, 1.0], [2.0, 3.0]]
    forced = load_csv(path, label_column=2, delimiter=";", header=True)
    assert forced.points.tolist() == ds.points.tolist()


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "empty"),
        ("1,2\n3\n", "row 2 has 1 fields"),
        ("1,2\n3,nan\n", "non-finite"),
        ("1,2\n3,inf\n", "non-finite"),
        ("1,2\n3,x4\n", "cannot parse"),
    ],
)
def test_malformed_files(tmp_path, text, message):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(DatasetError, match=message):
        load_csv(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / "nope.csv")


def test_dataset_invariants():
    with pytest.raises(DatasetError):
        Dataset(np.empty((0, 2)))
    with pytest.raises(DatasetError, match="non-finite"):
        Dataset([[0.0, np.nan]])
    with pytest.raises(DatasetError, match="length"):
        Dataset(np.zeros((3, 1)), true_labels=[0, 1])
    ds = Dataset(np.arange(3.0))
    assert (ds.n, ds.d) == (3, 1)
    with pytest.raises(ValueError):
        ds.points[0, 0] = 5


def test_validate():
    ds = Dataset(np.random.default_rng(0).standard_normal((150, 4)))
    validate(ds, 30)
    with pytest.raises(DatasetError, match="exceeds"):
        validate(ds, 151)
    with pytest.raises(DatasetError, match="at least 2"):
        validate(ds, 1)


def test_validate_degenerate_duplicates():
    pts = np.vstack([np.zeros((10, 2)), np.arange(1, 11, dtype=float).reshape(5, 2)])
    with pytest.raises(DatasetError, match="point 0 has 10 identical copies"):
        validate(Dataset(pts), 5)
    # Fewer than k copies keeps r_k positive.
    validate(Dataset(pts), 11)


def test_standardized():
    ds = Dataset(np.array([[1.0, 5.0], [3.0, 5.0]]))
    np.testing.assert_allclose(ds.standardized().points, [[-1.0, 0.0], [1.0, 0.0]])


def test_label_files_round_trip(tmp_path):
    write_labels([2, 0, 1], tmp_path / "l.csv")
    assert (tmp_path / "l.csv").read_text() == "label\n2\n0\n1\n"
    assert read_labels(tmp_path / "l.csv").tolist() == [2, 0, 1]
    (tmp_path / "s.csv").write_text("a\nb\na\n")
    assert read_labels(tmp_path / "s.csv").tolist() == [0, 1, 0]


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(
    points=arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 4)), elements=finite),
    data=st.data(),
)
def test_csv_round_trip(tmp_path_factory, points, data):
    labels = data.draw(st.lists(st.sampled_from(["p", "q", "r"]), min_size=len(points), max_size=len(points)))
    ids = {}
    dense = [ids.setdefault(lab, len(ids)) for lab in labels]
    ds = Dataset(points, dense, tuple(ids))
    path = tmp_path_factory.mktemp("rt") / "ds.csv"
    save_csv(ds, path)
    back = load_csv(path, label_column=-1, header=False)
    np.testing.assert_array_equal(back.points, ds.points)
    np.testing.assert_array_equal(back.true_labels, ds.true_labels)
    # Label ids form a bijection with the distinct raw strings.
    assert sorted(set(back.true_labels.tolist())) == list(range(len(set(labels))))
    assert [back.label_names[i] for i in back.true_labels] == labels
