"""Command-line front end: ``quickshiftpp {cluster,score,sweep,segment,generate}``."""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from . import metrics, synthetic
from .dataset import Dataset, DatasetError, load_csv, read_labels, save_csv, write_labels
from .pipeline import run
from .quickshift import write_forest


def _k(value: str) -> int:
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be an integer, got {value!r}") from None
    if k < 2:
        raise argparse.ArgumentTypeError(f"k must be at least 2, got {k}")
    return k


def _beta(value: str) -> float:
    beta = float(value)
    if not 0 < beta < 1:
        raise argparse.ArgumentTypeError(f"beta must lie in (0, 1), got {beta}")
    return beta


def _positive(value: str) -> float:
    x = float(value)
    if x <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {x}")
    return x


def _k_list(value: str) -> list:
    """``5,10,20`` or an inclusive range ``start:stop[:step]``."""
    value = value.strip()
    if not value:
        raise argparse.ArgumentTypeError("empty list of k values")
    if ":" in value:
        parts = [int(p) for p in value.split(":")]
        if len(parts) not in (2, 3):
            raise argparse.ArgumentTypeError(f"bad k range {value!r}")
        start, stop = parts[:2]
        step = parts[2] if len(parts) == 3 else 1
        ks = list(range(start, stop + 1, step))
    else:
        ks = [int(p) for p in value.split(",") if p.strip()]
    if not ks:
        raise argparse.ArgumentTypeError("empty list of k values")
    return ks


def _label_col(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", type=Path, help="CSV file, one sample per row")
    p.add_argument("--label-col", type=_label_col, default=None, help="ground-truth column (index or name)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--header", dest="header", action="store_true", default=None, help="first row is a header")
    p.add_argument("--no-header", dest="header", action="store_false")
    p.add_argument("--standardize", action="store_true", help="z-score every feature first")
    p.add_argument("--threads", type=int, default=1, help="workers for the neighbour search")


def _load(args) -> Dataset:
    ds = load_csv(args.input, label_column=args.label_col, delimiter=args.delimiter, header=args.header)
    return ds.standardized() if args.standardize else ds


def cmd_cluster(args) -> int:
    ds = _load(args)
    start = time.perf_counter()
    result = run(ds, args.k, args.beta, threads=args.threads)
    elapsed = time.perf_counter() - start

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_labels(result.labels, out / "labels.csv")
    result.cores.dump(out / "cores.json")
    if args.forest:
        write_forest(result.clustering, out / "forest.csv")
    if args.dump_density:
        de = result.density
        with (out / "density.csv").open("w") as fh:
            fh.write("index,r_k,f_k\n")
            fh.writelines(f"{i},{r!r},{f!r}\n" for i, (r, f) in enumerate(zip(de.radius.tolist(), de.density.tolist())))

    print(f"n={ds.n} d={ds.d} k={args.k} beta={args.beta} cores={len(result.cores)} time={elapsed:.3f}s")
    if ds.true_labels is not None:
        print(f"ARI={metrics.adjusted_rand_index(result.labels, ds.true_labels):.4f}")
        print(f"AMI={metrics.adjusted_mutual_info(result.labels, ds.true_labels):.4f}")
    return 0


def cmd_score(args) -> int:
    pred = read_labels(args.pred, column=_label_col(args.pred_col))
    truth = read_labels(args.truth, column=_label_col(args.truth_col))
    print(f"ARI={metrics.adjusted_rand_index(pred, truth):.6f}")
    print(f"AMI={metrics.adjusted_mutual_info(pred, truth):.6f}")
    return 0


def cmd_sweep(args) -> int:
    ds = _load(args)
    if ds.true_labels is None:
        raise DatasetError("sweep needs ground-truth labels (--label-col)")
    failures = 0
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "cores", "ARI", "AMI", "error"])
        for k in args.k_values:
            try:
                labels = run(ds, k, args.beta, threads=args.threads).labels
            except (DatasetError, ValueError) as exc:
                failures += 1
                writer.writerow([k, "", "", "", str(exc)])
                continue
            writer.writerow([
                k,
                int(labels.max()) + 1,
                f"{metrics.adjusted_rand_index(labels, ds.true_labels):.6f}",
                f"{metrics.adjusted_mutual_info(labels, ds.true_labels):.6f}",
                "",
            ])
    finally:
        if fh is not sys.stdout:
            fh.close()
    if failures:
        print(f"{failures} of {len(args.k_values)} k values failed", file=sys.stderr)
    return 0


def cmd_segment(args) -> int:
    from .segmentation import save_segmentation, segment

    label_map, rendered = segment(
        args.image, args.k, args.beta, args.spatial_scale, max_side=args.max_side, threads=args.threads
    )
    labels_csv = args.labels or args.out.with_suffix(".csv")
    save_segmentation(label_map, rendered, args.out, labels_csv)
    h, w = label_map.shape
    print(f"{h}x{w} pixels k={args.k} beta={args.beta} segments={int(label_map.max()) + 1}")
    return 0


def cmd_generate(args) -> int:
    if args.kind == "rings":
        ds = synthetic.two_rings(n_inner=args.n, n_outer=2 * args.n, jitter=args.jitter, seed=args.seed)
    elif args.kind == "blobs":
        ds = synthetic.three_density_blobs(n_per_blob=args.n, seed=args.seed, max_sigma=args.max_sigma)
    else:
        ds = synthetic.gaussian_mixture(args.n, args.components, seed=args.seed)
    save_csv(ds, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quickshiftpp", description="Quickshift++ density-based clustering")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a CSV file")
    _add_input(p)
    p.add_argument("--k", type=_k, default=20)
    p.add_argument("--beta", type=_beta, default=0.3)
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--forest", action="store_true", help="also write the parent forest")
    p.add_argument("--dump-density", action="store_true", help="also write per-sample r_k and f_k")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("score", help="ARI and AMI between two label files")
    p.add_argument("pred", type=Path)
    p.add_argument("truth", type=Path)
    p.add_argument("--pred-col", default="0")
    p.add_argument("--truth-col", default="0")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("sweep", help="scores over a range of k")
    _add_input(p)
    p.add_argument("--k-values", type=_k_list, required=True, help="e.g. 5,10,20 or 5:60:5")
    p.add_argument("--beta", type=_beta, default=0.3)
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("segment", help="segment an image")
    p.add_argument("image", type=Path)
    p.add_argument("--k", type=_k, default=50)
    p.add_argument("--beta", type=_beta, default=0.9)
    p.add_argument("--spatial-scale", type=_positive, default=1.0)
    p.add_argument("--max-side", type=int, default=None, help="downscale so no side exceeds this")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=Path, required=True, help="rendered PNG")
    p.add_argument("--labels", type=Path, default=None, help="label CSV (default: next to --out)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("generate", help="write a seeded synthetic dataset")
    p.add_argument("kind", choices=["rings", "blobs", "mixture"])
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--components", type=int, default=3)
    p.add_argument("--jitter", type=float, default=0.0, help="radial noise for rings")
    p.add_argument("--max-sigma", type=_positive, default=None, help="truncate blobs at this many scales")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"quickshiftpp {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
