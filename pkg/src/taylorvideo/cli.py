"""Command-line front end.

Subcommands: ``convert`` (video to Taylor video), ``viz`` (Taylor video to
PNG sequence), ``skeleton`` (skeleton CSV transform), ``bench`` (kernel
timing), ``stats`` (compression ratios). Exit codes are stable: 0 success,
1 I/O or data errors, 2 configuration errors. Standard output carries a
single ``key=value`` summary line per run.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import aggregate_report, bench_taylor
from .core import TaylorConfig, TaylorVideo, taylor_video
from .errors import ConfigurationError, DataError
from .io import (
    read_image_sequence,
    read_raw_gray,
    read_taylor,
    write_taylor,
    write_visualization,
)
from .skeleton import (
    read_skeleton_csv,
    transform_sequence,
    write_skeleton_csv,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taylorvideo",
        description="Compute Taylor videos: motion maps from frame differences.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="turn frames into a Taylor video")
    convert.add_argument("--input", required=True,
                         help="image-sequence directory or TGRY raw gray file")
    convert.add_argument("--window", type=int, default=4, metavar="T",
                         help="frames per temporal block (default 4)")
    convert.add_argument("--terms", type=int, default=1, metavar="K",
                         help="Taylor terms per channel (default 1)")
    convert.add_argument("--step", type=int, default=1, help="window stride (default 1)")
    convert.add_argument("--gray-augment", action="store_true",
                         help="add each block's first grayscale frame to every channel")
    convert.add_argument("--threads", type=int, default=0,
                         help="worker threads; 0 = one per CPU, 1 = sequential")
    convert.add_argument("--output", required=True, help="TLV1 output path")

    viz = sub.add_parser("viz", help="render a Taylor video as PNGs")
    viz.add_argument("--input", required=True, help="TLV1 file")
    viz.add_argument("--mode", choices=("magnitude", "signed"), default="magnitude")
    viz.add_argument("--gain", type=float, default=4.0)
    viz.add_argument("--outdir", required=True)

    skel = sub.add_parser("skeleton", help="Taylor-transform a skeleton CSV")
    skel.add_argument("--input", required=True, help="skeleton CSV")
    skel.add_argument("--window", type=int, default=4, metavar="T")
    skel.add_argument("--terms", type=int, default=1, metavar="K")
    skel.add_argument("--step", type=int, default=1)
    skel.add_argument("--normalize", action="store_true",
                      help="min-max rescale each coordinate axis to [0, 1] first")
    skel.add_argument("--output", required=True,
                      help="output path; .tlv writes the binary container, "
                           "anything else writes CSV")

    bench = sub.add_parser("bench", help="time the reference and fast kernels")
    bench.add_argument("--terms", default="1",
                       help="comma-separated term counts, e.g. 1,5,10,15,20")
    bench.add_argument("--window", type=int, default=None, metavar="T",
                       help="block length for every config (default: terms+3 each)")
    bench.add_argument("--input", default=None,
                       help="time a real video (directory or TGRY) instead of "
                            "synthetic frames")
    bench.add_argument("--height", type=int, default=None, help="synthetic height (default 240)")
    bench.add_argument("--width", type=int, default=None, help="synthetic width (default 320)")
    bench.add_argument("--blocks", type=int, default=None,
                       help="synthetic block count at the largest window (default 8)")
    bench.add_argument("--repeats", type=int, default=5)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--parallel", action="store_true",
                       help="also time the thread-pool fast path")
    bench.add_argument("--output", required=True, help="JSON report path")

    stats = sub.add_parser("stats", help="compression ratios from a file manifest")
    stats.add_argument("--pairs", required=True,
                       help="CSV manifest: label,before_path,after_path per line")
    stats.add_argument("--output", required=True, help="JSON report path")
    return parser


def _load_video(path_str: str) -> np.ndarray:
    path = Path(path_str)
    if path.is_dir():
        return read_image_sequence(path)
    if not path.exists():
        raise FileNotFoundError(f"input not found: {path}")
    return read_raw_gray(path)


def _summary(**kv) -> None:
    print(" ".join(f"{key}={value}" for key, value in kv.items()))


def cmd_convert(args: argparse.Namespace) -> int:
    config = TaylorConfig(
        block_len=args.window,
        n_terms=args.terms,
        step=args.step,
        gray_augment=args.gray_augment,
    )
    threads = args.threads if args.threads > 0 else (os.cpu_count() or 1)
    video = _load_video(args.input)
    start = time.perf_counter()
    tv = taylor_video(video, config, threads=threads)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    write_taylor(tv, args.output)
    _summary(
        frames=tv.num_frames,
        channels=tv.num_channels,
        height=tv.height,
        width=tv.width,
        window=config.block_len,
        terms=config.n_terms,
        step=config.step,
        gray_augment=int(config.gray_augment),
        threads=threads,
        elapsed_ms=f"{elapsed_ms:.2f}",
        output=args.output,
    )
    return 0


def cmd_viz(args: argparse.Namespace) -> int:
    tv = read_taylor(args.input)
    paths = write_visualization(tv, args.outdir, mode=args.mode, gain=args.gain)
    _summary(frames=len(paths), mode=args.mode, gain=args.gain, outdir=args.outdir)
    return 0


def cmd_skeleton(args: argparse.Namespace) -> int:
    seq = read_skeleton_csv(args.input)
    out = transform_sequence(
        seq,
        block_len=args.window,
        n_terms=args.terms,
        step=args.step,
        normalize=args.normalize,
    )
    if args.output.endswith(".tlv"):
        config = TaylorConfig(block_len=args.window, n_terms=args.terms, step=args.step)
        data = out.coords[:, np.newaxis, :, :]  # (N, 1, joints, axes)
        write_taylor(TaylorVideo(data=data, config=config), args.output)
    else:
        write_skeleton_csv(out, args.output)
    _summary(
        frames=out.num_frames,
        joints=out.num_joints,
        axes=out.num_axes,
        window=args.window,
        terms=args.terms,
        step=args.step,
        output=args.output,
    )
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    synthetic_flags = [
        ("--height", args.height),
        ("--width", args.width),
        ("--blocks", args.blocks),
    ]
    if args.input is not None:
        for name, value in synthetic_flags:
            if value is not None:
                raise ConfigurationError(
                    f"argument --input: not allowed with argument {name}"
                )
    try:
        terms = [int(t) for t in args.terms.split(",") if t.strip()]
    except ValueError:
        raise ConfigurationError(f"--terms must be a comma list of integers, got {args.terms!r}")
    if not terms:
        raise ConfigurationError("--terms must name at least one term count")

    configs = [
        TaylorConfig(block_len=args.window if args.window else k + 3, n_terms=k)
        for k in terms
    ]
    if args.input is not None:
        video = _load_video(args.input)
    else:
        height = args.height if args.height is not None else 240
        width = args.width if args.width is not None else 320
        blocks = args.blocks if args.blocks is not None else 8
        frames = blocks + max(c.block_len for c in configs) - 1
        rng = np.random.default_rng(args.seed)
        video = rng.random((frames, height, width))

    threads = (os.cpu_count() or 2) if args.parallel else None
    if threads is not None and threads < 2:
        threads = 2
    report = bench_taylor(video, configs, repeats=args.repeats, parallel_threads=threads)
    Path(args.output).write_text(report.to_json())
    _summary(
        configs=len(configs),
        repeats=args.repeats,
        frames=video.shape[0],
        height=video.shape[1],
        width=video.shape[2],
        output=args.output,
    )
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    import csv as _csv

    items = []
    with open(args.pairs, newline="") as fh:
        for row in _csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            if len(row) != 3:
                raise ConfigurationError(
                    f"manifest rows need label,before_path,after_path; got {row!r}"
                )
            label, before_path, after_path = (field.strip() for field in row)
            items.append(
                (label, os.path.getsize(before_path), os.path.getsize(after_path))
            )
    report = aggregate_report(items)
    Path(args.output).write_text(report.to_json())
    _summary(
        items=len(items),
        aggregate_ratio=f"{report.aggregate_ratio:.6g}",
        output=args.output,
    )
    return 0


_COMMANDS = {
    "convert": cmd_convert,
    "viz": cmd_viz,
    "skeleton": cmd_skeleton,
    "bench": cmd_bench,
    "stats": cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse's own exits (--help, bad flags)
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
