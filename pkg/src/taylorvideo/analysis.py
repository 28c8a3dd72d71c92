"""Measurement tools: compression-ratio reports and kernel timing.

Compression is compared as plain byte counts (uncompressed size over
compressed size); the tool never re-encodes anything, so the ratios it
reports reflect exactly the artifacts supplied, and absolute figures for
any particular dataset depend entirely on the codecs used to store those
artifacts. Timing follows a time-per-frame convention: total processing
time divided by the number of frames produced.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .core import TaylorConfig, taylor_video
from .errors import EmptyInput, InvalidConfig, InvalidInput


def compression_ratio(before_bytes: int, after_bytes: int) -> float:
    """Uncompressed size over compressed size. > 1 means the data shrank."""
    if before_bytes < 0:
        raise InvalidInput(f"before_bytes must be non-negative (got {before_bytes})")
    if after_bytes <= 0:
        raise InvalidInput(f"after_bytes must be positive (got {after_bytes})")
    return before_bytes / after_bytes


def action_of(label: str) -> str:
    """Group key of a label: the directory-like prefix before the first '/'."""
    return label.split("/", 1)[0]


@dataclass(frozen=True)
class CompressionReport:
    """Per-item ratios, a byte-count aggregate, and per-action ranges.

    The aggregate is total-before over total-after, never a mean of
    per-item ratios.
    """

    items: list[tuple[str, float]]
    aggregate_ratio: float
    actions: dict[str, dict[str, float]]

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "aggregate_ratio": self.aggregate_ratio,
            "items": [{"label": label, "ratio": ratio} for label, ratio in self.items],
            "actions": self.actions,
        }
        return json.dumps(payload, indent=indent)


def aggregate_report(items: list[tuple[str, int, int]]) -> CompressionReport:
    """Build a compression report from (label, before_bytes, after_bytes).

    Labels shaped like ``action/clip`` are grouped by the action prefix;
    each group gets min, max, and mean of its item ratios.
    """
    if not items:
        raise EmptyInput("need at least one (label, before, after) item")
    ratios = [(label, compression_ratio(before, after)) for label, before, after in items]
    total_before = sum(before for _, before, _ in items)
    total_after = sum(after for _, _, after in items)
    aggregate = compression_ratio(total_before, total_after)

    groups: dict[str, list[float]] = {}
    for label, ratio in ratios:
        groups.setdefault(action_of(label), []).append(ratio)
    actions = {
        action: {
            "min": min(values),
            "max": max(values),
            "mean": sum(values) / len(values),
        }
        for action, values in sorted(groups.items())
    }
    return CompressionReport(items=ratios, aggregate_ratio=aggregate, actions=actions)


@dataclass(frozen=True)
class TimingResult:
    """Median time per frame for one kernel path at one configuration."""

    path: str  # "reference" or "fast"
    ms_per_frame: float
    spread_ms: float  # max - min over the timed repeats
    threads: int = 1


@dataclass(frozen=True)
class TimingEntry:
    n_terms: int
    block_len: int
    height: int
    width: int
    repeats: int
    results: list[TimingResult] = field(default_factory=list)

    def ms_per_frame(self, path: str, threads: int = 1) -> float:
        for result in self.results:
            if result.path == path and result.threads == threads:
                return result.ms_per_frame
        raise KeyError(f"no result for path={path!r} threads={threads}")


@dataclass(frozen=True)
class TimingReport:
    entries: list[TimingEntry]

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "entries": [
                {
                    "n_terms": e.n_terms,
                    "T": e.block_len,
                    "height": e.height,
                    "width": e.width,
                    "repeats": e.repeats,
                    "results": [
                        {
                            "path": r.path,
                            "ms_per_frame": r.ms_per_frame,
                            "spread_ms": r.spread_ms,
                            "threads": r.threads,
                        }
                        for r in e.results
                    ],
                }
                for e in self.entries
            ]
        }
        return json.dumps(payload, indent=indent)


def _time_once(video: np.ndarray, config: TaylorConfig, kernel: str, threads: int) -> tuple[float, int]:
    start = time.perf_counter()
    tv = taylor_video(video, config, kernel=kernel, threads=threads)
    elapsed = time.perf_counter() - start
    return elapsed, tv.num_frames


def bench_taylor(
    video: np.ndarray,
    configs: list[TaylorConfig],
    repeats: int = 5,
    warmup: int = 2,
    parallel_threads: int | None = None,
) -> TimingReport:
    """Time the reference and fast kernels over whole-video transforms.

    Each (config, path) pair runs ``warmup`` discarded iterations then
    ``repeats`` timed ones; the reported figure is the median time per
    output frame in milliseconds. Runs are single-threaded to isolate
    kernel cost; ``parallel_threads`` adds an extra fast-path measurement
    with that many threads.
    """
    if repeats < 3:
        raise InvalidConfig(f"repeats must be at least 3 (got {repeats})")
    if warmup < 0:
        raise InvalidConfig(f"warmup must be non-negative (got {warmup})")
    if parallel_threads is not None and parallel_threads < 2:
        raise InvalidConfig(
            f"parallel_threads must be at least 2 (got {parallel_threads})"
        )
    height, width = video.shape[1], video.shape[2]

    runs: list[tuple[str, int]] = [("reference", 1), ("fast", 1)]
    if parallel_threads is not None:
        runs.append(("fast", parallel_threads))

    entries = []
    for config in configs:
        results = []
        for kernel, threads in runs:
            for _ in range(warmup):
                _time_once(video, config, kernel, threads)
            samples = []
            for _ in range(repeats):
                elapsed, frames = _time_once(video, config, kernel, threads)
                samples.append(elapsed * 1000.0 / frames)
            results.append(
                TimingResult(
                    path=kernel,
                    ms_per_frame=statistics.median(samples),
                    spread_ms=max(samples) - min(samples),
                    threads=threads,
                )
            )
        entries.append(
            TimingEntry(
                n_terms=config.n_terms,
                block_len=config.block_len,
                height=height,
                width=width,
                repeats=repeats,
                results=results,
            )
        )
    return TimingReport(entries=entries)
