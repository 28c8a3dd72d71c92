"""Taylor transform for skeleton sequences.

Each (joint, coordinate) trajectory is treated exactly like a single-pixel
grayscale trajectory: a sliding block of ``block_len`` frames yields one
output frame per block. The default setup is the displacement concept with
one term, four-frame blocks, step one, so a sequence of T frames becomes a
sequence of T - 3 displacement frames.

Coordinates are consumed raw (dataset-native units, not rescaled to
[0, 1]); frame differencing cancels any constant offset, and magnitudes
stay physically meaningful. An optional min-max mode rescales each
coordinate axis to [0, 1] first for consumers that want the video-path
convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TaylorConfig, num_output_frames, taylor_frame_fast
from .errors import InvalidInput, SequenceTooShort, ShapeMismatch

CONCEPTS = ("displacement", "velocity", "acceleration")


@dataclass(frozen=True)
class SkeletonSequence:
    """Joint coordinates over time: ``coords`` is (frames, joints, axes).

    ``confidence`` is an optional per-joint, per-frame score in [0, 1],
    shaped (frames, joints).
    """

    coords: np.ndarray
    confidence: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.coords.ndim != 3:
            raise ShapeMismatch(
                f"coords must be (frames, joints, axes), got shape {self.coords.shape}"
            )
        if not np.isfinite(self.coords).all():
            raise InvalidInput("skeleton coordinates contain non-finite values")
        if self.confidence is not None and self.confidence.shape != self.coords.shape[:2]:
            raise ShapeMismatch(
                f"confidence shape {self.confidence.shape} does not match "
                f"(frames, joints) = {self.coords.shape[:2]}"
            )

    @property
    def num_frames(self) -> int:
        return self.coords.shape[0]

    @property
    def num_joints(self) -> int:
        return self.coords.shape[1]

    @property
    def num_axes(self) -> int:
        return self.coords.shape[2]


def skeleton_taylor(
    coords: np.ndarray,
    block_len: int = 4,
    n_terms: int = 1,
    step: int = 1,
    concept: str = "displacement",
) -> np.ndarray:
    """Taylor-transform a (frames, joints, axes) coordinate array.

    Returns an (N, joints, axes) array holding the requested motion
    concept; N follows the sliding-window length law. "displacement" is
    the production default; "velocity" and "acceleration" read the next
    higher difference orders.
    """
    if concept not in CONCEPTS:
        raise InvalidInput(f"concept must be one of {CONCEPTS}, got {concept!r}")
    config = TaylorConfig(block_len=block_len, n_terms=n_terms, step=step)
    arr = np.asarray(coords, dtype=np.float64)
    if arr.ndim != 3:
        raise ShapeMismatch(
            f"coords must be (frames, joints, axes), got shape {arr.shape}"
        )
    total = arr.shape[0]
    if total < block_len:
        raise SequenceTooShort(
            f"sequence has {total} frame{'s' if total != 1 else ''} but the "
            f"window needs {block_len}"
        )
    channel = CONCEPTS.index(concept)
    n = num_output_frames(total, block_len, step)
    out = np.empty((n, arr.shape[1], arr.shape[2]), dtype=np.float64)
    for i in range(n):
        block = arr[i * step : i * step + block_len]
        out[i] = taylor_frame_fast(block, n_terms)[channel]
    return out


def normalize_coords(coords: np.ndarray) -> np.ndarray:
    """Min-max rescale each coordinate axis to [0, 1] over the sequence.

    Axes with zero range map to 0.
    """
    arr = np.asarray(coords, dtype=np.float64)
    lo = arr.min(axis=(0, 1), keepdims=True)
    hi = arr.max(axis=(0, 1), keepdims=True)
    span = hi - lo
    span[span == 0.0] = 1.0
    return (arr - lo) / span


def transform_sequence(
    seq: SkeletonSequence,
    block_len: int = 4,
    n_terms: int = 1,
    step: int = 1,
    concept: str = "displacement",
    normalize: bool = False,
) -> SkeletonSequence:
    """Taylor-transform a sequence, carrying confidence through.

    Confidence values are not transformed; output frame i keeps the
    confidence of its block's first frame.
    """
    coords = normalize_coords(seq.coords) if normalize else seq.coords
    out = skeleton_taylor(coords, block_len, n_terms, step, concept)
    confidence = None
    if seq.confidence is not None:
        starts = np.arange(out.shape[0]) * step
        confidence = seq.confidence[starts].copy()
    return SkeletonSequence(coords=out, confidence=confidence)


def read_skeleton_csv(path) -> SkeletonSequence:
    """Parse the skeleton CSV schema.

    Line 1 is a header ``J=<joints>,C=<axes>[,CONF=1]``; every following
    line holds one frame: joints * axes coordinates in joint-major order,
    then (with CONF) one confidence value per joint.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines:
        raise InvalidInput(f"{path}: empty skeleton file")
    header = _parse_header(lines[0], path)
    joints, axes, has_conf = header
    per_line = joints * axes + (joints if has_conf else 0)
    coords = np.empty((len(lines) - 1, joints, axes), dtype=np.float64)
    confidence = np.empty((len(lines) - 1, joints), dtype=np.float64) if has_conf else None
    for i, line in enumerate(lines[1:]):
        fields = line.split(",")
        if len(fields) != per_line:
            raise InvalidInput(
                f"{path}: frame {i} has {len(fields)} values, expected {per_line}"
            )
        values = np.array([float(f) for f in fields], dtype=np.float64)
        coords[i] = values[: joints * axes].reshape(joints, axes)
        if has_conf:
            confidence[i] = values[joints * axes :]
    return SkeletonSequence(coords=coords, confidence=confidence)


def _parse_header(line: str, path) -> tuple[int, int, bool]:
    parts = dict(
        item.split("=", 1) for item in line.split(",") if "=" in item
    )
    try:
        joints = int(parts["J"])
        axes = int(parts["C"])
    except (KeyError, ValueError) as exc:
        raise InvalidInput(
            f"{path}: header must be 'J=<int>,C=<int>[,CONF=1]', got {line!r}"
        ) from exc
    if joints < 1 or axes < 1:
        raise InvalidInput(f"{path}: J and C must be positive, got {line!r}")
    has_conf = parts.get("CONF") == "1"
    return joints, axes, has_conf


def write_skeleton_csv(seq: SkeletonSequence, path) -> None:
    """Write a sequence back out in the CSV schema used by the reader."""
    joints, axes = seq.num_joints, seq.num_axes
    header = f"J={joints},C={axes}"
    if seq.confidence is not None:
        header += ",CONF=1"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(header + "\n")
        for i in range(seq.num_frames):
            fields = [repr(float(v)) for v in seq.coords[i].ravel()]
            if seq.confidence is not None:
                fields.extend(repr(float(v)) for v in seq.confidence[i])
            fh.write(",".join(fields) + "\n")
