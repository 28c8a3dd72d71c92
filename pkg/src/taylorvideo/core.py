"""Numerical kernel for Taylor videos.

A grayscale video is an array of shape ``(frames, height, width)`` with
values in [0, 1]. A temporal sliding window cuts it into blocks of
``block_len`` frames; from each block one Taylor frame is computed, an
array of shape ``(3, height, width)`` whose channels approximate
displacement, velocity, and acceleration of the motion inside the block.

Each channel is a truncated Taylor series evaluated around the block's
first frame. The series derivatives are forward frame differences: the
displacement channel reads differences of order ``k + 1`` at term ``k``,
velocity order ``k + 2``, acceleration order ``k + 3``. The expansion is
averaged over every frame of the block, so short- and long-range motion
both contribute. Two implementations are provided: a literal per-frame
transcription of the formula (:func:`taylor_frame_reference`) and a
vectorized tensor form (:func:`taylor_frame_fast`) that accumulates a
running Hadamard power; they agree within floating-point tolerance.

All computation is float64; serialization downcasts to float32.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InsufficientFrames,
    InvalidConfig,
    InvalidInput,
    ShapeMismatch,
    VideoTooShort,
)

#: Hard cap on the number of Taylor terms. Frame deltas live in [-1, 1],
#: so the 1/k! coefficient makes terms beyond this indistinguishable from
#: zero.
MAX_TERMS = 20

#: Smallest block that yields one map of every difference order a
#: three-channel frame needs (orders 1..3 at one term).
MIN_BLOCK_LEN = 4

_CHANNEL_OFFSETS = (1, 2, 3)  # difference-order offset per output channel


@dataclass(frozen=True)
class TaylorConfig:
    """Parameters of a Taylor-video transform.

    ``block_len`` frames per temporal block, ``n_terms`` series terms per
    channel (term index k runs 0..n_terms-1), sliding-window ``step``, and
    whether the block's first grayscale frame is added back onto every
    output channel (``gray_augment``, useful for patch-based models that
    degenerate on mostly-zero inputs).

    The highest difference order consumed is ``n_terms + 2``, so a block
    must have at least ``n_terms + 3`` frames; equivalently a window of
    ``block_len`` frames supports at most ``block_len - 3`` terms.
    """

    block_len: int = 4
    n_terms: int = 1
    step: int = 1
    gray_augment: bool = False

    def __post_init__(self) -> None:
        if self.step < 1:
            raise InvalidConfig(f"step must be at least 1 (got {self.step})")
        if self.n_terms < 1:
            raise InvalidConfig(f"terms must be at least 1 (got {self.n_terms})")
        if self.n_terms > MAX_TERMS:
            raise InvalidConfig(
                f"terms capped at {MAX_TERMS} (got {self.n_terms}); higher-order "
                f"coefficients underflow on inputs in [0, 1]"
            )
        if self.block_len < MIN_BLOCK_LEN:
            raise InvalidConfig(
                f"window must be at least {MIN_BLOCK_LEN} frames (got {self.block_len})"
            )
        if self.block_len < self.n_terms + 3:
            limit = self.block_len - 3
            raise InvalidConfig(
                f"window {self.block_len} supports at most {limit} "
                f"term{'s' if limit != 1 else ''} (got {self.n_terms})"
            )

    @property
    def max_terms(self) -> int:
        """Largest term count this window can support."""
        return self.block_len - 3


@dataclass(frozen=True)
class TaylorVideo:
    """A sequence of Taylor frames plus the configuration that made it.

    ``data`` has shape ``(N, channels, height, width)``; the video path
    always produces 3 channels (displacement, velocity, acceleration), the
    skeleton path may store fewer.
    """

    data: np.ndarray
    config: TaylorConfig = field(default_factory=TaylorConfig)

    def __post_init__(self) -> None:
        if self.data.ndim != 4:
            raise ShapeMismatch(
                f"taylor video data must be 4-D (frames, channels, height, width), "
                f"got shape {self.data.shape}"
            )
        if not 1 <= self.data.shape[1] <= 3:
            raise ShapeMismatch(f"channel count must be 1..3, got {self.data.shape[1]}")

    @property
    def num_frames(self) -> int:
        return self.data.shape[0]

    @property
    def num_channels(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[2]

    @property
    def width(self) -> int:
        return self.data.shape[3]


def num_output_frames(num_frames: int, block_len: int, step: int = 1) -> int:
    """Number of blocks a sliding window yields: floor((T - L) / step) + 1."""
    return (num_frames - block_len) // step + 1


def _as_video(video: np.ndarray) -> np.ndarray:
    arr = np.asarray(video, dtype=np.float64)
    if arr.ndim != 3:
        raise ShapeMismatch(
            f"video must be 3-D (frames, height, width), got shape {arr.shape}"
        )
    return arr


def validate_gray_video(video: np.ndarray) -> np.ndarray:
    """Check the grayscale-video contract: 3-D, finite, values in [0, 1]."""
    arr = _as_video(video)
    if arr.shape[0] < 1:
        raise InvalidInput("video must contain at least one frame")
    if not np.isfinite(arr).all():
        raise InvalidInput("video contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise InvalidInput(
            f"grayscale values must lie in [0, 1], got range "
            f"[{arr.min():g}, {arr.max():g}]"
        )
    return arr


def sliding_blocks(video: np.ndarray, block_len: int, step: int = 1) -> list[np.ndarray]:
    """Cut a video into overlapping temporal blocks.

    Returns views, not copies: block ``i`` covers frames
    ``i * step .. i * step + block_len``. Frames past the last full window
    are dropped.
    """
    arr = _as_video(video)
    if block_len < MIN_BLOCK_LEN:
        raise InvalidConfig(
            f"window must be at least {MIN_BLOCK_LEN} frames (got {block_len})"
        )
    if step < 1:
        raise InvalidConfig(f"step must be at least 1 (got {step})")
    total = arr.shape[0]
    if total < block_len:
        raise VideoTooShort(
            f"video has {total} frame{'s' if total != 1 else ''} but the window "
            f"needs {block_len}"
        )
    n = num_output_frames(total, block_len, step)
    return [arr[i * step : i * step + block_len] for i in range(n)]


def difference_stack(block: np.ndarray, n_terms: int) -> np.ndarray:
    """First map of each forward-difference order 1 .. n_terms + 2.

    ``out[j - 1]`` is the order-``j`` difference pyramid of the block
    evaluated at its first frame; order 1 is ``frame[1] - frame[0]``. These
    are the derivative estimates the Taylor channels consume.
    """
    arr = _as_video(block)
    if n_terms < 1:
        raise InvalidConfig(f"terms must be at least 1 (got {n_terms})")
    if n_terms > MAX_TERMS:
        raise InvalidConfig(f"terms capped at {MAX_TERMS} (got {n_terms})")
    block_len = arr.shape[0]
    orders = n_terms + 2
    if block_len < n_terms + 3:
        raise InsufficientFrames(
            f"block of {block_len} frames cannot supply difference order {orders}; "
            f"need at least {n_terms + 3} frames for {n_terms} "
            f"term{'s' if n_terms != 1 else ''}"
        )
    stack = np.empty((orders, arr.shape[1], arr.shape[2]), dtype=np.float64)
    current = arr
    for j in range(orders):
        current = np.diff(current, axis=0)
        stack[j] = current[0]
    return stack


def _factorials(n_terms: int) -> list[float]:
    # Exact integer factorials converted once; k! for k >= 19 exceeds 2**53,
    # so incremental float products would drift from the correctly rounded value.
    return [float(math.factorial(k)) for k in range(n_terms)]


def taylor_frame_reference(block: np.ndarray, n_terms: int) -> np.ndarray:
    """Taylor frame by the literal per-frame formulation.

    For every frame tau of the block, expand around the first frame and sum
    ``diff[k + offset] / k! * (frame[tau] - frame[0]) ** k`` over
    k = 0..n_terms-1, with channel offsets 1 (displacement), 2 (velocity),
    3 (acceleration); average the expansions over tau. Slow but direct;
    serves as the oracle for :func:`taylor_frame_fast`.
    """
    arr = _as_video(block)
    diffs = difference_stack(arr, n_terms)
    block_len = arr.shape[0]
    facts = _factorials(n_terms)
    coeffs = [
        [diffs[k + offset - 1] / facts[k] for k in range(n_terms)]
        for offset in _CHANNEL_OFFSETS
    ]
    out = np.zeros((3, arr.shape[1], arr.shape[2]), dtype=np.float64)
    first = arr[0]
    for tau in range(block_len):
        x = arr[tau] - first
        for k in range(n_terms):
            powered = x**k
            for channel in range(3):
                out[channel] += coeffs[channel][k] * powered
    out /= block_len
    return out


def taylor_frame_fast(block: np.ndarray, n_terms: int) -> np.ndarray:
    """Taylor frame by the tensor formulation.

    Subtracts an inflated block (the first frame repeated) in one shot,
    then per term k multiplies a running Hadamard power and folds its mean
    over frames into all three channels. Equal to
    :func:`taylor_frame_reference` within float64 round-off.

    Accumulation order (frames left to right, then terms in order) is
    pinned so that ports of this kernel can reproduce results bit-exactly.
    """
    arr = _as_video(block)
    diffs = difference_stack(arr, n_terms)
    block_len = arr.shape[0]
    facts = _factorials(n_terms)
    deltas = arr - arr[0]
    out = np.zeros((3, arr.shape[1], arr.shape[2]), dtype=np.float64)
    powers: np.ndarray | None = None
    for k in range(n_terms):
        if k == 0:
            mean_power: np.ndarray | float = 1.0  # (x - x0)**0 == 1 and 0! == 1
        else:
            powers = deltas.copy() if powers is None else powers
            if k > 1:
                powers *= deltas
            mean_power = _mean_over_frames(powers)
        for channel, offset in enumerate(_CHANNEL_OFFSETS):
            out[channel] += diffs[k + offset - 1] / facts[k] * mean_power
    return out


def _mean_over_frames(stack: np.ndarray) -> np.ndarray:
    # Left-to-right accumulation; keeps the result independent of any
    # reduction strategy the array library might otherwise pick.
    acc = stack[0].copy()
    for tau in range(1, stack.shape[0]):
        acc += stack[tau]
    acc /= stack.shape[0]
    return acc


def gray_augment(frame: np.ndarray, gray: np.ndarray) -> np.ndarray:
    """Add a grayscale frame onto every channel of a Taylor frame.

    No clamping: outputs keep their sign semantics, shifted by the scene.
    """
    frame = np.asarray(frame, dtype=np.float64)
    gray = np.asarray(gray, dtype=np.float64)
    if frame.ndim != 3 or frame.shape[1:] != gray.shape:
        raise ShapeMismatch(
            f"frame channels are {frame.shape[1:] if frame.ndim == 3 else frame.shape}, "
            f"gray frame is {gray.shape}"
        )
    return frame + gray[np.newaxis, :, :]


def taylor_video(
    video: np.ndarray,
    config: TaylorConfig | None = None,
    *,
    kernel: str = "fast",
    threads: int = 1,
) -> TaylorVideo:
    """Transform a grayscale video into a Taylor video.

    Output frame ``i`` is the Taylor frame of block ``i``; with
    ``config.gray_augment`` each channel additionally carries the block's
    first grayscale frame. Blocks are independent, so ``threads > 1``
    evaluates them in a thread pool; frames are emitted in index order and
    the result is bit-identical to the sequential path.

    ``kernel`` selects "fast" (default) or "reference" (the slow oracle,
    exposed for benchmarking).
    """
    if config is None:
        config = TaylorConfig()
    if kernel not in ("fast", "reference"):
        raise InvalidConfig(f"kernel must be 'fast' or 'reference' (got {kernel!r})")
    if threads < 1:
        raise InvalidConfig(f"threads must be at least 1 (got {threads})")
    arr = validate_gray_video(video)
    blocks = sliding_blocks(arr, config.block_len, config.step)
    frame_fn = taylor_frame_fast if kernel == "fast" else taylor_frame_reference

    out = np.empty((len(blocks), 3, arr.shape[1], arr.shape[2]), dtype=np.float64)

    def compute(i: int) -> None:
        frame = frame_fn(blocks[i], config.n_terms)
        if config.gray_augment:
            frame = gray_augment(frame, blocks[i][0])
        out[i] = frame

    if threads == 1 or len(blocks) <= 1:
        for i in range(len(blocks)):
            compute(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(compute, range(len(blocks))))
    return TaylorVideo(data=out, config=config)
