"""Reading inputs and serializing outputs.

Two little-endian binary containers:

``TLV1`` (Taylor video)
    magic ``TLV1``; u32 height, width, channels, frames; u8 dtype code
    (0 = float32 LE); u8 flags (bit 0 = gray-augmented); u16 reserved;
    u32 block_len; u32 n_terms; u32 step; payload
    ``frames * channels * height * width`` float32 values in
    [frame][channel][row][col] order, channels ordered
    (displacement, velocity, acceleration).

``TGRY`` (raw grayscale stream)
    magic ``TGRY``; u32 height, width, frames; u8 dtype code (0 = u8,
    1 = float32 LE); payload frame-major, row-major. u8 samples are
    normalized as value / 255.

Image-sequence ingestion decodes files with Pillow in lexicographic
filename order and converts RGB to grayscale with BT.601 luma weights.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np
from PIL import Image, UnidentifiedImageError

from .core import TaylorConfig, TaylorVideo
from .errors import (
    BadMagic,
    DecodeError,
    DimensionMismatch,
    EmptyDirectory,
    InvalidGain,
    InvalidInput,
    TruncatedPayload,
    UnsupportedDtype,
)

TLV_MAGIC = b"TLV1"
TGRY_MAGIC = b"TGRY"

_TLV_HEADER = struct.Struct("<4s4IBBH3I")
_TGRY_HEADER = struct.Struct("<4s3IB")

_LUMA_WEIGHTS = (0.299, 0.587, 0.114)  # BT.601

_IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".webp"}


def rgb_to_gray(frame: np.ndarray) -> np.ndarray:
    """BT.601 luma of an (H, W, 3) RGB frame with values in [0, 1]."""
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise InvalidInput(f"expected an (H, W, 3) RGB frame, got shape {arr.shape}")
    red, green, blue = arr[:, :, 0], arr[:, :, 1], arr[:, :, 2]
    r, g, _ = _LUMA_WEIGHTS
    # Evaluated as blue + corrections so that R == G == B stays exactly
    # unchanged; the rounded weights do not sum to 1.0 in binary.
    return blue + r * (red - blue) + g * (green - blue)


def read_image_sequence(directory: str | Path, as_gray: bool = True) -> np.ndarray:
    """Load a directory of images as a video array.

    Frames are ordered by lexicographic filename. Returns
    ``(frames, H, W)`` float64 in [0, 1] when ``as_gray`` (RGB images pass
    through :func:`rgb_to_gray`), else ``(frames, H, W, 3)``.
    """
    directory = Path(directory)
    paths = sorted(
        p for p in directory.iterdir()
        if p.is_file() and p.suffix.lower() in _IMAGE_SUFFIXES
    )
    if not paths:
        raise EmptyDirectory(f"no images found in {directory}")

    frames = []
    shape: tuple[int, int] | None = None
    for path in paths:
        try:
            with Image.open(path) as img:
                rgb = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
        except (UnidentifiedImageError, OSError) as exc:
            raise DecodeError(f"cannot decode {path}: {exc}") from exc
        if shape is None:
            shape = rgb.shape[:2]
        elif rgb.shape[:2] != shape:
            raise DimensionMismatch(
                f"{path.name} is {rgb.shape[1]}x{rgb.shape[0]}, expected "
                f"{shape[1]}x{shape[0]} like the first image"
            )
        frames.append(rgb_to_gray(rgb) if as_gray else rgb)
    return np.stack(frames)


def _open(path_or_stream, mode: str):
    if hasattr(path_or_stream, "read") or hasattr(path_or_stream, "write"):
        return path_or_stream, False
    return open(path_or_stream, mode), True


def _read_exact(stream: BinaryIO, count: int, what: str) -> bytes:
    data = stream.read(count)
    if len(data) != count:
        raise TruncatedPayload(
            f"{what}: expected {count} bytes, got {len(data)}"
        )
    return data


def write_raw_gray(
    path_or_stream, video: np.ndarray, dtype: str = "u8"
) -> None:
    """Write a grayscale video as a TGRY stream (dtype "u8" or "f32")."""
    arr = np.asarray(video, dtype=np.float64)
    if arr.ndim != 3:
        raise InvalidInput(f"video must be 3-D, got shape {arr.shape}")
    frames, height, width = arr.shape
    if dtype == "u8":
        code, payload = 0, np.rint(arr * 255.0).astype(np.uint8).tobytes()
    elif dtype == "f32":
        code, payload = 1, arr.astype("<f4").tobytes()
    else:
        raise UnsupportedDtype(f"dtype must be 'u8' or 'f32', got {dtype!r}")
    stream, owned = _open(path_or_stream, "wb")
    try:
        stream.write(_TGRY_HEADER.pack(TGRY_MAGIC, height, width, frames, code))
        stream.write(payload)
    finally:
        if owned:
            stream.close()


def read_raw_gray(path_or_stream) -> np.ndarray:
    """Read a TGRY stream into a (frames, H, W) float64 video in [0, 1]."""
    stream, owned = _open(path_or_stream, "rb")
    try:
        header = _read_exact(stream, _TGRY_HEADER.size, "TGRY header")
        magic, height, width, frames, code = _TGRY_HEADER.unpack(header)
        if magic != TGRY_MAGIC:
            raise BadMagic(f"expected magic {TGRY_MAGIC!r}, got {magic!r}")
        count = frames * height * width
        if code == 0:
            raw = _read_exact(stream, count, "TGRY payload")
            data = np.frombuffer(raw, dtype=np.uint8).astype(np.float64) / 255.0
        elif code == 1:
            raw = _read_exact(stream, count * 4, "TGRY payload")
            data = np.frombuffer(raw, dtype="<f4").astype(np.float64)
        else:
            raise UnsupportedDtype(f"TGRY dtype code {code} not supported")
        return data.reshape(frames, height, width)
    finally:
        if owned:
            stream.close()


def write_taylor(tv: TaylorVideo, path_or_stream) -> None:
    """Serialize a Taylor video as a TLV1 file (float32 payload)."""
    frames, channels, height, width = tv.data.shape
    cfg = tv.config
    flags = 1 if cfg.gray_augment else 0
    stream, owned = _open(path_or_stream, "wb")
    try:
        stream.write(
            _TLV_HEADER.pack(
                TLV_MAGIC, height, width, channels, frames,
                0, flags, 0, cfg.block_len, cfg.n_terms, cfg.step,
            )
        )
        stream.write(np.ascontiguousarray(tv.data, dtype="<f4").tobytes())
    finally:
        if owned:
            stream.close()


def read_taylor(path_or_stream) -> TaylorVideo:
    """Read a TLV1 file; data comes back float32, exactly as stored."""
    stream, owned = _open(path_or_stream, "rb")
    try:
        header = _read_exact(stream, _TLV_HEADER.size, "TLV1 header")
        (magic, height, width, channels, frames,
         dtype_code, flags, _reserved, block_len, n_terms, step) = _TLV_HEADER.unpack(header)
        if magic != TLV_MAGIC:
            raise BadMagic(f"expected magic {TLV_MAGIC!r}, got {magic!r}")
        if dtype_code != 0:
            raise UnsupportedDtype(f"TLV1 dtype code {dtype_code} not supported")
        count = frames * channels * height * width
        raw = _read_exact(stream, count * 4, "TLV1 payload")
        data = np.frombuffer(raw, dtype="<f4").reshape(frames, channels, height, width)
        config = TaylorConfig(
            block_len=block_len,
            n_terms=n_terms,
            step=step,
            gray_augment=bool(flags & 1),
        )
        return TaylorVideo(data=data.copy(), config=config)
    finally:
        if owned:
            stream.close()


def render_taylor_frame(
    frame: np.ndarray, mode: str = "magnitude", gain: float = 4.0
) -> np.ndarray:
    """Render a Taylor frame as an (H, W, 3) uint8 image.

    Channel mapping is displacement to red, velocity to green, acceleration
    to blue; stronger motion reads as bolder color. "magnitude" encodes
    ``round(255 * clip(|v| * gain, 0, 1))``, dropping sign; "signed"
    encodes ``round(127.5 * (clip(v * gain, -1, 1) + 1))`` so zero maps to
    mid-gray 128 and the sign is recoverable.
    """
    if gain <= 0:
        raise InvalidGain(f"gain must be positive (got {gain})")
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[0] != 3:
        raise InvalidInput(f"expected a (3, H, W) frame, got shape {arr.shape}")
    if mode == "magnitude":
        scaled = np.clip(np.abs(arr) * gain, 0.0, 1.0) * 255.0
    elif mode == "signed":
        scaled = (np.clip(arr * gain, -1.0, 1.0) + 1.0) * 127.5
    else:
        raise InvalidInput(f"mode must be 'magnitude' or 'signed', got {mode!r}")
    return np.rint(scaled).astype(np.uint8).transpose(1, 2, 0)


def write_frame_png(path: str | Path, rgb: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 image as PNG."""
    Image.fromarray(rgb, mode="RGB").save(path, format="PNG")


def write_visualization(
    tv: TaylorVideo,
    out_dir: str | Path,
    mode: str = "magnitude",
    gain: float = 4.0,
) -> list[Path]:
    """Render every frame of a Taylor video to ``taylor_%06d.png`` files."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(tv.num_frames):
        rendered = render_taylor_frame(tv.data[i], mode=mode, gain=gain)
        path = out_dir / f"taylor_{i:06d}.png"
        write_frame_png(path, rendered)
        paths.append(path)
    return paths
