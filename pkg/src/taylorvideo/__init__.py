"""Taylor videos: motion representations built from frame differences.

The package turns grayscale videos into sequences of three-channel motion
maps (displacement, velocity, acceleration) via truncated Taylor
expansion over temporal blocks, applies the same transform to skeleton
sequences, serializes results, and measures timing and compression.
"""

from .analysis import (
    CompressionReport,
    TimingReport,
    aggregate_report,
    bench_taylor,
    compression_ratio,
)
from .core import (
    MAX_TERMS,
    MIN_BLOCK_LEN,
    TaylorConfig,
    TaylorVideo,
    difference_stack,
    gray_augment,
    num_output_frames,
    sliding_blocks,
    taylor_frame_fast,
    taylor_frame_reference,
    taylor_video,
    validate_gray_video,
)
from .io import (
    read_image_sequence,
    read_raw_gray,
    read_taylor,
    render_taylor_frame,
    rgb_to_gray,
    write_raw_gray,
    write_taylor,
    write_visualization,
)
from .skeleton import (
    SkeletonSequence,
    read_skeleton_csv,
    skeleton_taylor,
    transform_sequence,
    write_skeleton_csv,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_TERMS",
    "MIN_BLOCK_LEN",
    "CompressionReport",
    "SkeletonSequence",
    "TaylorConfig",
    "TaylorVideo",
    "TimingReport",
    "aggregate_report",
    "bench_taylor",
    "compression_ratio",
    "difference_stack",
    "gray_augment",
    "num_output_frames",
    "read_image_sequence",
    "read_raw_gray",
    "read_skeleton_csv",
    "read_taylor",
    "render_taylor_frame",
    "rgb_to_gray",
    "skeleton_taylor",
    "sliding_blocks",
    "taylor_frame_fast",
    "taylor_frame_reference",
    "taylor_video",
    "transform_sequence",
    "validate_gray_video",
    "write_raw_gray",
    "write_skeleton_csv",
    "write_taylor",
    "write_visualization",
]
