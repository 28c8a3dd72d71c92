"""
Taylor skeleton sequences
=========================

Apply the displacement transform to a toy skeleton: a few joints orbiting
a slowly drifting center. Each (joint, axis) trajectory is treated as a
one-pixel video, so a T-frame sequence becomes a (T - 3)-frame sequence
of per-joint displacements. Constant drift survives; the static joint
reads zero.
"""

import numpy as np

from taylorvideo import SkeletonSequence, skeleton_taylor, transform_sequence

frames, joints = 20, 4
t = np.arange(frames)

coords = np.zeros((frames, joints, 2))
coords[:, 0] = np.stack([0.05 * t, np.zeros(frames)], axis=1)          # steady drift
coords[:, 1] = np.stack([np.cos(0.4 * t), np.sin(0.4 * t)], axis=1)    # orbit
coords[:, 2] = coords[:, 1] * 0.5 + [2.0, 1.0]                         # smaller orbit
coords[:, 3] = [.5, .5]                                                # static joint

out = skeleton_taylor(coords, block_len=4, n_terms=1)
print(f"{frames} skeleton frames -> {out.shape[0]} displacement frames")
print(f"drifting joint, x-displacement (constant): {out[:3, 0, 0]}")
print(f"static joint magnitude: {np.abs(out[:, 3]).max():.3g}")

# Confidence scores ride along, aligned to each block's first frame.
seq = SkeletonSequence(coords=coords, confidence=np.linspace(1, 0.2, frames)[:, None].repeat(joints, 1))
transformed = transform_sequence(seq, step=2)
print(f"step 2: {transformed.num_frames} frames, confidence head: {transformed.confidence[:3, 0]}")
