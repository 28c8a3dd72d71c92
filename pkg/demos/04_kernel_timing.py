"""
Time per frame across term counts
=================================

Benchmark both kernels over a synthetic video, one config per term count,
each window sized terms + 3 so every frame of the block is used. Time per
frame is total transform time divided by frames produced; more terms cost
more, and the tensor path stays well ahead of the per-frame one.
"""

import numpy as np

from taylorvideo import TaylorConfig, bench_taylor

rng = np.random.default_rng(0)
term_counts = [1, 5, 10, 15, 20]

configs = [TaylorConfig(block_len=k + 3, n_terms=k) for k in term_counts]
frames = 8 + max(c.block_len for c in configs) - 1
video = rng.random((frames, 120, 160))

report = bench_taylor(video, configs, repeats=3, warmup=1)
print(f"{'terms':>5} {'window':>6} {'reference ms/frame':>19} {'fast ms/frame':>14}")
for entry in report.entries:
    print(
        f"{entry.n_terms:>5} {entry.block_len:>6} "
        f"{entry.ms_per_frame('reference'):>19.2f} "
        f"{entry.ms_per_frame('fast'):>14.2f}"
    )
print()
print(report.to_json())
