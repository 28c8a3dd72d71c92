"""
Two routes to the same Taylor frame
===================================

The per-frame formulation expands the series once per frame of the block
and averages; the tensor formulation subtracts the inflated block in one
shot and folds a running Hadamard power. They compute the same thing, so
their outputs agree to double-precision round-off while the tensor route
is much cheaper.
"""

import time

import numpy as np

from taylorvideo import taylor_frame_fast, taylor_frame_reference

rng = np.random.default_rng(7)

worst = 0.0
for trial in range(50):
    block_len = int(rng.integers(4, 11))
    n_terms = int(rng.integers(1, block_len - 2))
    block = rng.random((block_len, 32, 32))
    fast = taylor_frame_fast(block, n_terms)
    reference = taylor_frame_reference(block, n_terms)
    worst = max(worst, np.abs(fast - reference).max())
print(f"max |fast - reference| over 50 random blocks: {worst:.3g}")

# Timing on one realistic block size.
block = rng.random((10, 240, 320))
for fn in (taylor_frame_reference, taylor_frame_fast):
    start = time.perf_counter()
    fn(block, 7)
    print(f"{fn.__name__}: {(time.perf_counter() - start) * 1000:.1f} ms per frame")
