"""
Compression ratios, measured honestly
=====================================

Compare on-disk sizes of source clips against their Taylor counterparts:
per-clip quotients, per-action ranges, and a dataset aggregate computed
from total bytes (never a mean of ratios). Here the "clips" are synthetic
files of made-up sizes; on real data the numbers depend entirely on how
the inputs and outputs were encoded, which this tool deliberately leaves
alone.
"""

import tempfile
from pathlib import Path

from taylorvideo import aggregate_report

clips = {
    "wave/cam1": (3_000_000, 900_000),
    "wave/cam2": (2_500_000, 1_100_000),
    "smile/cam1": (800_000, 1_200_000),   # tiny facial motion grows
    "jump/cam1": (4_200_000, 700_000),
}

with tempfile.TemporaryDirectory() as tmp:
    items = []
    for label, (before, after) in clips.items():
        src = Path(tmp) / (label.replace("/", "_") + ".src")
        out = Path(tmp) / (label.replace("/", "_") + ".tlv")
        src.write_bytes(b"\0" * before)
        out.write_bytes(b"\0" * after)
        items.append((label, src.stat().st_size, out.stat().st_size))

    report = aggregate_report(items)

for label, ratio in report.items:
    print(f"{label:12s} ratio = {ratio:.2f}")
print(f"dataset aggregate (total bytes quotient) = {report.aggregate_ratio:.2f}")
for action, stats in report.actions.items():
    print(f"{action:12s} min {stats['min']:.2f}  max {stats['max']:.2f}  mean {stats['mean']:.2f}")
