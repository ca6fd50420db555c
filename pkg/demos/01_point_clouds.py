"""
Point clouds: construction, file formats, distances, subsampling
================================================================

Everything downstream consumes a PointCloud: an immutable n x D float64
matrix whose row order is meaningful. This script walks the I/O round trip
and the distance-matrix basics.
"""

import tempfile
from pathlib import Path

import numpy as np

from manifoldq import (
    PointCloud,
    flatten_images,
    load_pointcloud,
    pairwise_distances,
    save_pointcloud,
    sniff_format,
    subsample,
)

workdir = Path(tempfile.mkdtemp(prefix="manifoldq_demo_"))

# A tiny cloud: the classic 3-4-5 right triangle plus the origin.
pc = PointCloud([[0.0, 0.0], [3.0, 0.0], [3.0, 4.0], [0.5, 0.5]])
print(f"cloud: {pc}")

# CSV round trip. Coordinates are printed with 17 significant digits, which
# reproduces float64 exactly on reload.
csv_path = workdir / "triangle.csv"
save_pointcloud(pc, csv_path, "csv")
print("csv contents:")
print(csv_path.read_text())
assert load_pointcloud(csv_path, "csv") == pc

# Packed-binary round trip: magic MQPC, version byte, uint32 n and D, then
# little-endian doubles. Bit-exact by construction.
bin_path = workdir / "triangle.mqpc"
save_pointcloud(pc, bin_path, "packed-binary")
print(f"binary file: {bin_path.stat().st_size} bytes, sniffed as {sniff_format(bin_path)!r}")
assert load_pointcloud(bin_path, "packed-binary") == pc

# Image batches become points with one coordinate per pixel channel.
batch = np.arange(2 * 2 * 2 * 3, dtype=np.uint8).reshape(2, 2, 2, 3)
flat = flatten_images(batch, scale="minus-one-to-one")
print(f"\n2 images of 2x2x3 pixels -> {flat}")

# Distances: dense symmetric matrix under a named metric.
dm = pairwise_distances(pc, "euclidean")
print(f"\neuclidean distances:\n{dm.values.round(3)}")
print(f"hypotenuse d[0][2] = {dm.values[0, 2]} (3-4-5 triangle)")

# Seeded subsampling keeps row order and is reproducible.
big = PointCloud(np.random.default_rng(0).normal(size=(1000, 3)))
sub = subsample(big, 5, seed=42)
assert sub == subsample(big, 5, seed=42)
print(f"\nsubsampled {big.n} -> {sub.n} rows (same seed, same rows every time)")
