"""Point clouds, distance matrices, file I/O and subsampling.

Coordinates are float64 throughout; arrays are frozen after construction so
instances can be shared freely between threads.
"""

from __future__ import annotations

import struct

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import (
    EmptyInputError,
    FormatError,
    ParameterError,
    ParseError,
    ShapeError,
    SizeError,
)

MAGIC = b"MQPC"
BINARY_VERSION = 1

METRICS = ("euclidean", "manhattan", "chebyshev")
_PDIST_NAME = {"euclidean": "euclidean", "manhattan": "cityblock", "chebyshev": "chebyshev"}


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class PointCloud:
    """n points in ambient dimension D, stored as an immutable (n, D) float64 matrix.

    Row order is meaningful: point indices identify points downstream.
    """

    def __init__(self, points):
        pts = np.ascontiguousarray(points, dtype=np.float64)
        if pts.ndim != 2:
            raise ShapeError(f"points must be a 2-D array, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise EmptyInputError(f"need at least one point and one coordinate, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ParameterError("point coordinates must all be finite")
        self.points = _freeze(pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, PointCloud) and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, D={self.ambient_dim})"


class DistanceMatrix:
    """Dense symmetric matrix of pairwise distances with its metric tag."""

    def __init__(self, values, metric: str = "euclidean"):
        if metric not in METRICS:
            raise ParameterError(f"unknown metric {metric!r}, expected one of {METRICS}")
        d = np.ascontiguousarray(values, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ShapeError(f"distance matrix must be square, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ParameterError("distance entries must be finite")
        if np.any(d < 0):
            raise ParameterError("distance entries must be non-negative")
        if np.any(np.diag(d) != 0):
            raise ParameterError("distance matrix diagonal must be zero")
        if not np.array_equal(d, d.T):
            raise ParameterError("distance matrix must be symmetric")
        self.values = _freeze(d)
        self.metric = metric

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def max_distance(self) -> float:
        return float(self.values.max())

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n}, metric={self.metric!r})"


def pairwise_distances(pc: PointCloud, metric: str = "euclidean") -> DistanceMatrix:
    """Full symmetric distance matrix of a cloud under the chosen metric."""
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}, expected one of {METRICS}")
    if pc.n == 1:
        return DistanceMatrix(np.zeros((1, 1)), metric)
    condensed = pdist(pc.points, metric=_PDIST_NAME[metric])
    return DistanceMatrix(squareform(condensed), metric)


def subsample(pc: PointCloud, m: int, seed: int) -> PointCloud:
    """m distinct rows chosen uniformly without replacement (NumPy PCG64, seeded).

    Selected rows keep their original relative order, so m == n returns an
    identical copy.
    """
    if not 1 <= m <= pc.n:
        raise SizeError(f"subsample size {m} outside [1, {pc.n}]")
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(pc.n, size=m, replace=False))
    return PointCloud(pc.points[idx])


def flatten_images(raw, scale: str = "none") -> PointCloud:
    """Embed a batch of images as points, one pixel-channel per coordinate.

    raw is an (n, H, W, C) array or a sequence of (H, W, C) arrays; rows are
    flattened in row-major (H, W, C) order. scale="minus-one-to-one" maps a
    byte value v to v/127.5 - 1.
    """
    if scale not in ("none", "minus-one-to-one"):
        raise ParameterError(f"unknown scale {scale!r}")
    if isinstance(raw, np.ndarray):
        batch = raw
        if batch.ndim != 4:
            raise ShapeError(f"image batch must have shape (n, H, W, C), got {batch.shape}")
    else:
        arrays = [np.asarray(img) for img in raw]
        if not arrays:
            raise EmptyInputError("empty image batch")
        shapes = {a.shape for a in arrays}
        if len(shapes) != 1:
            raise ShapeError(f"images have mixed shapes: {sorted(shapes)}")
        batch = np.stack(arrays)
        if batch.ndim != 4:
            raise ShapeError(f"each image must have shape (H, W, C), got {arrays[0].shape}")
    flat = batch.reshape(batch.shape[0], -1).astype(np.float64)
    if scale == "minus-one-to-one":
        flat = flat / 127.5 - 1.0
    return PointCloud(flat)


def unflatten_images(pc: PointCloud, h: int, w: int, c: int) -> np.ndarray:
    """Inverse of flatten_images for known image dimensions."""
    if pc.ambient_dim != h * w * c:
        raise ShapeError(f"ambient dim {pc.ambient_dim} != {h}*{w}*{c}")
    return pc.points.reshape(pc.n, h, w, c)


def load_pointcloud(path, format: str = "csv") -> PointCloud:
    """Read a cloud from disk. Formats: "csv" or "packed-binary" (see save_pointcloud)."""
    if format == "csv":
        return _load_csv(path)
    if format == "packed-binary":
        return _load_binary(path)
    raise ParameterError(f"unknown format {format!r}")


def save_pointcloud(pc: PointCloud, path, format: str = "csv") -> None:
    """Write a cloud to disk.

    csv: one point per line, comma-separated, 17 significant digits (lossless
    round-trip), with a leading '#' header line.
    packed-binary: magic "MQPC", version byte 0x01, little-endian uint32 n and
    D, then n*D little-endian float64 coordinates, row-major.
    """
    if format == "csv":
        with open(path, "w") as fh:
            fh.write(f"# n={pc.n} D={pc.ambient_dim}\n")
            for row in pc.points:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    elif format == "packed-binary":
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<B", BINARY_VERSION))
            fh.write(struct.pack("<II", pc.n, pc.ambient_dim))
            fh.write(pc.points.astype("<f8").tobytes(order="C"))
    else:
        raise ParameterError(f"unknown format {format!r}")


def sniff_format(path) -> str:
    """Guess the on-disk format from the file's magic bytes."""
    with open(path, "rb") as fh:
        head = fh.read(4)
    return "packed-binary" if head == MAGIC else "csv"


def _load_csv(path) -> PointCloud:
    rows = []
    width = None
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split(",")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise FormatError(
                    f"{path}: line {lineno} has {len(tokens)} values, expected {width}"
                )
            try:
                rows.append([float(t) for t in tokens])
            except ValueError:
                bad = next(i for i, t in enumerate(tokens) if not _is_float(t))
                raise ParseError(
                    f"{path}: line {lineno}, column {bad + 1}: not a number: {tokens[bad]!r}"
                ) from None
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    return PointCloud(np.array(rows, dtype=np.float64))


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _load_binary(path) -> PointCloud:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 13:
        raise FormatError(f"{path}: too short for a packed-binary cloud")
    if blob[:4] != MAGIC:
        raise FormatError(f"{path}: bad magic {blob[:4]!r}, expected {MAGIC!r}")
    version = blob[4]
    if version != BINARY_VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    n, dim = struct.unpack("<II", blob[5:13])
    if n == 0 or dim == 0:
        raise EmptyInputError(f"{path}: declares an empty cloud ({n} x {dim})")
    expected = 13 + 8 * n * dim
    if len(blob) != expected:
        raise FormatError(f"{path}: payload is {len(blob)} bytes, expected {expected}")
    pts = np.frombuffer(blob, dtype="<f8", offset=13).reshape(n, dim)
    return PointCloud(pts)
