"""Seeded generators of point clouds with known topology and dimension.

All randomness comes from numpy.random.default_rng (PCG64) seeded from the
spec, so identical specs produce bit-identical clouds. Circle angles are
drawn uniformly, sphere points are normalized Gaussian triples, and the
torus is sampled uniformly in surface area by rejection on the tube angle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .geometry import PointCloud

KINDS = ("circle", "sphere", "torus", "swiss-roll", "uniform-cube", "gaussian-blob")


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    n: int
    noise: float = 0.0
    seed: int = 0
    dim: int | None = None  # uniform-cube / gaussian-blob only
    major_radius: float = 2.0  # torus only
    minor_radius: float = 0.5  # torus only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown shape kind {self.kind!r}, expected one of {KINDS}")
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if self.noise < 0:
            raise ParameterError(f"noise must be >= 0, got {self.noise}")
        if self.kind in ("uniform-cube", "gaussian-blob"):
            if self.dim is None or self.dim < 1:
                raise ParameterError(f"{self.kind} requires dim >= 1, got {self.dim}")
        if self.kind == "torus" and not self.major_radius > self.minor_radius > 0:
            raise ParameterError(
                f"torus radii must satisfy R > r > 0, got R={self.major_radius}, r={self.minor_radius}"
            )


def generate(spec: ShapeSpec) -> PointCloud:
    """Deterministic cloud for a spec; gaussian noise is added per coordinate."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    if spec.kind == "circle":
        pts = circle_from_angles(rng.uniform(0.0, 2.0 * np.pi, size=n))
    elif spec.kind == "sphere":
        g = rng.normal(size=(n, 3))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        while np.any(norms == 0):  # astronomically unlikely, but keep it total
            g = rng.normal(size=(n, 3))
            norms = np.linalg.norm(g, axis=1, keepdims=True)
        pts = g / norms
    elif spec.kind == "torus":
        pts = _torus_points(n, rng, spec.major_radius, spec.minor_radius)
    elif spec.kind == "swiss-roll":
        t = 1.5 * np.pi * (1.0 + 2.0 * rng.uniform(size=n))
        height = 21.0 * rng.uniform(size=n)
        pts = np.column_stack([t * np.cos(t), height, t * np.sin(t)])
    elif spec.kind == "uniform-cube":
        pts = rng.uniform(size=(n, spec.dim))
    else:  # gaussian-blob
        pts = rng.normal(size=(n, spec.dim))
    if spec.noise > 0:
        pts = pts + rng.normal(scale=spec.noise, size=pts.shape)
    return PointCloud(pts)


def circle_from_angles(angles) -> np.ndarray:
    """Closed-form map from angles to points on the radius-1 circle."""
    angles = np.asarray(angles, dtype=np.float64)
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _torus_points(n: int, rng, major: float, minor: float) -> np.ndarray:
    """Area-uniform torus sample: the tube angle is rejection-sampled with
    density proportional to R + r cos(theta)."""
    tube = np.empty(n)
    got = 0
    while got < n:
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        u = rng.uniform(size=n)
        accepted = theta[u <= (major + minor * np.cos(theta)) / (major + minor)]
        take = min(len(accepted), n - got)
        tube[got : got + take] = accepted[:take]
        got += take
    sweep = rng.uniform(0.0, 2.0 * np.pi, size=n)
    ring = major + minor * np.cos(tube)
    return np.column_stack([ring * np.cos(sweep), ring * np.sin(sweep), minor * np.sin(tube)])
