"""Intrinsic-dimension estimators: two-nearest-neighbor and box counting.

Both are scale-free: the 2NN estimators consume only the per-point ratio of
second- to first-nearest-neighbor distances, and box counting fits the
log-log slope of occupied-cell counts, so rigid motions and global rescaling
leave the estimates unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DegenerateInputError, ParameterError, SizeError
from .geometry import PointCloud


@dataclass(frozen=True)
class IdEstimate:
    value: float
    method: str
    n_used: int
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "n_used": self.n_used,
            "diagnostics": self.diagnostics,
        }


def neighbor_ratios(pc: PointCloud) -> np.ndarray:
    """Per-point ratio r2/r1 of the two nearest-neighbor distances.

    Exact brute force over the full distance matrix; ties are broken by
    smaller point index so results are deterministic.
    """
    n = pc.n
    dm = squareform(pdist(pc.points))
    np.fill_diagonal(dm, np.inf)
    # stable argsort keeps the smaller index first among equal distances
    nearest_two = np.argsort(dm, axis=1, kind="stable")[:, :2]
    r1 = dm[np.arange(n), nearest_two[:, 0]]
    r2 = dm[np.arange(n), nearest_two[:, 1]]
    if np.any(r1 == 0):
        bad = int(np.nonzero(r1 == 0)[0][0])
        raise DegenerateInputError(
            f"points {bad} and {int(nearest_two[bad, 0])} coincide; "
            "2NN ratios need a positive first-neighbor distance"
        )
    return r2 / r1


def estimate_id_2nn(pc: PointCloud, discard_fraction: float = 0.1,
                    method: str = "mle") -> IdEstimate:
    """Two-nearest-neighbor intrinsic dimension.

    The ratios mu = r2/r1 follow F(mu) = 1 - mu^(-d) on a locally uniform
    d-dimensional sample. The largest discard_fraction of the ratios is
    trimmed as heavy tail. "mle" treats the trimmed tail as right-censored at
    the largest retained ratio (plain maximum likelihood when the discard is
    zero); "fit" is the least-squares slope through the origin of
    (ln mu, -ln(1 - F_emp)) over the retained ratios.
    """
    if method not in ("mle", "fit"):
        raise ParameterError(f"unknown 2NN method {method!r}")
    if not 0 <= discard_fraction < 1:
        raise ParameterError(f"discard_fraction must be in [0, 1), got {discard_fraction}")
    if pc.n < 3:
        raise SizeError(f"2NN needs at least 3 points, got {pc.n}")
    mu = np.sort(neighbor_ratios(pc))
    n = pc.n
    n_used = n - int(np.floor(discard_fraction * n))
    if n_used < 2:
        raise ParameterError(
            f"discard_fraction {discard_fraction} leaves {n_used} < 2 ratios"
        )
    kept = mu[:n_used]
    log_kept = np.log(kept)
    if method == "mle":
        censored_tail = (n - n_used) * log_kept[-1]
        value = n_used / (log_kept.sum() + censored_tail)
    else:
        empirical = np.arange(1, n_used + 1) / n
        usable = empirical < 1.0  # the top point of an untrimmed sample sits at F=1
        x = log_kept[usable]
        y = -np.log1p(-empirical[usable])
        value = float(np.dot(x, y) / np.dot(x, x))
    return IdEstimate(
        value=float(value),
        method="two-nn-mle" if method == "mle" else "two-nn-fit",
        n_used=int(n_used),
        diagnostics={"discard_fraction": float(discard_fraction), "n_discarded": int(n - n_used)},
    )


def estimate_id_boxcount(pc: PointCloud, n_scales: int = 5,
                         scale_decay: float = 0.5) -> IdEstimate:
    """Minkowski-Bouligand (box-counting) dimension at finite scales.

    The cloud is translated to its bounding-box corner; for each scale
    eps_j = eps_0 * scale_decay^j (eps_0 the longest bounding-box side,
    j = 1..n_scales) the occupied axis-aligned grid cells are counted, and
    the estimate is the least-squares slope of log N(eps) vs log(1/eps).
    """
    if n_scales < 2:
        raise ParameterError(f"need at least 2 scales, got {n_scales}")
    if not 0 < scale_decay < 1:
        raise ParameterError(f"scale_decay must be in (0, 1), got {scale_decay}")
    shifted = pc.points - pc.points.min(axis=0)
    extent = shifted.max(axis=0)
    eps0 = float(extent.max())
    if eps0 == 0:
        raise DegenerateInputError("cloud has zero extent in every coordinate")
    scales, counts = [], []
    for j in range(1, n_scales + 1):
        eps = eps0 * scale_decay ** j
        cells = np.floor(shifted / eps).astype(np.int64)
        # points on the far boundary fall into the last cell
        n_cells = np.maximum(np.ceil(extent / eps).astype(np.int64), 1)
        cells = np.minimum(cells, n_cells - 1)
        scales.append(eps)
        counts.append(len(np.unique(cells, axis=0)))
    x = np.log(1.0 / np.array(scales))
    y = np.log(np.array(counts, dtype=np.float64))
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = y - y.mean()
    r_squared = 1.0 - residual @ residual / (total @ total) if np.any(total) else 1.0
    return IdEstimate(
        value=float(slope),
        method="box-count",
        n_used=pc.n,
        diagnostics={
            "scales": [float(s) for s in scales],
            "counts": [int(c) for c in counts],
            "r_squared": float(r_squared),
        },
    )
