"""Scalar summaries of persistence diagrams.

Distances between diagrams use the standard optimal-matching construction:
ground distance between diagram points is Chebyshev (L-infinity), unmatched
points pay their distance to the diagonal, (death - birth) / 2. The trivial
diagram is the empty diagram, so the distance to it has the closed form
(sum of half-lifespans^p)^(1/p); for p = 1 that is half the lifespan sum.

Infinite deaths are resolved by an explicit policy before any metric is
evaluated: "exclude" drops them, "cap" replaces them with a supplied eps_max.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import ParameterError
from .persistence import PersistenceDiagram

POLICIES = ("exclude", "cap")


def resolve_pairs(diagram: PersistenceDiagram, policy: str = "exclude", eps_max=None) -> np.ndarray:
    """Apply an infinite-death policy, returning finite (birth, death) rows.

    Pairs left with zero persistence (e.g. born exactly at the cap) are
    dropped, matching the upstream convention.
    """
    if policy not in POLICIES:
        raise ParameterError(f"unknown infinite policy {policy!r}, expected one of {POLICIES}")
    pairs = np.array(diagram.pairs, dtype=np.float64).reshape(-1, 2)
    if policy == "exclude":
        pairs = pairs[np.isfinite(pairs[:, 1])]
    else:
        if eps_max is None:
            raise ParameterError("policy 'cap' requires eps_max")
        pairs[~np.isfinite(pairs[:, 1]), 1] = float(eps_max)
    return pairs[pairs[:, 1] > pairs[:, 0]]


def policy_label(policy: str, eps_max=None) -> str:
    return "excluded" if policy == "exclude" else f"capped({float(eps_max):g})"


def persistence_entropy(diagram: PersistenceDiagram, policy: str = "exclude", eps_max=None) -> float:
    """Shannon entropy (nats) of the normalized lifespans.

    With lifespans l_i over the policy-retained pairs, L = sum l_i and
    p_i = l_i / L, returns -sum p_i ln p_i. Empty and singleton diagrams
    carry no uncertainty and return 0.
    """
    pairs = resolve_pairs(diagram, policy, eps_max)
    if len(pairs) <= 1:
        return 0.0
    lifespans = pairs[:, 1] - pairs[:, 0]
    weights = lifespans / lifespans.sum()
    return float(-np.sum(weights * np.log(weights)))


def _check_pair_args(d1, d2, p):
    if d1.dim != d2.dim:
        raise ParameterError(f"diagram dimensions differ: {d1.dim} vs {d2.dim}")
    if p is not None and not p >= 1:
        raise ParameterError(f"p must be >= 1, got {p}")


def _diag_costs(pts: np.ndarray) -> np.ndarray:
    return (pts[:, 1] - pts[:, 0]) / 2.0


def _cross_costs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a[:, None, :] - b[None, :, :]).max(axis=2)


def wasserstein(d1: PersistenceDiagram, d2: PersistenceDiagram, p: float = 1.0,
                policy: str = "exclude", eps_max=None) -> float:
    """Exact p-Wasserstein distance between two diagrams.

    Solved as a square assignment problem over both point sets augmented with
    one diagonal slot per opposing point; matching a point to any diagonal
    slot costs its diagonal projection, and slot-to-slot pairs are free.
    """
    _check_pair_args(d1, d2, p)
    a = resolve_pairs(d1, policy, eps_max)
    b = resolve_pairs(d2, policy, eps_max)
    # canonical argument order makes the summation order, and hence the last
    # float of the result, independent of which diagram came first
    if (len(a), a.tobytes()) > (len(b), b.tobytes()):
        a, b = b, a
    m, n = len(a), len(b)
    if m == 0 and n == 0:
        return 0.0
    cost = np.zeros((m + n, n + m))
    if m and n:
        cost[:m, :n] = _cross_costs(a, b) ** p
    if m:
        cost[:m, n:] = (_diag_costs(a) ** p)[:, None]
    if n:
        cost[m:, :n] = (_diag_costs(b) ** p)[None, :]
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() ** (1.0 / p))


def wasserstein_to_trivial(diagram: PersistenceDiagram, p: float = 1.0,
                           policy: str = "exclude", eps_max=None) -> float:
    """Closed form of wasserstein(diagram, empty): (sum of half-lifespans^p)^(1/p)."""
    if not p >= 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    pairs = resolve_pairs(diagram, policy, eps_max)
    if len(pairs) == 0:
        return 0.0
    half = _diag_costs(pairs)
    return float(np.sum(half ** p) ** (1.0 / p))


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram,
               policy: str = "exclude", eps_max=None) -> float:
    """Exact bottleneck distance (the p -> infinity limit of wasserstein).

    Binary-searches the sorted candidate costs (all cross distances plus all
    diagonal projections) for the smallest value admitting a perfect matching
    in the thresholded bipartite graph.
    """
    _check_pair_args(d1, d2, None)
    a = resolve_pairs(d1, policy, eps_max)
    b = resolve_pairs(d2, policy, eps_max)
    m, n = len(a), len(b)
    if m == 0 and n == 0:
        return 0.0
    cost = np.zeros((m + n, n + m))
    if m and n:
        cost[:m, :n] = _cross_costs(a, b)
    if m:
        cost[:m, n:] = _diag_costs(a)[:, None]
    if n:
        cost[m:, :n] = _diag_costs(b)[None, :]
    candidates = np.unique(cost)
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching_exists(cost <= candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def _perfect_matching_exists(adjacency: np.ndarray) -> bool:
    graph = csr_matrix(adjacency)
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck_to_trivial(diagram: PersistenceDiagram,
                          policy: str = "exclude", eps_max=None) -> float:
    """Bottleneck distance to the empty diagram: the largest half-lifespan."""
    pairs = resolve_pairs(diagram, policy, eps_max)
    if len(pairs) == 0:
        return 0.0
    return float(_diag_costs(pairs).max())


@dataclass(frozen=True)
class DiagramSummary:
    """Scalar metrics of one diagram under one infinite-death policy."""

    dim: int
    entropy: float
    wasserstein_p: float
    wasserstein_value: float
    bottleneck: float
    n_features: int
    infinite_policy: str

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "entropy": self.entropy,
            "wasserstein": {"p": self.wasserstein_p, "value": self.wasserstein_value},
            "bottleneck": self.bottleneck,
            "n_features": self.n_features,
            "infinite_policy": self.infinite_policy,
        }


def summarize(diagram: PersistenceDiagram, p: float = 1.0,
              policy: str = "exclude", eps_max=None) -> DiagramSummary:
    """Entropy plus Wasserstein and bottleneck distances to the trivial diagram."""
    if not p >= 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    retained = resolve_pairs(diagram, policy, eps_max)
    return DiagramSummary(
        dim=diagram.dim,
        entropy=persistence_entropy(diagram, policy, eps_max),
        wasserstein_p=float(p),
        wasserstein_value=wasserstein_to_trivial(diagram, p, policy, eps_max),
        bottleneck=bottleneck_to_trivial(diagram, policy, eps_max),
        n_features=len(retained),
        infinite_policy=policy_label(policy, eps_max),
    )
