"""Vietoris-Rips clique filtrations up to simplex dimension 3.

A simplex enters the filtration at its diameter (max pairwise distance among
its vertices). The canonical ordering is (value ascending, dimension
ascending, vertex tuple ascending), which guarantees every face precedes its
cofaces and makes downstream diagrams deterministic.
"""

from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import ParameterError, UnsupportedDimensionError
from .geometry import DistanceMatrix

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

MAX_SIMPLEX_DIM = 3


class FilteredSimplex(NamedTuple):
    vertices: tuple
    dim: int
    value: float


class Filtration:
    """All simplices of a Rips complex, grouped per dimension in canonical order.

    Per-dimension vertex/value arrays are the primary representation (the
    reduction consumes them directly); the flat `simplices` list is
    materialized on demand.
    """

    def __init__(self, verts_by_dim, values_by_dim, n_vertices, eps_max, max_dim):
        self.verts_by_dim = {d: _frozen(v) for d, v in verts_by_dim.items()}
        self.values_by_dim = {d: _frozen(x) for d, x in values_by_dim.items()}
        self.n_vertices = int(n_vertices)
        self.eps_max = float(eps_max)
        self.max_dim = int(max_dim)

    def count(self, dim: int) -> int:
        return len(self.values_by_dim.get(dim, ()))

    def __len__(self) -> int:
        return sum(self.count(d) for d in range(self.max_dim + 1))

    @cached_property
    def simplices(self) -> list:
        """Flat list of FilteredSimplex in reduction order."""
        dims, values, keys = [], [], []
        pad_width = self.max_dim + 1
        for d in range(self.max_dim + 1):
            v = self.verts_by_dim.get(d)
            if v is None or not len(v):
                continue
            padded = np.full((len(v), pad_width), -1, dtype=np.int64)
            padded[:, : d + 1] = v
            keys.append(padded)
            dims.append(np.full(len(v), d, dtype=np.int64))
            values.append(self.values_by_dim[d])
        dims = np.concatenate(dims)
        values = np.concatenate(values)
        keys = np.vstack(keys)
        order = np.lexsort(tuple(keys[:, c] for c in reversed(range(pad_width))) + (dims, values))
        out = []
        for i in order:
            d = int(dims[i])
            out.append(FilteredSimplex(tuple(int(x) for x in keys[i, : d + 1]), d, float(values[i])))
        return out

    def __repr__(self) -> str:
        counts = {d: self.count(d) for d in range(self.max_dim + 1)}
        return f"Filtration(n_vertices={self.n_vertices}, eps_max={self.eps_max:g}, counts={counts})"


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@njit(cache=True)
def _count_cofaces(adj, simplices):
    m, w = simplices.shape
    total = 0
    for s in range(m):
        last = simplices[s, w - 1]
        for cand in range(last + 1, adj.shape[0]):
            ok = True
            for t in range(w):
                if not adj[simplices[s, t], cand]:
                    ok = False
                    break
            if ok:
                total += 1
    return total


@njit(cache=True)
def _fill_cofaces(adj, simplices, out):
    m, w = simplices.shape
    k = 0
    for s in range(m):
        last = simplices[s, w - 1]
        for cand in range(last + 1, adj.shape[0]):
            ok = True
            for t in range(w):
                if not adj[simplices[s, t], cand]:
                    ok = False
                    break
            if ok:
                for t in range(w):
                    out[k, t] = simplices[s, t]
                out[k, w] = cand
                k += 1
    return k


def _expand(adj, simplices):
    """All (k+1)-simplices obtained by appending a higher-indexed common neighbor."""
    total = _count_cofaces(adj, simplices)
    out = np.empty((total, simplices.shape[1] + 1), dtype=np.int64)
    _fill_cofaces(adj, simplices, out)
    return out


def _diameters(dm_values, verts):
    m, w = verts.shape
    vals = np.zeros(m, dtype=np.float64)
    for a in range(w):
        for b in range(a + 1, w):
            np.maximum(vals, dm_values[verts[:, a], verts[:, b]], out=vals)
    return vals


def build_rips(dm: DistanceMatrix, max_dim: int, eps_max="auto") -> Filtration:
    """Enumerate every simplex of dimension <= max_dim with diameter <= eps_max.

    eps_max="auto" uses the full enclosing diameter (max matrix entry), giving
    the complete filtration. Homology is computable up to max_dim - 1, so pass
    max_dim=3 for H0..H2.
    """
    if not isinstance(max_dim, (int, np.integer)):
        raise ParameterError(f"max_dim must be an integer, got {max_dim!r}")
    if max_dim > MAX_SIMPLEX_DIM:
        raise UnsupportedDimensionError(
            f"max_dim {max_dim} unsupported; simplices are capped at dimension {MAX_SIMPLEX_DIM}"
        )
    if max_dim < 1:
        raise ParameterError(f"max_dim must be >= 1, got {max_dim}")
    if eps_max == "auto":
        eps = dm.max_distance()
    else:
        eps = float(eps_max)
        if not np.isfinite(eps) or eps <= 0:
            raise ParameterError(f"eps_max must be positive, got {eps_max!r}")

    n = dm.n
    d = dm.values
    adj = (d <= eps)
    np.fill_diagonal(adj, False)

    verts_by_dim = {0: np.arange(n, dtype=np.int64).reshape(-1, 1)}
    values_by_dim = {0: np.zeros(n, dtype=np.float64)}

    i_idx, j_idx = np.nonzero(np.triu(adj, 1))
    current = np.column_stack([i_idx, j_idx]).astype(np.int64)
    for dim in range(1, max_dim + 1):
        if dim > 1:
            current = _expand(adj, current) if len(current) else np.empty((0, dim + 1), np.int64)
        vals = _diameters(d, current) if len(current) else np.zeros(0)
        order = np.lexsort(tuple(current[:, c] for c in reversed(range(dim + 1))) + (vals,))
        current = current[order]
        verts_by_dim[dim] = current
        values_by_dim[dim] = vals[order]

    return Filtration(verts_by_dim, values_by_dim, n, eps, max_dim)


def write_debug_dump(filtration: Filtration, path) -> None:
    """Dump one simplex per line, "value dim v0 v1 ...", in reduction order."""
    with open(path, "w") as fh:
        for s in filtration.simplices:
            verts = " ".join(str(v) for v in s.vertices)
            fh.write(f"{s.value:.17g} {s.dim} {verts}\n")
