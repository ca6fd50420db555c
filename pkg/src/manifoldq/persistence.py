"""Persistence diagrams via boundary-matrix reduction over Z/2.

The reduction processes one dimension at a time, highest first, with the
clearing optimization: a simplex that shows up as a pivot row while reducing
dimension p+1 is a known birth, so its own column in dimension p is skipped.
Pairs with death equal to birth are artifacts of simultaneous arrivals and
are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, IntegrityError, ParseError
from .geometry import DistanceMatrix
from .rips import Filtration, FilteredSimplex

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

INF = float("inf")


@dataclass(frozen=True)
class PersistencePair:
    birth: float
    death: float
    dim: int

    @property
    def lifespan(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of (birth, death) pairs for one homology dimension.

    pairs is an (m, 2) float64 array sorted by (birth, death); death may be
    +inf for classes that never die within the filtration.
    """

    dim: int
    pairs: np.ndarray

    @staticmethod
    def from_pairs(dim: int, pairs) -> "PersistenceDiagram":
        arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
        arr = arr[np.lexsort((arr[:, 1], arr[:, 0]))]
        arr.setflags(write=False)
        return PersistenceDiagram(dim, arr)

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PersistenceDiagram)
            and self.dim == other.dim
            and self.pairs.shape == other.pairs.shape
            and bool(np.array_equal(self.pairs, other.pairs))
        )

    def __repr__(self) -> str:
        return f"PersistenceDiagram(dim={self.dim}, n_pairs={len(self.pairs)})"


def boundary(simplex: FilteredSimplex) -> list:
    """Faces obtained by deleting each vertex in turn (Z/2, so no signs)."""
    if simplex.dim == 0:
        return []
    verts = simplex.vertices
    return [tuple(verts[:i] + verts[i + 1 :]) for i in range(len(verts))]


@njit(cache=True)
def _xor_merge(a, la, b, lb, out):
    """Symmetric difference of two sorted index arrays; returns output length."""
    i = j = k = 0
    while i < la and j < lb:
        if a[i] < b[j]:
            out[k] = a[i]; i += 1; k += 1
        elif a[i] > b[j]:
            out[k] = b[j]; j += 1; k += 1
        else:
            i += 1; j += 1
    while i < la:
        out[k] = a[i]; i += 1; k += 1
    while j < lb:
        out[k] = b[j]; j += 1; k += 1
    return k


@njit(cache=True)
def _reduce_dim(cols, n_rows, cleared):
    """Left-to-right column reduction of one dimension's boundary matrix.

    cols holds the sorted face row indices of each column; cleared marks
    columns skipped by the clearing optimization. Returns (pivot rows, their
    columns, zero-column mask).
    """
    m, w = cols.shape
    pivot_owner = np.full(n_rows, -1, np.int64)
    pool = np.empty(max(16, cols.size * 2), np.int64)
    pool_end = 0
    start = np.zeros(m, np.int64)
    length = np.zeros(m, np.int64)
    buf_a = np.empty(n_rows, np.int64)
    buf_b = np.empty(n_rows, np.int64)
    pair_row = np.empty(m, np.int64)
    pair_col = np.empty(m, np.int64)
    n_pairs = 0
    is_zero = np.zeros(m, np.uint8)
    for j in range(m):
        if cleared[j]:
            continue
        la = w
        for t in range(w):
            buf_a[t] = cols[j, t]
        cur, other = buf_a, buf_b
        while la > 0:
            low = cur[la - 1]
            owner = pivot_owner[low]
            if owner < 0:
                pivot_owner[low] = j
                pair_row[n_pairs] = low
                pair_col[n_pairs] = j
                n_pairs += 1
                if pool_end + la > pool.size:
                    bigger = np.empty(pool.size * 2 + la, np.int64)
                    bigger[:pool_end] = pool[:pool_end]
                    pool = bigger
                start[j] = pool_end
                length[j] = la
                pool[pool_end : pool_end + la] = cur[:la]
                pool_end += la
                break
            la = _xor_merge(cur, la, pool[start[owner] : start[owner] + length[owner]],
                            length[owner], other)
            cur, other = other, cur
        if la == 0:
            is_zero[j] = 1
    return pair_row[:n_pairs], pair_col[:n_pairs], is_zero


def _encode(verts: np.ndarray, n: int) -> np.ndarray:
    key = np.zeros(len(verts), dtype=np.int64)
    for c in range(verts.shape[1]):
        key = key * n + verts[:, c]
    return key


def _boundary_columns(filtration: Filtration, p: int) -> np.ndarray:
    """Row indices (into the (p-1)-simplex ordering) of each p-column's faces."""
    verts = filtration.verts_by_dim[p]
    vals = filtration.values_by_dim[p]
    fverts = filtration.verts_by_dim[p - 1]
    fvals = filtration.values_by_dim[p - 1]
    n = filtration.n_vertices
    fkeys = _encode(fverts, n)
    forder = np.argsort(fkeys)
    fsorted = fkeys[forder]
    m = len(verts)
    cols = np.empty((m, p + 1), dtype=np.int64)
    for t in range(p + 1):
        faces = np.delete(verts, t, axis=1)
        keys = _encode(faces, n)
        pos = np.searchsorted(fsorted, keys)
        found = (pos < len(fsorted)) & (fsorted[np.minimum(pos, len(fsorted) - 1)] == keys)
        if not np.all(found):
            bad = int(np.nonzero(~found)[0][0])
            raise IntegrityError(
                f"filtration is not face-closed: face of simplex {tuple(verts[bad])} missing"
            )
        cols[:, t] = forder[pos]
    if m and np.any(fvals[cols].max(axis=1) > vals):
        bad = int(np.nonzero(fvals[cols].max(axis=1) > vals)[0][0])
        raise IntegrityError(
            f"filtration value of simplex {tuple(verts[bad])} is below one of its faces"
        )
    cols.sort(axis=1)
    return cols


def compute_persistence(filtration: Filtration) -> list:
    """Persistence diagrams for dimensions 0 .. filtration.max_dim - 1."""
    max_dim = filtration.max_dim
    pairs = {q: [] for q in range(max_dim)}
    cleared = {
        q: np.zeros(filtration.count(q), np.uint8) for q in range(max_dim + 1)
    }
    zero_cols = {}
    for p in range(max_dim, 0, -1):
        if filtration.count(p) == 0:
            zero_cols[p] = np.zeros(0, np.uint8)
            continue
        cols = _boundary_columns(filtration, p)
        vals = filtration.values_by_dim[p]
        fvals = filtration.values_by_dim[p - 1]
        pivot_rows, pivot_cols, is_zero = _reduce_dim(cols, filtration.count(p - 1), cleared[p])
        zero_cols[p] = is_zero
        cleared[p - 1][pivot_rows] = 1
        births = fvals[pivot_rows]
        deaths = vals[pivot_cols]
        keep = deaths > births
        pairs[p - 1].extend(zip(births[keep], deaths[keep]))
    diagrams = []
    for q in range(max_dim):
        finite = pairs[q]
        if q == 0:
            essential_births = np.zeros(int(filtration.count(0) - cleared[0].sum()))
        else:
            vals = filtration.values_by_dim[q]
            mask = zero_cols[q].astype(bool) & ~cleared[q].astype(bool)
            essential_births = vals[mask] if len(vals) else np.zeros(0)
        rows = [(b, d) for b, d in finite] + [(b, INF) for b in essential_births]
        diagrams.append(PersistenceDiagram.from_pairs(q, np.array(rows).reshape(-1, 2)))
    return diagrams


class _UnionFind:
    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root


def compute_h0_unionfind(dm: DistanceMatrix, eps_max="auto") -> PersistenceDiagram:
    """Dimension-0 diagram by a Kruskal sweep; agrees with the reduction's H0.

    Each union of two components emits (0, edge value); components surviving
    at eps_max emit (0, inf). Zero-length merges (duplicate points) are
    dropped, matching the reduction's zero-persistence policy.
    """
    eps = dm.max_distance() if eps_max == "auto" else float(eps_max)
    n = dm.n
    i_idx, j_idx = np.nonzero(np.triu(dm.values <= eps, 1))
    w = dm.values[i_idx, j_idx]
    order = np.lexsort((j_idx, i_idx, w))
    uf = _UnionFind(n)
    deaths = []
    for k in order:
        a, b = uf.find(int(i_idx[k])), uf.find(int(j_idx[k]))
        if a != b:
            uf.parent[max(a, b)] = min(a, b)
            if w[k] > 0:
                deaths.append(w[k])
    rows = [(0.0, d) for d in deaths]
    n_components = len({uf.find(v) for v in range(n)})
    rows.extend((0.0, INF) for _ in range(n_components))
    return PersistenceDiagram.from_pairs(0, np.array(rows).reshape(-1, 2))


def write_diagrams_csv(diagrams, path_or_file) -> None:
    """Export diagrams as CSV "dim,birth,death"; infinite death is the token "inf"."""
    if hasattr(path_or_file, "write"):
        _write_diagrams(diagrams, path_or_file)
    else:
        with open(path_or_file, "w") as fh:
            _write_diagrams(diagrams, fh)


def _write_diagrams(diagrams, fh) -> None:
    fh.write("dim,birth,death\n")
    for dgm in diagrams:
        for birth, death in dgm.pairs:
            death_s = "inf" if np.isinf(death) else f"{death:.17g}"
            fh.write(f"{dgm.dim},{birth:.17g},{death_s}\n")


def read_diagrams_csv(path) -> list:
    """Parse a diagram CSV back into PersistenceDiagram objects, one per dim."""
    by_dim = {}
    with open(path, "r") as fh:
        header = fh.readline().strip()
        if header != "dim,birth,death":
            raise FormatError(f"{path}: expected header 'dim,birth,death', got {header!r}")
        for lineno, line in enumerate(fh, start=2):
            stripped = line.strip()
            if not stripped:
                continue
            tokens = stripped.split(",")
            if len(tokens) != 3:
                raise FormatError(f"{path}: line {lineno} has {len(tokens)} fields, expected 3")
            try:
                dim = int(tokens[0])
                birth = float(tokens[1])
                death = INF if tokens[2] == "inf" else float(tokens[2])
            except ValueError:
                raise ParseError(f"{path}: line {lineno}: cannot parse {stripped!r}") from None
            by_dim.setdefault(dim, []).append((birth, death))
    return [
        PersistenceDiagram.from_pairs(dim, np.array(rows).reshape(-1, 2))
        for dim, rows in sorted(by_dim.items())
    ]
