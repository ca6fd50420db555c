"""
Vietoris-Rips filtrations
=========================

A simplex joins the complex at its diameter. The filtration lists every
simplex up to max_dim in (value, dim, vertex) order, so faces always precede
cofaces and results are deterministic.
"""

import tempfile
from pathlib import Path

from manifoldq import DistanceMatrix, PointCloud, build_rips, pairwise_distances, write_debug_dump

# An equilateral triangle with side 1: vertices at 0, the edges at 1, and
# the filled triangle also at 1 (its diameter is still 1).
dm = DistanceMatrix([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
filtration = build_rips(dm, max_dim=2, eps_max="auto")
print("equilateral triangle, full filtration:")
for s in filtration.simplices:
    print(f"  value={s.value:<4g} dim={s.dim}  vertices={s.vertices}")

# A threshold below the edge length leaves only the vertices.
sparse = build_rips(DistanceMatrix([[0.0, 5.0], [5.0, 0.0]]), max_dim=2, eps_max=1.0)
print(f"\ntwo points at distance 5 with eps_max=1: {len(sparse)} simplices (just the vertices)")

# Simplex counts grow fast: a full filtration on n points has C(n, k+1)
# simplices in dimension k, which is why eps_max caps matter at scale.
pc = PointCloud([[float(i), float(i % 3)] for i in range(10)])
full = build_rips(pairwise_distances(pc), max_dim=3, eps_max="auto")
print(f"\nfull filtration on 10 points: {[full.count(d) for d in range(4)]} per dim "
      f"(C(10,1..4) = [10, 45, 120, 210])")

# The debug dump is a plain-text listing, handy for diffing implementations.
dump = Path(tempfile.mkdtemp(prefix="manifoldq_demo_")) / "filtration.txt"
write_debug_dump(filtration, dump)
print(f"\ndebug dump at {dump}:")
print(dump.read_text())
