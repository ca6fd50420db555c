"""Epoch-series analysis: metric vectors per snapshot cloud and gaps to a reference.

Every snapshot and the reference are processed under one shared configuration
(same subsample size and seed, same filtration and metric parameters), so the
trajectories are comparable and a reference tracked against itself has gaps
of exactly zero. Any snapshot failure aborts the whole run; partial
trajectories would silently corrupt convergence plots.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .diagram_metrics import (
    bottleneck_to_trivial,
    persistence_entropy,
    wasserstein_to_trivial,
)
from .errors import MqError, ParameterError, ShapeError
from .geometry import PointCloud, load_pointcloud, pairwise_distances, sniff_format, subsample
from .intrinsic_dim import estimate_id_2nn
from .persistence import compute_persistence
from .rips import build_rips

HASH_ALGORITHM = "sha256/canonical-json-v1"


@dataclass(frozen=True)
class TrackConfig:
    """Shared run configuration for a whole snapshot series."""

    subsample: int
    seed: int = 0
    max_dim: int = 3
    eps_max: float | str = "auto"
    p: float = 1.0
    infinite_policy: str = "exclude"
    discard_fraction: float = 0.1
    metric: str = "euclidean"

    def __post_init__(self):
        if self.infinite_policy not in ("exclude", "cap"):
            raise ParameterError(f"unknown infinite policy {self.infinite_policy!r}")
        if self.infinite_policy == "cap" and self.eps_max == "auto":
            raise ParameterError("infinite policy 'cap' needs a numeric eps_max")

    def to_dict(self) -> dict:
        return {
            "subsample": self.subsample,
            "seed": self.seed,
            "max_dim": self.max_dim,
            "eps_max": self.eps_max,
            "p": self.p,
            "infinite_policy": self.infinite_policy,
            "discard_fraction": self.discard_fraction,
            "metric": self.metric,
        }

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass(frozen=True)
class MetricVector:
    """All scalar metrics of one cloud under one configuration."""

    id_2nn: float
    entropy: dict = field(default_factory=dict)  # homology dim -> value
    wasserstein_to_trivial: dict = field(default_factory=dict)
    bottleneck_to_trivial: dict = field(default_factory=dict)
    p: float = 1.0
    n_points_used: int = 0
    config_hash: str = ""

    def scalars(self) -> dict:
        """Flat metric-name -> value view, the unit the gap report works in."""
        out = {"id_2nn": self.id_2nn}
        for dim in sorted(self.entropy):
            out[f"entropy_h{dim}"] = self.entropy[dim]
        for dim in sorted(self.wasserstein_to_trivial):
            out[f"wasserstein_h{dim}"] = self.wasserstein_to_trivial[dim]
        for dim in sorted(self.bottleneck_to_trivial):
            out[f"bottleneck_h{dim}"] = self.bottleneck_to_trivial[dim]
        return out

    def to_dict(self) -> dict:
        return {
            "id_2nn": self.id_2nn,
            "entropy": {str(k): v for k, v in sorted(self.entropy.items())},
            "wasserstein_to_trivial": {str(k): v for k, v in sorted(self.wasserstein_to_trivial.items())},
            "bottleneck_to_trivial": {str(k): v for k, v in sorted(self.bottleneck_to_trivial.items())},
            "p": self.p,
            "n_points_used": self.n_points_used,
            "config_hash": self.config_hash,
        }

    @staticmethod
    def from_dict(d: dict) -> "MetricVector":
        return MetricVector(
            id_2nn=d["id_2nn"],
            entropy={int(k): v for k, v in d["entropy"].items()},
            wasserstein_to_trivial={int(k): v for k, v in d["wasserstein_to_trivial"].items()},
            bottleneck_to_trivial={int(k): v for k, v in d["bottleneck_to_trivial"].items()},
            p=d["p"],
            n_points_used=d["n_points_used"],
            config_hash=d["config_hash"],
        )


@dataclass(frozen=True)
class ConvergenceReport:
    snapshots: tuple  # of (label, MetricVector), input order preserved
    reference: MetricVector
    gaps: tuple  # of (label, {metric name: |snapshot - reference|})
    config: TrackConfig

    def gap(self, label: str, metric: str) -> float:
        for lab, gapdict in self.gaps:
            if lab == label:
                return gapdict[metric]
        raise KeyError(label)


def analyze_snapshot(pc: PointCloud, cfg: TrackConfig, label: str | None = None) -> MetricVector:
    """Metric vector of one cloud: subsample, distances, Rips, persistence,
    per-dimension summaries, plus the 2NN dimension estimate of the subsample."""
    try:
        sub = subsample(pc, cfg.subsample, cfg.seed)
        dm = pairwise_distances(sub, cfg.metric)
        filtration = build_rips(dm, cfg.max_dim, cfg.eps_max)
        diagrams = compute_persistence(filtration)
        eps_for_policy = filtration.eps_max if cfg.infinite_policy == "cap" else None
        entropy, w_trivial, b_trivial = {}, {}, {}
        for dgm in diagrams:
            entropy[dgm.dim] = persistence_entropy(dgm, cfg.infinite_policy, eps_for_policy)
            w_trivial[dgm.dim] = wasserstein_to_trivial(dgm, cfg.p, cfg.infinite_policy, eps_for_policy)
            b_trivial[dgm.dim] = bottleneck_to_trivial(dgm, cfg.infinite_policy, eps_for_policy)
        id_est = estimate_id_2nn(sub, cfg.discard_fraction, method="mle")
    except MqError as exc:
        if label is not None:
            raise type(exc)(f"snapshot {label!r}: {exc}") from exc
        raise
    return MetricVector(
        id_2nn=id_est.value,
        entropy=entropy,
        wasserstein_to_trivial=w_trivial,
        bottleneck_to_trivial=b_trivial,
        p=cfg.p,
        n_points_used=cfg.subsample,
        config_hash=cfg.config_hash,
    )


def track(snapshot_paths, reference_path, cfg: TrackConfig, threads: int | None = None) -> ConvergenceReport:
    """Analyze an ordered snapshot series against a reference cloud.

    Labels are the file stems; the given order is authoritative. All files
    must share one ambient dimension. Snapshots are independent and run on a
    thread pool; assembly preserves input order.
    """
    snapshot_paths = [Path(p) for p in snapshot_paths]
    if not snapshot_paths:
        raise ParameterError("need at least one snapshot")
    reference_path = Path(reference_path)
    clouds = []
    for path in [*snapshot_paths, reference_path]:
        clouds.append(load_pointcloud(path, sniff_format(path)))
    dims = {c.ambient_dim for c in clouds}
    if len(dims) != 1:
        raise ShapeError(f"mixed ambient dimensions across input files: {sorted(dims)}")
    *snap_clouds, ref_cloud = clouds
    labels = [p.stem for p in snapshot_paths]

    def job(args):
        label, cloud = args
        return analyze_snapshot(cloud, cfg, label)

    if threads == 1 or len(snap_clouds) == 1:
        vectors = [job(a) for a in zip(labels, snap_clouds)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vectors = list(pool.map(job, zip(labels, snap_clouds)))
    reference = analyze_snapshot(ref_cloud, cfg, reference_path.stem)

    ref_scalars = reference.scalars()
    gaps = tuple(
        (label, {k: abs(v - ref_scalars[k]) for k, v in vec.scalars().items()})
        for label, vec in zip(labels, vectors)
    )
    return ConvergenceReport(
        snapshots=tuple(zip(labels, vectors)),
        reference=reference,
        gaps=gaps,
        config=cfg,
    )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def export_report(report: ConvergenceReport, format: str = "csv", path=None) -> None:
    """Write a report to disk.

    csv: header then one row per snapshot with every metric and every gap,
    all numerics at 17 significant digits (byte-stable across runs).
    json: the full nested structure including the configuration and its hash.
    """
    if format == "csv":
        metric_names = list(report.reference.scalars().keys())
        header = ["label", "n_points_used"] + metric_names + [f"gap_{m}" for m in metric_names]
        lines = [",".join(header)]
        for (label, vec), (_, gapdict) in zip(report.snapshots, report.gaps):
            scalars = vec.scalars()
            row = [label, str(vec.n_points_used)]
            row += [_fmt(scalars[m]) for m in metric_names]
            row += [_fmt(gapdict[m]) for m in metric_names]
            lines.append(",".join(row))
        Path(path).write_text("\n".join(lines) + "\n")
    elif format == "json":
        doc = {
            "config": report.config.to_dict(),
            "config_hash": report.config.config_hash,
            "hash_algorithm": HASH_ALGORITHM,
            "reference": report.reference.to_dict(),
            "snapshots": [
                {"label": label, "metrics": vec.to_dict()} for label, vec in report.snapshots
            ],
            "gaps": [{"label": label, "values": gapdict} for label, gapdict in report.gaps],
        }
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        raise ParameterError(f"unknown report format {format!r}")


def load_report_json(path) -> ConvergenceReport:
    """Parse a JSON report back into a structurally identical ConvergenceReport."""
    doc = json.loads(Path(path).read_text())
    cfg_dict = doc["config"]
    eps = cfg_dict["eps_max"]
    cfg = TrackConfig(
        subsample=cfg_dict["subsample"],
        seed=cfg_dict["seed"],
        max_dim=cfg_dict["max_dim"],
        eps_max=eps if eps == "auto" else float(eps),
        p=cfg_dict["p"],
        infinite_policy=cfg_dict["infinite_policy"],
        discard_fraction=cfg_dict["discard_fraction"],
        metric=cfg_dict["metric"],
    )
    return ConvergenceReport(
        snapshots=tuple(
            (entry["label"], MetricVector.from_dict(entry["metrics"]))
            for entry in doc["snapshots"]
        ),
        reference=MetricVector.from_dict(doc["reference"]),
        gaps=tuple((entry["label"], entry["values"]) for entry in doc["gaps"]),
        config=cfg,
    )


def natural_sort_key(name: str):
    """Sort key treating digit runs as numbers, so epoch_2 < epoch_10."""
    import re

    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", str(name))]
