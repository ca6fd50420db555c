"""manifoldq: quantify the manifold underlying a point cloud.

Persistent homology (H0..H2) of Vietoris-Rips filtrations with entropy,
Wasserstein and bottleneck summaries, intrinsic-dimension estimation, and
tracking of these metrics across snapshot series against a reference cloud.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateInputError,
    EmptyInputError,
    FormatError,
    IntegrityError,
    MqError,
    ParameterError,
    ParseError,
    ShapeError,
    SizeError,
    UnsupportedDimensionError,
)
from .geometry import (
    DistanceMatrix,
    PointCloud,
    flatten_images,
    load_pointcloud,
    pairwise_distances,
    save_pointcloud,
    sniff_format,
    subsample,
    unflatten_images,
)
from .rips import FilteredSimplex, Filtration, build_rips, write_debug_dump
from .persistence import (
    PersistenceDiagram,
    PersistencePair,
    boundary,
    compute_h0_unionfind,
    compute_persistence,
    read_diagrams_csv,
    write_diagrams_csv,
)
from .diagram_metrics import (
    DiagramSummary,
    bottleneck,
    bottleneck_to_trivial,
    persistence_entropy,
    summarize,
    wasserstein,
    wasserstein_to_trivial,
)
from .intrinsic_dim import IdEstimate, estimate_id_2nn, estimate_id_boxcount, neighbor_ratios
from .shapes import ShapeSpec, circle_from_angles, generate
from .tracker import (
    ConvergenceReport,
    MetricVector,
    TrackConfig,
    analyze_snapshot,
    export_report,
    load_report_json,
    track,
)

__all__ = [
    "__version__",
    "MqError", "FormatError", "ParseError", "EmptyInputError", "ParameterError",
    "UnsupportedDimensionError", "SizeError", "ShapeError", "DegenerateInputError",
    "IntegrityError",
    "PointCloud", "DistanceMatrix", "load_pointcloud", "save_pointcloud", "sniff_format",
    "pairwise_distances", "subsample", "flatten_images", "unflatten_images",
    "FilteredSimplex", "Filtration", "build_rips", "write_debug_dump",
    "PersistencePair", "PersistenceDiagram", "boundary", "compute_persistence",
    "compute_h0_unionfind", "write_diagrams_csv", "read_diagrams_csv",
    "DiagramSummary", "persistence_entropy", "wasserstein", "wasserstein_to_trivial",
    "bottleneck", "bottleneck_to_trivial", "summarize",
    "IdEstimate", "estimate_id_2nn", "estimate_id_boxcount", "neighbor_ratios",
    "ShapeSpec", "circle_from_angles", "generate",
    "TrackConfig", "MetricVector", "ConvergenceReport", "analyze_snapshot", "track",
    "export_report", "load_report_json",
]
