"""Random subcube intersection graphs.

Sampling of binomial and uniform random subcube families on the hypercube,
exact clique/covering analysis, closed-form threshold formulas, and a
Monte Carlo threshold-scan harness. The heavy lifting lives in the compiled
extension module ``rsig._core``.
"""

from ._core import (  # noqa: F401
    Family,
    Model,
    Point,
    Seed,
    Subcube,
    __version__,
    bron_kerbosch_max_clique,
    clique_members,
    clique_number,
    contains_point,
    count_c4,
    dimension_at_hitting,
    edge_count,
    edges,
    estimate_probability,
    hamming_distance,
    hitting_ensemble,
    hitting_time,
    intersection,
    intersects,
    is_cover,
    max_coverage_depth,
    quasirandomness_report,
    restrict,
    sample_family,
    theory,
    threshold_scan,
    uncovered_count,
)

__all__ = [
    "Family",
    "Model",
    "Point",
    "Seed",
    "Subcube",
    "__version__",
    "bron_kerbosch_max_clique",
    "clique_members",
    "clique_number",
    "contains_point",
    "count_c4",
    "dimension_at_hitting",
    "edge_count",
    "edges",
    "estimate_probability",
    "hamming_distance",
    "hitting_ensemble",
    "hitting_time",
    "intersection",
    "intersects",
    "is_cover",
    "max_coverage_depth",
    "quasirandomness_report",
    "restrict",
    "sample_family",
    "theory",
    "threshold_scan",
    "uncovered_count",
]
