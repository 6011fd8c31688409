"""Greedy Minkowski-arrangement covers and local-to-global density bounds."""

from .arrangement import (
    DepthReport,
    Family,
    Violation,
    depth,
    is_strict,
    max_intersecting_strict_subfamily,
    strictness_violations,
)
from .cover import CoverResult, greedy_cover
from .density import (
    Certificate,
    DepthBoundError,
    HypothesisError,
    HypothesisReport,
    Instance,
    check_hypothesis,
    default_depth_bound,
    global_ratio,
    make_certificate,
    verify_certificate,
)
from .generators import (
    RandomSpec,
    gen_counterexample,
    gen_hypercube_tight,
    gen_pentagon_tight,
    gen_random,
    gen_strict_family,
)
from .geometry import DEFAULT_TOL, Homothet, Kind, NormBody, TolerancePolicy, contains, gauge, gauges

__version__ = "0.1.0"
