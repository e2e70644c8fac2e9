"""
laplimits: Laplacian spectral radii of linear trees and their limit points

:license: Apache License 2.0, see LICENSE for more details.

Builds linear trees (stars hung along a path), locates their spectral radii by congruence
diagonalization, generates Shearer-type sequences whose radii climb toward a target, computes
limit points exactly and numerically, and certifies convergence with tangent-root bounds.
"""

__version__ = "0.1.0"

from .diagonalize import classify, diagonalize_tree, drift, path_values, pi_trace
from .errors import (
    DomainError,
    GuardTripped,
    LaplimitsError,
    LimitInconsistency,
    NotDominated,
    NotShearerSequence,
    OracleSizeExceeded,
    PrecisionExhausted,
    TreeSyntaxError,
)
from .interfaces import (
    CacheInterface,
    NumericBackend,
    PrinterInterface,
    ProgressIndicatorInterface,
    TimerInterface,
)
from .limits import (
    algebraic_limit,
    constant_tail_limit,
    dominated_check,
    drift_monotonicity_probe,
    estimate_limit,
    parse_sequence_spec,
    reference_constants,
    truncate,
)
from .models import (
    GeneratorPolicy,
    LinearTree,
    MatrixKind,
    RootedTree,
    SequenceSpec,
    ShearerRun,
    Starlike,
)
from .shearer import (
    classic_adjacency,
    classic_laplacian,
    generalized_random,
    nasty_interval,
    verify_nasty,
)
from .spectral import fixed_points, oracle_radius, radius, sigma_points
from .tree_model import format_linear_tree, is_subtree_step, parse_linear_tree, realize
from .variational import alpha_certificate, epsilon_sequence, x_growth

__all__ = [
    "parse_linear_tree",
    "format_linear_tree",
    "realize",
    "is_subtree_step",
    "diagonalize_tree",
    "pi_trace",
    "classify",
    "drift",
    "path_values",
    "radius",
    "oracle_radius",
    "fixed_points",
    "sigma_points",
    "classic_laplacian",
    "classic_adjacency",
    "generalized_random",
    "nasty_interval",
    "verify_nasty",
    "parse_sequence_spec",
    "estimate_limit",
    "truncate",
    "algebraic_limit",
    "constant_tail_limit",
    "dominated_check",
    "drift_monotonicity_probe",
    "reference_constants",
    "alpha_certificate",
    "epsilon_sequence",
    "x_growth",
    "Starlike",
    "LinearTree",
    "RootedTree",
    "MatrixKind",
    "SequenceSpec",
    "GeneratorPolicy",
    "ShearerRun",
    "LaplimitsError",
    "TreeSyntaxError",
    "DomainError",
    "GuardTripped",
    "NotShearerSequence",
    "NotDominated",
    "OracleSizeExceeded",
    "LimitInconsistency",
    "PrecisionExhausted",
    "CacheInterface",
    "NumericBackend",
    "PrinterInterface",
    "ProgressIndicatorInterface",
    "TimerInterface",
]
