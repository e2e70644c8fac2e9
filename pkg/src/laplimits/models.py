from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import DomainError

# Reals are whatever the numeric backend produces: float, fractions.Fraction or mpmath mpf.
Real = Any

_FROZEN = ConfigDict(frozen=True)
_NUMERIC = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class MatrixKind(str, Enum):
    """Matrix attached to a tree."""

    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless"

    @property
    def uses_degrees(self) -> bool:
        return self is not MatrixKind.ADJACENCY

    @property
    def edge_weight(self) -> int:
        return -1 if self is MatrixKind.LAPLACIAN else 1


# Trees
class Starlike(BaseModel):
    """Paths hanging from one back node; no paths is the star written ``[0]``."""

    model_config = _FROZEN

    path_lengths: Tuple[int, ...] = ()  # vertex count of each attached path, ascending

    @field_validator("path_lengths")
    @classmethod
    def _canonical(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(q < 1 for q in value):
            raise ValueError("path lengths must be positive")
        return tuple(sorted(value))

    @classmethod
    def of(cls, *lengths: int) -> "Starlike":
        return cls(path_lengths=tuple(lengths))

    @property
    def width(self) -> int:
        return len(self.path_lengths)

    @property
    def height(self) -> int:
        return self.path_lengths[-1] if self.path_lengths else 0

    @property
    def vertex_count(self) -> int:
        return sum(self.path_lengths)

    def __str__(self) -> str:
        if not self.path_lengths:
            return "[0]"
        return "[" + ",".join(str(q) for q in self.path_lengths) + "]"


EMPTY_STAR = Starlike()


class LinearTree(BaseModel):
    """Stars T_1..T_k attached along the main path v_1..v_k."""

    model_config = _FROZEN

    stars: Tuple[Starlike, ...]

    @field_validator("stars")
    @classmethod
    def _nonempty(cls, value: Tuple[Starlike, ...]) -> Tuple[Starlike, ...]:
        if not value:
            raise ValueError("a linear tree needs at least one star")
        return value

    @classmethod
    def of(cls, stars: Any) -> "LinearTree":
        return cls(stars=tuple(stars))

    @property
    def length(self) -> int:
        return len(self.stars)

    @property
    def vertex_count(self) -> int:
        return self.length + sum(star.vertex_count for star in self.stars)

    @property
    def max_width(self) -> int:
        return max(star.width for star in self.stars)

    @property
    def is_caterpillar(self) -> bool:
        return all(star.height <= 1 for star in self.stars)

    def caterpillar_counts(self) -> List[int]:
        if not self.is_caterpillar:
            raise ValueError("not a caterpillar: some attached path is longer than one vertex")
        return [star.width for star in self.stars]

    def __str__(self) -> str:
        return "[" + ",".join(str(star) for star in self.stars) + "]"


class RootedTree(BaseModel):
    """
    A tree with vertices numbered bottom-up: every vertex precedes its parent and the last
    vertex is the root. ``diagonal`` and ``weights`` give the matrix entries a_ii and a_i,parent.
    """

    model_config = _FROZEN

    parents: Tuple[int, ...]  # -1 for the root
    diagonal: Tuple[int, ...]
    weights: Tuple[int, ...]  # 0 for the root
    kind: MatrixKind = MatrixKind.LAPLACIAN
    back_nodes: Tuple[int, ...] = ()  # v_1..v_k when realized from a linear tree

    @model_validator(mode="after")
    def _elimination_order(self) -> "RootedTree":
        n = len(self.parents)
        if n == 0:
            raise ValueError("a rooted tree needs at least one vertex")
        if len(self.diagonal) != n or len(self.weights) != n:
            raise ValueError("diagonal and weights must have one entry per vertex")
        if self.parents[-1] != -1:
            raise ValueError("the last vertex must be the root")
        for vertex, parent in enumerate(self.parents[:-1]):
            if not vertex < parent < n:
                raise ValueError(f"vertex {vertex} must precede its parent {parent}")
        return self

    @property
    def size(self) -> int:
        return len(self.parents)

    @property
    def root(self) -> int:
        return self.size - 1

    def children(self) -> List[List[int]]:
        kids: List[List[int]] = [[] for _ in self.parents]
        for vertex, parent in enumerate(self.parents):
            if parent >= 0:
                kids[parent].append(vertex)
        return kids

    def degrees(self) -> List[int]:
        counts = [0 if parent < 0 else 1 for parent in self.parents]
        for parent in self.parents:
            if parent >= 0:
                counts[parent] += 1
        return counts

    def edges(self) -> List[Tuple[int, int]]:
        return [(vertex, parent) for vertex, parent in enumerate(self.parents) if parent >= 0]

    @classmethod
    def from_graph(
        cls, graph: nx.Graph, kind: MatrixKind = MatrixKind.LAPLACIAN, root: Any = None
    ) -> "RootedTree":
        """
        Rooted tree for an arbitrary networkx tree, numbered by a DFS post-order from root.

        Args:
            graph: An undirected tree
            kind: Matrix whose entries are attached
            root: Root node; the first node of the graph when omitted

        Returns:
            The RootedTree
        """
        if graph.number_of_nodes() == 0 or not nx.is_tree(graph):
            raise ValueError("graph is not a tree")
        root = next(iter(graph.nodes)) if root is None else root
        order = list(nx.dfs_postorder_nodes(graph, source=root))
        index = {node: i for i, node in enumerate(order)}
        predecessors = nx.dfs_predecessors(graph, source=root)
        parents = tuple(index[predecessors[node]] if node != root else -1 for node in order)
        degrees = tuple(graph.degree(node) for node in order)
        return cls(
            parents=parents,
            diagonal=degrees if kind.uses_degrees else (0,) * len(order),
            weights=tuple(0 if parent < 0 else kind.edge_weight for parent in parents),
            kind=kind,
        )

    def to_dense(self) -> np.ndarray:
        matrix = np.diag(np.array(self.diagonal, dtype=float))
        for vertex, parent in self.edges():
            matrix[vertex, parent] = matrix[parent, vertex] = self.weights[vertex]
        return matrix


# Diagonalization
class Inertia(BaseModel):
    """Eigenvalue counts below, at and above a location."""

    model_config = _FROZEN

    below: int
    equal: int
    above: int

    @property
    def total(self) -> int:
        return self.below + self.equal + self.above


class RadiusLocation(str, Enum):
    """Where the spectral radius sits relative to a target value."""

    BELOW = "below"
    EQUALS = "equals"
    ABOVE = "above"


class Sign(str, Enum):
    NEGATIVE = "-"
    ZERO = "0"
    POSITIVE = "+"


class DiagOutcome(BaseModel):
    """Diagonal congruent to M + xI and the inertia read from it."""

    model_config = _NUMERIC

    diagonal: Tuple[Real, ...]
    inertia: Inertia
    probe: Real  # x; the counts locate eigenvalues relative to -x
    kind: MatrixKind


class PiTrace(BaseModel):
    """Back-node values S_1..S_k of a linear tree diagonalized at -mu."""

    model_config = _NUMERIC

    mu: Real
    s_values: Tuple[Real, ...]
    path_tails: Tuple[Tuple[Real, ...], ...]  # per star, last value of each path
    drifts: Tuple[Real, ...]
    sign_vector: Tuple[Sign, ...]
    guard: Real  # zero threshold used

    @property
    def location(self) -> RadiusLocation:
        if Sign.POSITIVE in self.sign_vector:
            return RadiusLocation.ABOVE
        if self.sign_vector[-1] is Sign.ZERO:
            return RadiusLocation.EQUALS
        return RadiusLocation.BELOW


# Spectral
class FixedPoints(BaseModel):
    model_config = _NUMERIC

    mu: Real
    theta: Real  # attracting
    theta_prime: Real  # repelling, equals 1/theta


class SigmaPoints(BaseModel):
    model_config = _NUMERIC

    mu: Real
    drift: Real
    sigma: Real  # attracting
    sigma_prime: Real  # repelling, equals 1/sigma


class RadiusResult(BaseModel):
    model_config = _NUMERIC

    value: Real
    bracket: Tuple[Real, Real]
    iterations: int
    kind: MatrixKind
    tolerance: Real
    exact: bool = False  # located exactly by a zero diagonal value


class OracleResult(BaseModel):
    model_config = _NUMERIC

    value: float
    interval: Tuple[Any, Any]  # rational endpoints (fractions.Fraction)
    polynomial: Any  # sympy Poly


class DegreeBounds(BaseModel):
    model_config = _FROZEN

    lower: int  # max degree + 1
    edge_bound: int  # max over edges of d(u) + d(v)
    double_max_degree: int


# Generators
class ShearerMode(str, Enum):
    ADJACENCY_CLASSIC = "adjacency"
    LAPLACIAN_CLASSIC = "classic"
    GENERALIZED_RANDOM = "random"


class Selection(str, Enum):
    MAXIMIZE_DRIFT = "max-drift"
    UNIFORM_RANDOM = "uniform"
    CUSTOM_WEIGHTS = "weights"


class GeneratorPolicy(BaseModel):
    """Admissible stars and the rule choosing among them."""

    model_config = _FROZEN

    max_width: int = Field(default=4, ge=0)
    max_height: int = Field(default=2, ge=1)
    selection: Selection = Selection.MAXIMIZE_DRIFT
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    weights: Dict[str, float] = Field(default_factory=dict)  # star literal -> weight


class ShearerRun(BaseModel):
    model_config = _NUMERIC

    mode: ShearerMode
    target: Real  # mu, or lambda for adjacency runs
    stars: Tuple[Starlike, ...]
    counts: Optional[Tuple[int, ...]] = None  # r_j for caterpillar modes
    s_trace: Tuple[Real, ...]
    closing_value: Optional[Real] = None  # S_k with the end correction, classic mode
    radii: Tuple[Real, ...] = ()
    radii_start: int = 1  # k of radii[0]
    experimental: bool = False  # target below the guaranteed domain
    precision: int = 53

    @property
    def tree(self) -> LinearTree:
        return LinearTree(stars=self.stars)


class NastyInterval(BaseModel):
    model_config = _NUMERIC

    mu_star: Real
    mu_star_upper: Real
    lower_polynomial: Any
    upper_polynomial: Any
    lower_interval: Tuple[Any, Any]
    upper_interval: Tuple[Any, Any]


class NastyInequalities(BaseModel):
    model_config = _NUMERIC

    mu: Real
    lower_gap: Real  # theta^-1 - mu/(mu-1)
    sigma: Real
    first_value: Real  # 1 - mu + 3 mu/(mu-1)
    sigma_inverse: Real
    theta_inverse: Real
    outer_chain: bool
    inner_chain: bool


class NastyCheck(BaseModel):
    model_config = _NUMERIC

    mu: Real
    holds: bool


# Limits
class TailKind(str, Enum):
    ZERO = "zero"
    CONSTANT = "constant"
    PERIODIC = "periodic"


class ClosingKind(str, Enum):
    SHIFT = "shift"
    CONSTANT = "constant"
    EXPLICIT = "explicit"
    LEAF_PATH = "leaf-path"  # C_k = [1, k-1]


class TailSpec(BaseModel):
    model_config = _FROZEN

    kind: TailKind = TailKind.ZERO
    stars: Tuple[Starlike, ...] = ()

    @model_validator(mode="after")
    def _shape(self) -> "TailSpec":
        expected = {TailKind.ZERO: 0, TailKind.CONSTANT: 1}.get(self.kind)
        if expected is not None and len(self.stars) != expected:
            raise ValueError(f"{self.kind.value} tail takes {expected} star(s)")
        if self.kind is TailKind.PERIODIC and not self.stars:
            raise ValueError("periodic tail needs at least one star")
        return self


class ClosingRule(BaseModel):
    model_config = _FROZEN

    kind: ClosingKind = ClosingKind.SHIFT
    stars: Tuple[Starlike, ...] = ()

    @model_validator(mode="after")
    def _shape(self) -> "ClosingRule":
        if self.kind is ClosingKind.CONSTANT and len(self.stars) != 1:
            raise ValueError("constant closing takes exactly one star")
        if self.kind is ClosingKind.EXPLICIT and not self.stars:
            raise ValueError("explicit closing needs at least one star")
        return self


class SequenceSpec(BaseModel):
    """
    Star stream T = (prefix, tail...) and closing stars C; G_k = [T_1, ..., T_{k-1}, C_k].
    """

    model_config = _FROZEN

    prefix: Tuple[Starlike, ...]
    tail: TailSpec = TailSpec()
    closing: ClosingRule = ClosingRule()

    @field_validator("prefix")
    @classmethod
    def _nonempty(cls, value: Tuple[Starlike, ...]) -> Tuple[Starlike, ...]:
        if not value:
            raise ValueError("the prefix needs at least one star")
        return value

    def star(self, j: int) -> Starlike:
        """T_j, 1-based."""
        if j < 1:
            raise ValueError("star indices start at 1")
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        if self.tail.kind is TailKind.ZERO:
            return EMPTY_STAR
        offset = (j - len(self.prefix) - 1) % len(self.tail.stars)
        return self.tail.stars[offset]

    def closing_star(self, k: int) -> Starlike:
        """C_k, 1-based."""
        kind = self.closing.kind
        if kind is ClosingKind.CONSTANT:
            return self.closing.stars[0]
        if kind is ClosingKind.LEAF_PATH:
            return Starlike.of(1, k - 1) if k > 1 else Starlike.of(1)
        if kind is ClosingKind.EXPLICIT and k <= len(self.closing.stars):
            return self.closing.stars[k - 1]
        return self.star(k)

    def tree(self, k: int) -> LinearTree:
        """G_k."""
        stars = [self.star(j) for j in range(1, k)]
        stars.append(self.closing_star(k))
        return LinearTree(stars=tuple(stars))


class LimitEstimate(BaseModel):
    model_config = _NUMERIC

    gamma: Real  # radius of G_{k_max}
    radii: Tuple[Real, ...]
    gap: Optional[Real]  # rho(G_kmax) - rho(G_kmax - 1)
    k_max: int


class LimitCandidate(BaseModel):
    model_config = _NUMERIC

    root: Real
    interval: Tuple[Any, Any]
    branch: str  # which equation produced the root
    polynomial: Any
    admissible: bool  # branch condition holds at the root
    matches: bool = False  # within tolerance of the numeric estimate


class AlgebraicLimit(BaseModel):
    model_config = _NUMERIC

    defining_polynomial: Any
    witness: Any  # product of every branch polynomial
    candidates: Tuple[LimitCandidate, ...]
    selected_root: Real
    interval: Tuple[Any, Any]
    branch: str
    numeric_check: LimitEstimate
    tolerance: Real


class DegenerateLimit(BaseModel):
    """Limit on the boundary where both fixed points collapse (pure paths)."""

    model_config = _NUMERIC

    value: Real
    reason: str
    numeric_check: LimitEstimate


class ViolationReason(str, Enum):
    TRACE = "S_j reaches the repelling fixed point"
    DEGREE = "star width forces a radius above the target"
    DRIFT = "drift not below the target"
    CLOSING = "closing value is not negative"


class DominationReport(BaseModel):
    model_config = _NUMERIC

    mu: Real
    k: int
    passes: bool
    first_violation: Optional[int] = None
    reason: Optional[ViolationReason] = None


class DriftProbeReport(BaseModel):
    model_config = _NUMERIC

    j0: int
    original: Starlike
    replacement: Starlike
    evaluated_at: Real
    drift: Real
    replaced_drift: Real
    radius: Real
    replaced_radius: Real
    consistent: bool  # a larger drift did not lower the radius

    @property
    def radius_order(self) -> int:
        if self.replaced_radius > self.radius:
            return 1
        return -1 if self.replaced_radius < self.radius else 0


class ReferenceConstants(BaseModel):
    """
    Guo and Hoffman limit points.

    The two tuples are offset by one: ``guo_alpha[n]`` is alpha_n starting at n = 0, while
    ``hoffman_alpha_bar[n - 1]`` is alpha_bar_n starting at n = 1. Index through ``guo(n)`` and
    ``hoffman(n)``.
    """

    model_config = _NUMERIC

    guo_omega: Real
    guo_limit: Real
    guo_alpha: Tuple[Real, ...]  # n = 0..n_max
    hoffman_tau: Real
    hoffman_limit: Real
    hoffman_alpha_bar: Tuple[Real, ...]  # n = 1..n_max

    def guo(self, n: int) -> Real:
        if not 0 <= n < len(self.guo_alpha):
            raise DomainError(f"guo index {n} lies outside 0..{len(self.guo_alpha) - 1}")
        return self.guo_alpha[n]

    def hoffman(self, n: int) -> Real:
        if not 1 <= n <= len(self.hoffman_alpha_bar):
            raise DomainError(f"hoffman index {n} lies outside 1..{len(self.hoffman_alpha_bar)}")
        return self.hoffman_alpha_bar[n - 1]


# Certificates
class PathDerivatives(BaseModel):
    model_config = _NUMERIC

    mu: Real
    values: Tuple[Real, ...]  # b_j
    first: Tuple[Real, ...]  # b'_j
    second: Tuple[Real, ...]  # b''_j


class DriftDerivative(BaseModel):
    model_config = _NUMERIC

    value: Real
    contributions: Tuple[Real, ...]


class VerdictKind(str, Enum):
    CONVERGES_TO_MU = "converges-to-mu"
    STALLED_BELOW = "stalled-below"


class Verdict(BaseModel):
    model_config = _NUMERIC

    kind: VerdictKind
    evidence: Real  # last alpha
    gap: Optional[Real] = None  # extrapolated alpha plateau, or the last alpha


class Certificate(BaseModel):
    model_config = _NUMERIC

    mu: Real
    k: int
    precision: int
    s_values: Tuple[Real, ...]
    alpha: Tuple[Real, ...]  # alpha_1..alpha_k
    beta: Tuple[Real, ...]  # A_j = 1 + delta'(T_j)
    b_values: Tuple[Real, ...]  # B_j = 1 / S_j^2
    x_values: Tuple[Real, ...]
    closing_value: Real
    closing_alpha: Real
    epsilon: Optional[Dict[int, Real]] = None
    verdict: Verdict

    def alpha_at(self, j: int) -> Real:
        return self.alpha[j - 1]


class EpsilonSequence(BaseModel):
    model_config = _NUMERIC

    values: Dict[int, Optional[Real]]
    below_alpha: bool
    decreasing: bool


class GrowthKind(str, Enum):
    DIVERGENCE_EVIDENCE = "divergence-evidence"
    BOUNDED = "bounded"


class XGrowth(BaseModel):
    model_config = _NUMERIC

    x_values: Tuple[Real, ...]
    closed_form_error: Real  # max relative gap between recurrence and closed sum
    kind: GrowthKind
    sup: Real


# Command line
class SampleRecord(BaseModel):
    model_config = _FROZEN

    seed: int
    spec: str
    radius: float
    gap: Optional[float] = None


class CachedResult(BaseModel):
    """Model for a cached command result."""

    timestamp: float  # Timestamp when the result was cached
    command: str
    schema_name: str  # "laplimits.<kind>/1"
    payload: Dict[str, Any]


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """Validated settings of one command-line run; its JSON form keys the result cache."""

    model_config = _FROZEN

    command: str
    tree: Optional[str] = None  # tree literal, or a file holding one
    caterpillar: bool = False  # tree given as leaf counts r_1..r_k
    spec: Optional[str] = None  # sequence literal or named spec
    mu: Optional[str] = None  # decimal or constant expression, kept as text
    k: Optional[int] = Field(default=None, ge=1)
    k_max: Optional[int] = Field(default=None, ge=1)
    kind: MatrixKind = MatrixKind.LAPLACIAN
    mode: ShearerMode = ShearerMode.LAPLACIAN_CLASSIC
    policy: GeneratorPolicy = GeneratorPolicy()
    with_radii: bool = True
    oracle: bool = False
    tolerance: Optional[float] = Field(default=None, gt=0)
    backend: str = "f64"
    precision: int = Field(default=256, ge=53)
    seed: int = Field(default=0, ge=0, lt=2**64)
    indices: Tuple[int, ...] = ()
    epsilon: bool = False
    dominated_at: Optional[str] = None
    samples: int = Field(default=1, ge=0)
    workers: int = Field(default=1, ge=1)
    n_max: int = Field(default=10, ge=1)
    output_format: OutputFormat = OutputFormat.TEXT
    output: Optional[str] = None

    def cache_key_fields(self) -> Dict[str, Any]:
        """Fields that change the computed result (output routing excluded)."""
        return self.model_dump(mode="json", exclude={"output", "output_format", "workers"})
