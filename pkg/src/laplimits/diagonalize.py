"""
Congruence diagonalization of tree matrices and its linear-tree specialization.

``diagonalize_tree(t, x)`` returns a diagonal matrix congruent to ``M + xI``; by Sylvester's law of
inertia its sign counts locate the eigenvalues of M relative to ``-x``. Everything in the package
that works at a target mu therefore probes ``x = -mu``.

On a linear tree the back-node values obey a one-dimensional recurrence. With
``psi(t) = 2 - mu - 1/t`` and the drift ``delta(T, mu)`` of each star::

    S_1 = 1 - mu + delta(T_1)
    S_j = psi(S_{j-1}) + delta(T_j)          1 < j < k
    S_k = psi(S_{k-1}) + delta(T_k) - 1

and a lone back node (k = 1) has ``S_1 = -mu + delta(T_1)``.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, GuardTripped
from .interfaces import NumericBackend
from .models import (
    DiagOutcome,
    Inertia,
    LinearTree,
    MatrixKind,
    PiTrace,
    RadiusLocation,
    Real,
    RootedTree,
    Sign,
    Starlike,
)
from .tree_model import realize
from .utils.backend import FloatBackend


def diagonalize_tree(t: RootedTree, x: Real) -> DiagOutcome:
    """
    Diagonalize ``M + xI`` for the matrix M attached to a rooted tree.

    Arithmetic follows the type of x: an int is promoted to an exact Fraction, floats and mpmath
    values are used as given.

    Args:
        t: Tree with its diagonal entries and edge weights
        x: Shift added to the diagonal

    Returns:
        The congruent diagonal and its inertia
    """
    if isinstance(x, int):
        x = Fraction(x)
    d: List[Real] = [a + x for a in t.diagonal]
    attached = [True] * t.size  # edge to the parent still present
    for vertex, kids in enumerate(t.children()):
        if not kids:
            continue
        live = [child for child in kids if attached[child]]
        zero = next((child for child in live if d[child] == 0), None)
        if zero is None:
            for child in live:
                d[vertex] -= t.weights[child] ** 2 / d[child]
            continue
        d[vertex] = d[zero] - t.weights[zero] ** 2 / (d[zero] + 2)
        d[zero] = d[zero] + 2
        if t.parents[vertex] >= 0:
            attached[vertex] = False
    inertia = Inertia(
        below=sum(1 for value in d if value < 0),
        equal=sum(1 for value in d if value == 0),
        above=sum(1 for value in d if value > 0),
    )
    return DiagOutcome(diagonal=tuple(d), inertia=inertia, probe=x, kind=t.kind)


def location(
    t: RootedTree, value: Real, backend: Optional[NumericBackend] = None
) -> RadiusLocation:
    """
    Where the spectral radius of t sits relative to value, from the inertia at ``x = -value``.
    """
    if backend is not None and not isinstance(value, int):
        value = backend.num(value)
    inertia = diagonalize_tree(t, -value).inertia
    if inertia.above > 0:
        return RadiusLocation.ABOVE
    if inertia.equal > 0:
        return RadiusLocation.EQUALS
    return RadiusLocation.BELOW


class PathKernel:
    """The maps driving path and back-node values at a fixed target."""

    def __init__(self, mu: Real, backend: Optional[NumericBackend] = None):
        self.backend = backend or FloatBackend()
        self.mu = self.backend.num(mu)

    def psi(self, t: Real) -> Real:
        """Laplacian path map ``2 - mu - 1/t``."""
        return 2 - self.mu - 1 / t

    def phi(self, t: Real) -> Real:
        """Adjacency path map ``-lambda - 1/t`` with lambda = mu."""
        return -self.mu - 1 / t

    def fixed_points(self) -> Tuple[Real, Real]:
        """Attracting and repelling fixed points of psi."""
        if self.mu <= 4:
            raise DomainError("psi has real distinct fixed points only for mu > 4")
        root = self.backend.sqrt(self.mu * (self.mu - 4))
        return (2 - self.mu - root) / 2, (2 - self.mu + root) / 2


def _require_domain(mu: Real) -> None:
    if mu <= 4:
        raise DomainError(f"mu must exceed 4, got {mu}")


def _path_table(height: int, mu: Real) -> List[Real]:
    values: List[Real] = []
    if height >= 1:
        values.append(1 - mu)
    while len(values) < height:
        values.append(2 - mu - 1 / values[-1])
    return values


def path_values(q: int, mu: Real, backend: Optional[NumericBackend] = None) -> Tuple[Real, ...]:
    """
    Values ``b_1, ..., b_q`` along a path of q vertices hanging from a back node, leaf first.

    Args:
        q: Path length (vertices)
        mu: Target, above 4
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The path values; all negative and increasing toward the attracting fixed point
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    _require_domain(mu)
    if q < 1:
        raise DomainError("paths have at least one vertex")
    return tuple(_path_table(q, mu))


def _star_drift(star: Starlike, table: Sequence[Real], zero: Real) -> Real:
    total = zero
    for q in star.path_lengths:
        total += 1 - 1 / table[q - 1]
    return total


def drift(t: Starlike, mu: Real, backend: Optional[NumericBackend] = None) -> Real:
    """
    Drift ``sum over paths of (1 - 1/b_last)``; zero for the empty star.
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    _require_domain(mu)
    return _star_drift(t, _path_table(t.height, mu), backend.num(0))


def _sign(value: Real) -> Sign:
    if value < 0:
        return Sign.NEGATIVE
    return Sign.POSITIVE if value > 0 else Sign.ZERO


class _TraceState:
    """Path tables shared by every star of one trace."""

    def __init__(self, mu: Real, backend: NumericBackend):
        self.mu = mu
        self.zero = backend.num(0)
        self.table: List[Real] = []
        self.drifts: Dict[Starlike, Real] = {}

    def drift(self, star: Starlike) -> Real:
        if star not in self.drifts:
            if star.height > len(self.table):
                self.table = _path_table(star.height, self.mu)
            self.drifts[star] = _star_drift(star, self.table, self.zero)
        return self.drifts[star]

    def tails(self, star: Starlike) -> Tuple[Real, ...]:
        self.drift(star)
        return tuple(self.table[q - 1] for q in star.path_lengths)


def back_node_values(
    stars: Sequence[Starlike],
    mu: Real,
    backend: NumericBackend,
    closing: bool = True,
    guard: Optional[Real] = None,
    state: Optional["_TraceState"] = None,
) -> List[Real]:
    """
    The recurrence for S_j over a sequence of stars at a backend real mu.

    Args:
        stars: T_1, ..., T_k
        mu: Target, already a backend real
        backend: Arithmetic in use
        closing: Apply the end corrections of the last back node; off for interior values
        guard: Raise GuardTripped for values this close to zero
        state: Shared path tables

    Returns:
        S_1, ..., S_k
    """
    state = state or _TraceState(mu, backend)
    k = len(stars)
    values: List[Real] = []
    for j, star in enumerate(stars, start=1):
        if j == 1:
            value = (-mu if closing and k == 1 else 1 - mu) + state.drift(star)
        else:
            value = 2 - mu - 1 / values[-1] + state.drift(star)
            if closing and j == k:
                value -= 1
        if guard is not None and (value == 0 and j < k or value != 0 and abs(value) < guard):
            raise GuardTripped(j, value)
        values.append(value)
    return values


def _location_of(values: Sequence[Real]) -> RadiusLocation:
    if any(value > 0 for value in values):
        return RadiusLocation.ABOVE
    return RadiusLocation.EQUALS if values[-1] == 0 else RadiusLocation.BELOW


def pi_trace(g: LinearTree, mu: Real, backend: Optional[NumericBackend] = None) -> PiTrace:
    """
    Back-node values ``(S_1, ..., S_k)`` of g diagonalized at ``-mu``.

    Args:
        g: The linear tree
        mu: Target, above 4
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The trace with per-star path tails, drifts and signs

    Raises:
        GuardTripped: when a value S_j (other than an exact final zero) is within the backend's
            zero guard; classify() then falls back to diagonalize_tree
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    _require_domain(mu)
    guard = backend.guard()
    state = _TraceState(mu, backend)
    values = back_node_values(g.stars, mu, backend, guard=guard, state=state)
    return PiTrace(
        mu=mu,
        s_values=tuple(values),
        path_tails=tuple(state.tails(star) for star in g.stars),
        drifts=tuple(state.drift(star) for star in g.stars),
        sign_vector=tuple(_sign(value) for value in values),
        guard=guard,
    )


def classify(g: LinearTree, mu: Real, backend: Optional[NumericBackend] = None) -> RadiusLocation:
    """
    Whether the Laplacian spectral radius of g is below, equal to or above mu.

    The O(k) trace decides for mu above 4; near-zero values and targets at or below 4 go through
    the generic diagonalization.
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu) if not isinstance(mu, int) else mu
    if mu > 4:
        try:
            return _location_of(back_node_values(g.stars, mu, backend, guard=backend.guard()))
        except GuardTripped:
            pass
    return location(realize(g, MatrixKind.LAPLACIAN), mu)
