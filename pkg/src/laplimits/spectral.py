"""
Spectral radii by sign-count bisection, closed-form fixed points and an exact oracle.

The oracle builds the characteristic polynomial over the rationals by peeling leaves and counts
roots with Sturm chains, so it shares no code with the diagonalization it checks.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy

from .diagonalize import PathKernel, classify, location
from .errors import DomainError, OracleSizeExceeded
from .interfaces import NumericBackend
from .models import (
    DegreeBounds,
    FixedPoints,
    Inertia,
    LinearTree,
    MatrixKind,
    OracleResult,
    RadiusLocation,
    RadiusResult,
    Real,
    RootedTree,
    SigmaPoints,
)
from .tree_model import realize
from .utils.backend import ExactBackend, FloatBackend

_X = sympy.Symbol("x")
_ORACLE_MAX_VERTICES = 64
_ORACLE_TOLERANCE = Fraction(1, 10**12)
_MAX_ITERATIONS = 10_000

Tree = Union[LinearTree, RootedTree]


def fixed_points(mu: Real, backend: Optional[NumericBackend] = None) -> FixedPoints:
    """
    Fixed points of ``psi(t) = 2 - mu - 1/t``: the roots of ``t^2 + (mu - 2) t + 1``.

    Args:
        mu: Target, above 4
        backend: Arithmetic to use; f64 when omitted

    Returns:
        theta (attracting) and theta' (repelling)
    """
    kernel = PathKernel(mu, backend)
    theta, theta_prime = kernel.fixed_points()
    return FixedPoints(mu=kernel.mu, theta=theta, theta_prime=theta_prime)


def sigma_points(
    mu: Real, d: Optional[Real] = None, backend: Optional[NumericBackend] = None
) -> SigmaPoints:
    """
    Fixed points of the drifted map ``t -> (2 - mu + d) - 1/t``.

    Args:
        mu: Target
        d: Drift added per step; ``mu/(mu-1)`` (one leaf) when omitted
        backend: Arithmetic to use; f64 when omitted

    Returns:
        sigma (attracting) and sigma' = 1/sigma (repelling)
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    d = mu / (mu - 1) if d is None else backend.num(d)
    c = 2 - mu + d
    discriminant = c * c - 4
    if discriminant <= 0:
        raise DomainError("the drifted map has no real distinct fixed points")
    root = backend.sqrt(discriminant)
    return SigmaPoints(mu=mu, drift=d, sigma=(c - root) / 2, sigma_prime=(c + root) / 2)


def closed_form_orbit(
    start: Real, mu: Real, d: Real, j: int, backend: Optional[NumericBackend] = None
) -> Real:
    """
    The j-th term (j = 1 is start) of the orbit of start under the drifted map, in closed form.
    """
    backend = backend or FloatBackend()
    points = sigma_points(mu, d, backend)
    sigma, sigma_prime = points.sigma, points.sigma_prime
    start = backend.num(start)
    if start == sigma:
        return sigma
    beta = (sigma_prime - sigma) / (start - sigma) - 1
    try:
        return sigma + (sigma_prime - sigma) / (beta * sigma ** (2 * j - 2) + 1)
    except OverflowError:
        return sigma


def degree_bounds(t: Tree) -> DegreeBounds:
    """
    Degree bounds on the Laplacian spectral radius: ``max degree + 1 <= rho <= max edge degree
    sum <= 2 * max degree``.
    """
    tree = realize(t) if isinstance(t, LinearTree) else t
    degrees = tree.degrees()
    top = max(degrees)
    edge = max((degrees[u] + degrees[v] for u, v in tree.edges()), default=0)
    return DegreeBounds(lower=top + 1 if edge else 0, edge_bound=edge, double_max_degree=2 * top)


def width_bound(g: LinearTree) -> int:
    """Lower bound on rho_L read off the widest star: interior back nodes have degree width + 2."""
    if g.length == 1:
        return g.stars[0].width + 1
    widths = [star.width + 3 for star in g.stars[1:-1]]
    widths += [g.stars[0].width + 2, g.stars[-1].width + 2]
    return max(widths)


def _bracket(tree: RootedTree, kind: MatrixKind, backend: NumericBackend) -> Tuple[Real, Real]:
    degrees = tree.degrees()
    top = max(degrees)
    if kind is MatrixKind.ADJACENCY:
        edges = len(tree.edges())
        lower = max(backend.sqrt(backend.num(top)), backend.num(Fraction(2 * edges, tree.size)))
        return lower, backend.num(top)
    bounds = degree_bounds(tree)
    return backend.num(bounds.lower), backend.num(bounds.edge_bound)


def radius(
    g: Tree,
    kind: MatrixKind = MatrixKind.LAPLACIAN,
    tol: Optional[Real] = None,
    backend: Optional[NumericBackend] = None,
) -> RadiusResult:
    """
    Spectral radius by bisection on eigenvalue counts.

    Args:
        g: A linear tree or any rooted tree (a rooted tree carries its own matrix kind)
        kind: Matrix for linear trees
        tol: Bracket width at which to stop; the backend default when omitted
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The radius with its final bracket
    """
    backend = backend or FloatBackend()
    tol = backend.tolerance() if tol is None else backend.num(tol)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    linear = g if isinstance(g, LinearTree) else None
    tree = realize(g, kind) if isinstance(g, LinearTree) else g
    kind = tree.kind
    zero = backend.num(0)
    if tree.size == 1:
        return RadiusResult(
            value=zero, bracket=(zero, zero), iterations=0, kind=kind, tolerance=tol, exact=True
        )

    def probe(value: Real) -> RadiusLocation:
        if linear is not None and kind.uses_degrees and value > 4:
            return classify(linear, value, backend)
        return location(tree, value)

    lo, hi = _bracket(tree, kind, backend)
    for end in (lo, hi):
        if probe(end) is RadiusLocation.EQUALS:
            return RadiusResult(
                value=end, bracket=(end, end), iterations=0, kind=kind, tolerance=tol, exact=True
            )
    iterations = 0
    while hi - lo > tol and iterations < _MAX_ITERATIONS:
        iterations += 1
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        where = probe(mid)
        if where is RadiusLocation.EQUALS:
            return RadiusResult(
                value=mid,
                bracket=(mid, mid),
                iterations=iterations,
                kind=kind,
                tolerance=tol,
                exact=True,
            )
        if where is RadiusLocation.ABOVE:
            lo = mid
        else:
            hi = mid
    return RadiusResult(
        value=(lo + hi) / 2, bracket=(lo, hi), iterations=iterations, kind=kind, tolerance=tol
    )


def characteristic_polynomial(t: Tree) -> sympy.Poly:
    """
    ``det(xI - M)`` over the rationals, by peeling leaves.

    Each vertex keeps the characteristic polynomial of its subtree (f) and of its subtree with
    the vertex removed (g); a parent combines its children's pairs.
    """
    tree = realize(t) if isinstance(t, LinearTree) else t
    if tree.size > _ORACLE_MAX_VERTICES:
        raise OracleSizeExceeded(
            f"the exact oracle handles at most {_ORACLE_MAX_VERTICES} vertices, got {tree.size}"
        )
    one = sympy.Poly(1, _X, domain=sympy.QQ)
    kept: List[sympy.Poly] = []
    removed: List[sympy.Poly] = []
    children = tree.children()
    for vertex in range(tree.size):
        product, correction = one, one * 0
        for child in children[vertex]:
            weight = tree.weights[child] ** 2
            correction = correction * kept[child] + product * removed[child] * weight
            product = product * kept[child]
        own = sympy.Poly(_X - tree.diagonal[vertex], _X, domain=sympy.QQ)
        kept.append(own * product - correction)
        removed.append(product)
    return kept[tree.root]


def _rational(value: Real) -> sympy.Rational:
    exact = ExactBackend().num(value)
    return sympy.Rational(exact.numerator, exact.denominator)


def _sign_changes(chain: Sequence[sympy.Poly], point: sympy.Rational) -> int:
    signs = [sympy.sign(p.eval(point)) for p in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(poly: sympy.Poly, lo: Real, hi: Real) -> int:
    """
    Distinct real roots of poly in the half-open interval ``(lo, hi]``.
    """
    chain = sympy.sturm(poly)
    return _sign_changes(chain, _rational(lo)) - _sign_changes(chain, _rational(hi))


def _cauchy_bound(poly: sympy.Poly) -> sympy.Rational:
    coeffs = poly.all_coeffs()
    lead = abs(coeffs[0])
    return 1 + max((abs(c) / lead for c in coeffs[1:]), default=sympy.Integer(0))


def eigenvalue_counts(poly: sympy.Poly, value: Real) -> Inertia:
    """
    Roots of a real-rooted polynomial below, at and above value, counted with multiplicity.
    """
    point = _rational(value)
    below = equal = above = 0
    _, factors = poly.sqf_list()
    for factor, multiplicity in factors:
        if factor.degree() < 1:
            continue
        bound = _cauchy_bound(factor)
        at_most = sturm_count(factor, -bound - 1, point) if point > -bound - 1 else 0
        total = sturm_count(factor, -bound - 1, bound + 1)
        here = 1 if factor.eval(point) == 0 else 0
        below += (at_most - here) * multiplicity
        equal += here * multiplicity
        above += (total - at_most) * multiplicity
    return Inertia(below=below, equal=equal, above=above)


def isolate_real_roots(poly: sympy.Poly) -> List[Tuple[Fraction, Fraction]]:
    """
    Disjoint rational intervals, one per distinct real root, in increasing order.
    """
    intervals = []
    for (lo, hi), _ in poly.intervals():
        intervals.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    return sorted(intervals)


def refine_root(
    poly: sympy.Poly, interval: Tuple[Fraction, Fraction], tol: Real
) -> Tuple[Fraction, Fraction]:
    """
    Shrink an isolating interval of poly to width at most tol.
    """
    lo, hi = interval
    if lo == hi:
        return interval
    squarefree = poly.sqf_part()
    eps = _rational(tol)
    new_lo, new_hi = squarefree.refine_root(
        sympy.Rational(lo.numerator, lo.denominator),
        sympy.Rational(hi.numerator, hi.denominator),
        eps=eps,
    )
    return Fraction(int(new_lo.p), int(new_lo.q)), Fraction(int(new_hi.p), int(new_hi.q))


def oracle_radius(t: Tree, kind: MatrixKind = MatrixKind.LAPLACIAN) -> OracleResult:
    """
    Largest eigenvalue from the exact characteristic polynomial.

    Args:
        t: A linear tree (realized with kind) or a rooted tree
        kind: Matrix for linear trees

    Returns:
        The radius, its isolating interval (width at most 1e-12) and the polynomial
    """
    tree = realize(t, kind) if isinstance(t, LinearTree) else t
    poly = characteristic_polynomial(tree)
    lo, hi = refine_root(poly, isolate_real_roots(poly)[-1], _ORACLE_TOLERANCE)
    return OracleResult(value=float((lo + hi) / 2), interval=(lo, hi), polynomial=poly)
