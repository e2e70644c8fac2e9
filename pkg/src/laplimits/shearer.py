"""
Constructive generators of Shearer-type sequences and the nasty-interval checks.

Each generator greedily picks the next star so that the back-node value stays below the repelling
fixed point theta' of the path map; that keeps every radius below the target while letting the
radii climb toward it.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import sympy

from .diagonalize import PathKernel, drift
from .errors import DomainError
from .interfaces import NumericBackend
from .limits import guo_limit
from .models import (
    EMPTY_STAR,
    GeneratorPolicy,
    LinearTree,
    MatrixKind,
    NastyCheck,
    NastyInequalities,
    NastyInterval,
    Real,
    Selection,
    ShearerMode,
    ShearerRun,
    Starlike,
)
from .spectral import fixed_points, isolate_real_roots, radius, refine_root, sigma_points
from .tree_model import from_caterpillar
from .utils.backend import FloatBackend
from .utils.rng import stream

_X = sympy.Symbol("x")
_NASTY_LOWER = sympy.Poly(_X**2 - 5 * _X - 2, _X, domain=sympy.ZZ)
_NASTY_UPPER = sympy.Poly(2 * _X**4 - 14 * _X**3 + 19 * _X**2 - 10 * _X - 1, _X, domain=sympy.ZZ)
_SWEEP_MARGIN = 1e-6


class _FloorTie(Exception):
    """A floor argument sits within the guard of an integer."""


def _checked_floor(value: Real, backend: NumericBackend) -> int:
    n = backend.floor(value)
    guard = backend.guard()
    if guard and (value - n < guard or n + 1 - value < guard):
        raise _FloorTie()
    return n


def _with_tie_retry(build: Callable[[NumericBackend, bool], Any], backend: NumericBackend) -> Any:
    """Run build, doubling precision on floor ties; at the cap ties are floored as they are."""
    while True:
        stronger = backend.doubled()
        at_cap = stronger is backend or stronger.precision == backend.precision
        try:
            return build(backend, not at_cap)
        except _FloorTie:
            backend = stronger


def _floor(value: Real, backend: NumericBackend, strict: bool) -> int:
    return _checked_floor(value, backend) if strict else backend.floor(value)


def _radii(trees: Sequence[LinearTree], kind: MatrixKind) -> Tuple[float, ...]:
    estimator = FloatBackend()
    return tuple(float(radius(g, kind=kind, backend=estimator).value) for g in trees)


def classic_laplacian(
    mu: Real, k: int, backend: Optional[NumericBackend] = None, with_radii: bool = True
) -> ShearerRun:
    """
    Classic Laplacian Shearer caterpillar ``[r_1, ..., r_k]`` for target mu.

    Each interior count is the largest r keeping ``base + r * mu/(mu-1)`` at or below theta',
    where base is ``1 - mu`` for the first star and ``psi(S_{j-1})`` afterwards. The last star
    absorbs the end correction, so its count may exceed the interior rule by one.

    Args:
        mu: Target, above 4
        k: Number of stars, at least 2
        backend: Arithmetic for the trace; f64 when omitted
        with_radii: Also estimate rho_L(G_2), ..., rho_L(G_k), each closed with its own last star

    Returns:
        The run; ``s_trace`` holds S_1..S_k with the end correction applied to S_k
    """
    if k < 2:
        raise DomainError("classic sequences need at least two stars")
    source = mu

    def build(backend: NumericBackend, strict: bool) -> Tuple[Any, ...]:
        kernel = PathKernel(source, backend)
        mu = kernel.mu
        theta_prime = fixed_points(mu, backend).theta_prime
        factor, leaf = (mu - 1) / mu, mu / (mu - 1)
        counts: List[int] = []
        closers: List[int] = []  # last-star count if the run stopped at j
        values: List[Real] = []
        for j in range(1, k + 1):
            base = 1 - mu if j == 1 else kernel.psi(values[-1])
            if j >= 2:
                closers.append(_floor(factor * (theta_prime + 1 - base), backend, strict))
            if j < k:
                r = _floor(factor * (theta_prime - base), backend, strict)
                counts.append(r)
                values.append(base + r * leaf)
            else:
                counts.append(closers[-1])
                values.append(base + closers[-1] * leaf - 1)
        return backend, mu, counts, closers, values

    backend, mu, counts, closers, values = _with_tie_retry(build, backend or FloatBackend())
    radii: Tuple[float, ...] = ()
    if with_radii:
        trees = [from_caterpillar(counts[: kk - 1] + [closers[kk - 2]]) for kk in range(2, k + 1)]
        radii = _radii(trees, MatrixKind.LAPLACIAN)
    return ShearerRun(
        mode=ShearerMode.LAPLACIAN_CLASSIC,
        target=mu,
        stars=from_caterpillar(counts).stars,
        counts=tuple(counts),
        s_trace=tuple(values),
        closing_value=values[-1],
        radii=radii,
        radii_start=2,
        experimental=bool(mu < guo_limit(backend)),
        precision=backend.precision,
    )


def adjacency_threshold(backend: Optional[NumericBackend] = None) -> Real:
    """``sqrt(2 + sqrt(5))``, the bottom of the adjacency construction."""
    backend = backend or FloatBackend()
    return backend.sqrt(2 + backend.sqrt(backend.num(5)))


def classic_adjacency(
    lam: Real, k: int, backend: Optional[NumericBackend] = None, with_radii: bool = True
) -> ShearerRun:
    """
    Adjacency Shearer caterpillar for target lambda.

    ``R_1 = -lambda + r_1/lambda`` and ``R_j = phi(R_{j-1}) + r_j/lambda`` with
    ``phi(t) = -lambda - 1/t``; every r_j is the largest count keeping R_j at or below the
    repelling fixed point ``(-lambda + sqrt(lambda^2 - 4)) / 2``.

    Args:
        lam: Target, at least sqrt(2 + sqrt(5))
        k: Number of stars, at least 2
        backend: Arithmetic for the trace; f64 when omitted
        with_radii: Also estimate the adjacency radii of every prefix

    Returns:
        The run with R_1..R_k in ``s_trace``
    """
    if k < 2:
        raise DomainError("classic sequences need at least two stars")
    source = lam

    def build(backend: NumericBackend, strict: bool) -> Tuple[Any, ...]:
        kernel = PathKernel(source, backend)
        lam = kernel.mu
        if lam < adjacency_threshold(backend) - backend.guard():
            raise DomainError("lambda must be at least sqrt(2 + sqrt(5))")
        theta_prime = (-lam + backend.sqrt(lam * lam - 4)) / 2
        counts: List[int] = []
        values: List[Real] = []
        for j in range(1, k + 1):
            base = -lam if j == 1 else kernel.phi(values[-1])
            r = _floor(lam * (theta_prime - base), backend, strict)
            counts.append(r)
            values.append(base + r / lam)
        return backend, lam, counts, values

    backend, lam, counts, values = _with_tie_retry(build, backend or FloatBackend())
    radii: Tuple[float, ...] = ()
    if with_radii:
        trees = [from_caterpillar(counts[:kk]) for kk in range(1, k + 1)]
        radii = _radii(trees, MatrixKind.ADJACENCY)
    return ShearerRun(
        mode=ShearerMode.ADJACENCY_CLASSIC,
        target=lam,
        stars=from_caterpillar(counts).stars,
        counts=tuple(counts),
        s_trace=tuple(values),
        radii=radii,
        radii_start=1,
        precision=backend.precision,
    )


def admissible_stars(policy: GeneratorPolicy) -> Tuple[Starlike, ...]:
    """
    Candidate stars of a policy: by width, then height, then path lengths in lexicographic order.
    """
    stars = [EMPTY_STAR]
    for width in range(1, policy.max_width + 1):
        for height in range(1, policy.max_height + 1):
            for lengths in combinations_with_replacement(range(1, height + 1), width):
                if lengths[-1] == height:
                    stars.append(Starlike.of(*lengths))
    return tuple(stars)


def _choose(
    fitting: List[Starlike], drifts: Dict[Starlike, Real], policy: GeneratorPolicy, j: int
) -> Starlike:
    if policy.selection is Selection.MAXIMIZE_DRIFT:
        best = fitting[0]
        for star in fitting[1:]:
            if drifts[star] > drifts[best]:
                best = star
        return best
    rng = stream(policy.rng_seed, j)
    if policy.selection is Selection.UNIFORM_RANDOM:
        return fitting[int(rng.integers(len(fitting)))]
    weights = [max(policy.weights.get(str(star), 0.0), 0.0) for star in fitting]
    total = sum(weights)
    if total == 0:
        return EMPTY_STAR
    return fitting[int(rng.choice(len(fitting), p=[w / total for w in weights]))]


def generalized_random(
    mu: Real,
    k: int,
    policy: Optional[GeneratorPolicy] = None,
    backend: Optional[NumericBackend] = None,
    with_radii: bool = True,
) -> ShearerRun:
    """
    Generalized Shearer process: any star whose drift keeps ``psi(S_{j-1}) + delta`` below theta'
    may be chosen, and the policy decides which.

    The closing star of G_k is T_k itself.

    Args:
        mu: Target, above 4
        k: Number of stars
        policy: Candidate stars and selection rule; drift-maximizing over widths <= 4 and heights
            <= 2 when omitted
        backend: Arithmetic for the trace; f64 when omitted
        with_radii: Also estimate rho_L(G_1), ..., rho_L(G_k)

    Returns:
        The run; ``s_trace`` holds the interior values and ``closing_value`` the end-corrected S_k
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    policy = policy or GeneratorPolicy()
    backend = backend or FloatBackend()
    kernel = PathKernel(mu, backend)
    mu = kernel.mu
    theta_prime = fixed_points(mu, backend).theta_prime
    pool = admissible_stars(policy)
    drifts = {star: drift(star, mu, backend) for star in pool}
    stars: List[Starlike] = []
    values: List[Real] = []
    for j in range(1, k + 1):
        base = 1 - mu if j == 1 else kernel.psi(values[-1])
        fitting = [star for star in pool if base + drifts[star] < theta_prime]
        star = _choose(fitting, drifts, policy, j)
        stars.append(star)
        values.append(base + drifts[star])
    radii: Tuple[float, ...] = ()
    if with_radii:
        trees = [LinearTree.of(stars[:kk]) for kk in range(1, k + 1)]
        radii = _radii(trees, MatrixKind.LAPLACIAN)
    closing = values[-1] - 1  # also the lone-vertex value when k = 1
    return ShearerRun(
        mode=ShearerMode.GENERALIZED_RANDOM,
        target=mu,
        stars=tuple(stars),
        s_trace=tuple(values),
        closing_value=closing,
        radii=radii,
        radii_start=1,
        experimental=bool(mu < guo_limit(backend)),
        precision=backend.precision,
    )


# Nasty interval
def _largest_root(poly: sympy.Poly, backend: NumericBackend) -> Tuple[Real, Tuple[Any, Any]]:
    bits = max(backend.precision, 53) + 8
    lo, hi = refine_root(poly, isolate_real_roots(poly)[-1], Fraction(1, 2**bits))
    return backend.num((lo + hi) / 2), (lo, hi)


def nasty_interval(backend: Optional[NumericBackend] = None) -> NastyInterval:
    """
    The interval where the classic Laplacian sequence is ``[3, 1, ..., 1, 2]``.

    The left end ``(5 + sqrt(33)) / 2`` is the largest root of ``x^2 - 5x - 2``; the right end is
    the largest root of ``2x^4 - 14x^3 + 19x^2 - 10x - 1``.
    """
    backend = backend or FloatBackend()
    _, lower_interval = _largest_root(_NASTY_LOWER, backend)
    upper, upper_interval = _largest_root(_NASTY_UPPER, backend)
    return NastyInterval(
        mu_star=(5 + backend.sqrt(backend.num(33))) / 2,
        mu_star_upper=upper,
        lower_polynomial=_NASTY_LOWER,
        upper_polynomial=_NASTY_UPPER,
        lower_interval=lower_interval,
        upper_interval=upper_interval,
    )


def verify_nasty(mu: Real, k: int, backend: Optional[NumericBackend] = None) -> bool:
    """
    Whether classic_laplacian(mu, k) is the caterpillar ``[3, 1, ..., 1, 2]``.

    Raises:
        DomainError: for k < 3 or mu outside the nasty interval
    """
    backend = backend or FloatBackend()
    if k < 3:
        raise DomainError("the nasty shape needs at least three stars")
    interval = nasty_interval(backend)
    value = backend.num(mu)
    guard = backend.guard()
    if not interval.mu_star - guard <= value <= interval.mu_star_upper + guard:
        raise DomainError(f"mu = {backend.format(value, 12)} lies outside the nasty interval")
    run = classic_laplacian(mu, k, backend=backend, with_radii=False)
    return list(run.counts or ()) == [3] + [1] * (k - 2) + [2]


def nasty_inequalities(mu: Real, backend: Optional[NumericBackend] = None) -> NastyInequalities:
    """
    The quantities bounding the first back-node value of the nasty caterpillar.

    Outer chain: ``theta' - mu/(mu-1) < 1 - mu + 3mu/(mu-1) < theta'``.
    Inner chain: ``theta' - mu/(mu-1) < sigma < 1 - mu + 3mu/(mu-1) < 1/sigma < theta'``.
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    theta_prime = fixed_points(mu, backend).theta_prime
    leaf = mu / (mu - 1)
    points = sigma_points(mu, leaf, backend)
    lower_gap = theta_prime - leaf
    first = 1 - mu + 3 * leaf
    return NastyInequalities(
        mu=mu,
        lower_gap=lower_gap,
        sigma=points.sigma,
        first_value=first,
        sigma_inverse=points.sigma_prime,
        theta_inverse=theta_prime,
        outer_chain=bool(lower_gap < first < theta_prime),
        inner_chain=bool(lower_gap < points.sigma < first < points.sigma_prime < theta_prime),
    )


def sweep_nasty(
    samples: int, k: int, seed: int = 0, backend: Optional[NumericBackend] = None
) -> List[NastyCheck]:
    """
    verify_nasty at uniformly sampled targets strictly inside the nasty interval, in increasing
    order.
    """
    backend = backend or FloatBackend()
    interval = nasty_interval(backend)
    lo = float(interval.mu_star) + _SWEEP_MARGIN
    hi = float(interval.mu_star_upper) - _SWEEP_MARGIN
    targets = sorted(float(x) for x in stream(seed, 0).uniform(lo, hi, samples))
    return [NastyCheck(mu=mu, holds=verify_nasty(mu, k, backend)) for mu in targets]
