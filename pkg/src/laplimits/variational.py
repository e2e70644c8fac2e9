"""
Certificates that the radii of a dominated sequence converge to a target mu.

Lowering the target to ``mu - eps`` moves every back-node value up. Writing ``g_j(eps)`` for the
interior value S_j at ``mu - eps``, its derivative at zero obeys

    X_1 = A_1,   X_j = A_j + B_{j-1} X_{j-1},   A_j = 1 + delta'(T_j),   B_j = 1 / S_j^2

and the tangent-line root ``alpha_j = -S_j / X_j`` bounds the true root eps_j of g_j from above.
Radii reach mu when alpha_j tends to zero.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagonalize import back_node_values, path_values
from .errors import DomainError, NotDominated, PrecisionExhausted
from .interfaces import NumericBackend
from .limits import dominated_check
from .models import (
    Certificate,
    DriftDerivative,
    EpsilonSequence,
    GrowthKind,
    PathDerivatives,
    Real,
    SequenceSpec,
    Starlike,
    Verdict,
    VerdictKind,
    XGrowth,
)
from .spectral import fixed_points
from .utils.backend import BigFloatBackend, big
from .utils.expressions import as_source, coerce_real

_START_PRECISION = 256
_PRECISION_CAP = 8192
_FLOAT_PATH_LIMIT = 64  # longer paths need the big-float backend
_BISECTION_STEPS = 200
_EVIDENCE_THRESHOLD = 1e-12
_STALL_RATIO = 0.99  # contraction of successive alpha steps above this counts as a plateau
_GROWTH_THRESHOLD = 1e12
_GROWTH_WINDOW = 10


def path_derivatives(
    q: int, mu: Real, backend: Optional[NumericBackend] = None
) -> PathDerivatives:
    """
    First and second derivatives of the path values b_1..b_q with respect to eps at eps = 0.

    ``b'_1 = 1``, ``b'_j = 1 + b'_{j-1} / b_{j-1}^2``; ``b''_1 = 0``,
    ``b''_j = b''_{j-1} / b_{j-1}^2 - 2 (b'_{j-1})^2 / b_{j-1}^3``.

    Args:
        q: Path length
        mu: Target, above 4
        backend: Arithmetic; 256-bit big floats when omitted

    Returns:
        The three streams

    Raises:
        PrecisionExhausted: when rounding pushes b'_j outside ``[1, 1/(1 - theta'^2)]``
    """
    backend = backend or big(_START_PRECISION)
    if q > _FLOAT_PATH_LIMIT and not isinstance(backend, BigFloatBackend):
        raise DomainError(f"paths longer than {_FLOAT_PATH_LIMIT} need the big-float backend")
    mu = coerce_real(mu, backend)
    values = path_values(q, mu, backend)
    first: List[Real] = [backend.num(1)]
    second: List[Real] = [backend.num(0)]
    for b in values[:-1]:
        first.append(1 + first[-1] / (b * b))
        second.append(second[-1] / (b * b) - 2 * first[-2] ** 2 / b**3)
    theta_prime = fixed_points(mu, backend).theta_prime
    ceiling = 1 / (1 - theta_prime * theta_prime)
    slack = 1 + backend.guard()
    result = PathDerivatives(
        mu=mu, values=values, first=tuple(first), second=tuple(second)
    )
    if any(d < 1 or d > ceiling * slack for d in first):
        raise PrecisionExhausted("path derivative left its bounds; raise the precision", result)
    return result


def drift_derivative(
    t: Starlike, mu: Real, backend: Optional[NumericBackend] = None
) -> DriftDerivative:
    """``delta'(T) = sum over paths of b'_q / b_q^2``; zero for the empty star."""
    backend = backend or big(_START_PRECISION)
    if not t.path_lengths:
        zero = backend.num(0)
        return DriftDerivative(value=zero, contributions=())
    streams = path_derivatives(t.height, mu, backend)
    contributions = tuple(
        streams.first[q - 1] / streams.values[q - 1] ** 2 for q in t.path_lengths
    )
    total = backend.num(0)
    for part in contributions:
        total += part
    return DriftDerivative(value=total, contributions=contributions)


class _Tangents:
    """Interior values and their eps-derivatives for T_1..T_k at one precision."""

    def __init__(self, spec: SequenceSpec, mu: Real, k: int, backend: NumericBackend):
        self.backend = backend
        self.mu = mu
        self.stars = [spec.star(j) for j in range(1, k + 1)]
        self.closing_star = spec.closing_star(k)
        self._slopes: Dict[Starlike, Real] = {}
        self.s_values = back_node_values(self.stars, mu, backend, closing=False)
        self.a_values = [self.slope(star) for star in self.stars]
        self.b_values = [1 / (s * s) for s in self.s_values]
        self.x_values: List[Real] = []
        for j, a in enumerate(self.a_values):
            previous = self.b_values[j - 1] * self.x_values[-1] if j else 0
            self.x_values.append(a + previous)
        self.alpha = [-s / x for s, x in zip(self.s_values, self.x_values)]

    def slope(self, star: Starlike) -> Real:
        if star not in self._slopes:
            self._slopes[star] = 1 + drift_derivative(star, self.mu, self.backend).value
        return self._slopes[star]

    def closing(self) -> Tuple[Real, Real]:
        """End-corrected S_k of G_k and its tangent root."""
        stars = self.stars[:-1] + [self.closing_star]
        value = back_node_values(stars, self.mu, self.backend)[-1]
        x = self.slope(self.closing_star)
        if len(stars) > 1:
            x += self.b_values[-2] * self.x_values[-2]
        return value, -value / x


def _require_dominated(spec: SequenceSpec, mu: Real, k: int, backend: NumericBackend) -> None:
    report = dominated_check(spec, mu, k, backend)
    if not report.passes:
        assert report.first_violation is not None and report.reason is not None
        raise NotDominated(report.first_violation, report.reason.value)


def _plateau(alpha: Sequence[Real], stall_ratio: Real) -> Optional[Real]:
    """Limit of alpha when its last two steps contract geometrically; None otherwise."""
    if len(alpha) < 3:
        return None
    step, previous = alpha[-1] - alpha[-2], alpha[-2] - alpha[-3]
    if not step or not previous:
        return None
    ratio = step / previous
    if not 0 < ratio <= stall_ratio:
        return None
    return alpha[-1] + step * ratio / (1 - ratio)


def _verdict(
    alpha: Sequence[Real], evidence_threshold: Real, stall_ratio: Real
) -> Verdict:
    last = alpha[-1]
    plateau = _plateau(alpha, stall_ratio)
    # a decay counts only when it extrapolates to (nearly) zero
    if last < evidence_threshold or (plateau is not None and plateau <= (1 - stall_ratio) * last):
        return Verdict(kind=VerdictKind.CONVERGES_TO_MU, evidence=last)
    gap = last if plateau is None else plateau
    return Verdict(kind=VerdictKind.STALLED_BELOW, evidence=last, gap=gap)


def alpha_certificate(
    spec: SequenceSpec,
    mu: Real,
    k: int,
    precision: int = _START_PRECISION,
    cap: int = _PRECISION_CAP,
    epsilon_indices: Optional[Iterable[int]] = None,
    evidence_threshold: Real = _EVIDENCE_THRESHOLD,
    stall_ratio: Real = _STALL_RATIO,
) -> Certificate:
    """
    Tangent roots alpha_1..alpha_k of a dominated sequence at mu.

    Precision starts at ``precision`` bits and doubles while some ``|alpha_j|`` falls below
    ``2^(-precision/4)``; mu is re-evaluated from its source (a number or an expression string)
    at every precision.

    Args:
        spec: The sequence
        mu: Target; expression strings such as ``"(5+sqrt(33))/2"`` keep full precision
        k: Horizon
        precision: Starting mantissa bits
        cap: Largest precision tried
        epsilon_indices: Also solve eps_j for these indices
        evidence_threshold: alpha_k below this counts as convergence evidence
        stall_ratio: Largest contraction of successive alpha steps read as geometric decay

    Returns:
        The certificate

    Raises:
        NotDominated: when the sequence is not dominated by mu at horizon k
        PrecisionExhausted: when alpha values still underflow at the cap; ``partial`` carries the
            certificate computed at the cap
    """
    if k < 1:
        raise DomainError("horizon must be at least 1")
    source = as_source(mu)
    bits = min(precision, cap)
    while True:
        backend = BigFloatBackend(bits, cap)
        value = coerce_real(source, backend)
        _require_dominated(spec, value, k, backend)
        tangents = _Tangents(spec, value, k, backend)
        floor = backend.ctx.ldexp(1, -(bits // 4))
        underflow = any(abs(a) < floor for a in tangents.alpha)
        if not underflow or bits >= cap:
            break
        bits = min(2 * bits, cap)
    closing_value, closing_alpha = tangents.closing()
    epsilon = None
    if epsilon_indices is not None:
        solved = _solve_epsilons(spec, value, epsilon_indices, tangents, backend)
        epsilon = {j: e for j, e in solved.items() if e is not None}
    certificate = Certificate(
        mu=value,
        k=k,
        precision=bits,
        s_values=tuple(tangents.s_values),
        alpha=tuple(tangents.alpha),
        beta=tuple(tangents.a_values),
        b_values=tuple(tangents.b_values),
        x_values=tuple(tangents.x_values),
        closing_value=closing_value,
        closing_alpha=closing_alpha,
        epsilon=epsilon,
        verdict=_verdict(tangents.alpha, evidence_threshold, stall_ratio),
    )
    if underflow:
        raise PrecisionExhausted(
            f"alpha values still underflow at {bits} bits", partial=certificate
        )
    return certificate


def _interior_value(stars: Sequence[Starlike], mu: Real, backend: NumericBackend) -> Real:
    return back_node_values(stars, mu, backend, closing=False)[-1]


def _solve_epsilons(
    spec: SequenceSpec,
    mu: Real,
    indices: Iterable[int],
    tangents: _Tangents,
    backend: NumericBackend,
) -> Dict[int, Optional[Real]]:
    roots: Dict[int, Optional[Real]] = {}
    room = (mu - 4) * (1 - backend.guard())
    for j in sorted(set(indices)):
        if not 1 <= j <= len(tangents.stars):
            raise DomainError(f"index {j} lies outside 1..{len(tangents.stars)}")
        stars = tangents.stars[:j]
        if tangents.s_values[j - 1] >= 0:
            raise NotDominated(j, "S_j is not negative at eps = 0")
        hi = min(room, tangents.alpha[j - 1])
        if _interior_value(stars, mu - hi, backend) < 0:
            hi = room
            if _interior_value(stars, mu - hi, backend) < 0:
                roots[j] = None
                continue
        lo = backend.num(0)
        for _ in range(_BISECTION_STEPS):
            mid = (lo + hi) / 2
            if mid <= lo or mid >= hi:
                break
            if _interior_value(stars, mu - mid, backend) < 0:
                lo = mid
            else:
                hi = mid
        roots[j] = (lo + hi) / 2
    return roots


def epsilon_sequence(
    spec: SequenceSpec,
    mu: Real,
    k: int,
    indices: Iterable[int],
    backend: Optional[NumericBackend] = None,
) -> EpsilonSequence:
    """
    Roots eps_j of ``g_j(eps) = 0`` on ``(0, mu - 4)``, by bisection.

    g_j recomputes the whole drifted recurrence at ``mu - eps`` for every probe.

    Args:
        spec: The sequence
        mu: Target
        k: Horizon for the domination check
        indices: The j to solve, each in 1..k
        backend: Arithmetic; 256-bit big floats when omitted

    Returns:
        The roots (None where no sign change was found) and whether they sit below alpha_j and
        decrease in j
    """
    backend = backend or big(_START_PRECISION)
    value = coerce_real(mu, backend)
    _require_dominated(spec, value, k, backend)
    tangents = _Tangents(spec, value, k, backend)
    roots = _solve_epsilons(spec, value, indices, tangents, backend)
    found = [(j, e) for j, e in sorted(roots.items()) if e is not None]
    below = all(e < tangents.alpha[j - 1] for j, e in found) and len(found) == len(roots)
    decreasing = all(b[1] < a[1] for a, b in zip(found, found[1:]))
    return EpsilonSequence(values=roots, below_alpha=below, decreasing=decreasing)


def x_growth(
    spec: SequenceSpec,
    mu: Real,
    k: int,
    threshold: Real = _GROWTH_THRESHOLD,
    window: int = _GROWTH_WINDOW,
    backend: Optional[NumericBackend] = None,
) -> XGrowth:
    """
    The derivative stream X_1..X_k, checked against the closed sum
    ``X_j = sum over m <= j of A_m B_m ... B_{j-1}`` and classified.

    Unbounded X cannot be decided from finitely many terms: X_k above threshold after ``window``
    increasing steps is reported as divergence evidence, anything else as bounded.
    """
    backend = backend or big(_START_PRECISION)
    value = coerce_real(mu, backend)
    _require_dominated(spec, value, k, backend)
    tangents = _Tangents(spec, value, k, backend)
    xs, a_values, b_values = tangents.x_values, tangents.a_values, tangents.b_values
    error = backend.num(0)
    for j in range(1, k + 1):
        total, product = backend.num(0), backend.num(1)
        for m in range(j, 0, -1):
            total += a_values[m - 1] * product
            product *= b_values[m - 2] if m > 1 else 1
        error = max(error, abs(total - xs[j - 1]) / abs(xs[j - 1]))
    tail = xs[-(window + 1) :]
    rising = len(tail) == window + 1 and all(b > a for a, b in zip(tail, tail[1:]))
    kind = GrowthKind.DIVERGENCE_EVIDENCE if xs[-1] > threshold and rising else GrowthKind.BOUNDED
    return XGrowth(x_values=tuple(xs), closed_form_error=error, kind=kind, sup=max(xs))
