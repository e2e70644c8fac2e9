"""
Limit points of Laplacian spectral radii along generalized Shearer sequences.

A sequence is described by a ``SequenceSpec``: a star stream ``T_1, T_2, ...`` (a prefix followed
by a zero, constant or periodic tail) and closing stars ``C_k``, giving the trees
``G_k = [T_1, ..., T_{k-1}, C_k]``. Numeric limits come from the radii of ``G_k``; exact limits come
from writing the last prefix value ``S_m(mu)`` as a rational function and solving for the fixed
points of the tail map.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import sympy

from .diagonalize import back_node_values, drift
from .errors import DomainError, LimitInconsistency, NotShearerSequence, TreeSyntaxError
from .interfaces import NumericBackend
from .models import (
    EMPTY_STAR,
    AlgebraicLimit,
    ClosingKind,
    ClosingRule,
    DegenerateLimit,
    DominationReport,
    DriftProbeReport,
    LimitCandidate,
    LimitEstimate,
    Real,
    ReferenceConstants,
    SequenceSpec,
    Starlike,
    TailKind,
    TailSpec,
    ViolationReason,
)
from .spectral import fixed_points, isolate_real_roots, radius, refine_root
from .tree_model import parse_linear_tree, parse_star, replace_star
from .utils.backend import BigFloatBackend, FloatBackend

_MU = sympy.Symbol("mu")
_SYMBOLIC_MAX_STARS = 64
_ESTIMATE_EXTRA = 60  # stars past the prefix used for numeric checks
_CONSTANT_TAIL_EXTRA = 200
_MATCH_FACTOR = 10
_REFERENCE_EXTRA_BITS = 16

_RANDOM_STREAM = (
    "[[1],[1,2],[1],[0],[0],[1],[1],[0],[1],[2],[2],[2],[1],[1],[2],[2],[2],[1],[2],[1],[2],[1],"
    "[2],[2],[1],[2],[1],[2],[2],[2],[2],[2],[2],[2],[1],[1],[2],[1],[2],[2],[1],[2],[2],[2],[1],"
    "[2],[2],[2],[2],[2],[1],[2],[2],[2],[2],[2],[2],[1],[2],[2],[1],[1],[2],[2],[2],[2],[2],[2],"
    "[2],[1],[2],[2],[1],[2],[1],[1],[2],[2],[2],[1],[1],[1],[1],[1],[1],[2],[2],[1],[1],[2],[2],"
    "[1],[2],[2],[1],[2],[1],[2],[2],[2]]"
)
_GENETIC_STREAM = (
    "[[0],[1,1],[1],[7],[5],[6],[7],[7],[2],[3],[5],[6],[2],[5],[4],[4],[6],[6],[6],[0],[6],"
    "[1,1],[0],[6],[0],[3],[4],[4],[7],[1,1]]"
)
NAMED_SPECS: Dict[str, str] = {
    "nasty-caterpillar": "[[1,1,1]];tail=[1];close=[1,1]",
    "genetic-5.4": _GENETIC_STREAM,
    "random-5.4": _RANDOM_STREAM,
    "max-drift-5.4": "[[2,2,2],[0]];tail=[2]",
    "quipu": "[[0]];close=leaf-path",
}
FAMILY_ALIASES = {
    "one-k-k": "quipu",
    "lemma34": "nasty-caterpillar",
    "genetic-29": "genetic-5.4",
    "<genetic-29>": "genetic-5.4",
}


# Sequence literals
def parse_sequence_spec(text: str) -> SequenceSpec:
    """
    Parse ``<prefix>[;tail=...][;close=...]`` or one of the NAMED_SPECS.

    Tails: ``tail=<star>`` (``[0]`` is the zero tail) or ``tail=periodic:<linear tree>``.
    Closings: ``close=shift`` (default), ``close=<star>``, ``close=explicit:<linear tree>``
    (C_1, C_2, ... then shift) or ``close=leaf-path`` (C_k = [1, k-1]).

    Args:
        text: The literal or a spec name

    Returns:
        The SequenceSpec
    """
    name = text.strip()
    name = FAMILY_ALIASES.get(name, name)
    if name in NAMED_SPECS:
        text = NAMED_SPECS[name]
    parts = text.split(";")
    prefix = parse_linear_tree(parts[0]).stars
    tail, closing = TailSpec(), ClosingRule()
    offset = len(parts[0]) + 1
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        key = key.strip()
        start = offset + len(part) - len(value)
        if not sep:
            raise TreeSyntaxError(f"expected key=value, found {part!r}", offset)
        if key == "tail":
            tail = _parse_tail(value.strip(), start)
        elif key == "close":
            closing = _parse_closing(value.strip(), start)
        else:
            raise TreeSyntaxError(f"unknown annotation {key!r}", offset)
        offset += len(part) + 1
    return SequenceSpec(prefix=prefix, tail=tail, closing=closing)


def _parse_tail(value: str, offset: int) -> TailSpec:
    if value.startswith("periodic:"):
        stars = parse_linear_tree(value[len("periodic:") :], offset=offset + 9).stars
        return TailSpec(kind=TailKind.PERIODIC, stars=stars)
    star = parse_star(value, offset)
    if star == EMPTY_STAR:
        return TailSpec()
    return TailSpec(kind=TailKind.CONSTANT, stars=(star,))


def _parse_closing(value: str, offset: int) -> ClosingRule:
    if value == "shift":
        return ClosingRule()
    if value == "leaf-path":
        return ClosingRule(kind=ClosingKind.LEAF_PATH)
    if value.startswith("explicit:"):
        stars = parse_linear_tree(value[len("explicit:") :], offset=offset + 9).stars
        return ClosingRule(kind=ClosingKind.EXPLICIT, stars=stars)
    return ClosingRule(kind=ClosingKind.CONSTANT, stars=(parse_star(value, offset),))


def format_sequence_spec(spec: SequenceSpec) -> str:
    """Literal that parse_sequence_spec reads back into spec."""
    text = "[" + ",".join(str(star) for star in spec.prefix) + "]"
    if spec.tail.kind is TailKind.CONSTANT:
        text += f";tail={spec.tail.stars[0]}"
    elif spec.tail.kind is TailKind.PERIODIC:
        text += ";tail=periodic:[" + ",".join(str(star) for star in spec.tail.stars) + "]"
    kind = spec.closing.kind
    if kind is ClosingKind.CONSTANT:
        text += f";close={spec.closing.stars[0]}"
    elif kind is ClosingKind.EXPLICIT:
        text += ";close=explicit:[" + ",".join(str(star) for star in spec.closing.stars) + "]"
    elif kind is ClosingKind.LEAF_PATH:
        text += ";close=leaf-path"
    return text


# Rational functions in mu
def _poly(expr: Any) -> sympy.Poly:
    return sympy.Poly(expr, _MU, domain=sympy.QQ)


class RationalFunction:
    """``P(mu) / Q(mu)`` over the rationals, kept in lowest terms with a monic denominator."""

    def __init__(self, numerator: Any, denominator: Any = 1):
        p, q = _poly(numerator), _poly(denominator)
        if q.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        common = p.gcd(q)
        if not common.is_one:
            p, q = p.exquo(common), q.exquo(common)
        lead = q.LC()
        self.numerator: sympy.Poly = p.quo_ground(lead)
        self.denominator: sympy.Poly = q.quo_ground(lead)

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(_MU)

    @staticmethod
    def _lift(other: Union["RationalFunction", int, Fraction]) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Fraction):
            return RationalFunction(sympy.Rational(other.numerator, other.denominator))
        return RationalFunction(other)

    def __add__(self, other: Any) -> "RationalFunction":
        o = self._lift(other)
        return RationalFunction(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: Any) -> "RationalFunction":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "RationalFunction":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "RationalFunction":
        o = self._lift(other)
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFunction":
        if self.numerator.is_zero:
            raise ZeroDivisionError("reciprocal of the zero function")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other: Any) -> "RationalFunction":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other: Any) -> "RationalFunction":
        return self._lift(other) * self.reciprocal()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RationalFunction, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        return self.numerator == o.numerator and self.denominator == o.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def evaluate(self, value: Real, backend: Optional[NumericBackend] = None) -> Real:
        """Value at mu = value in backend arithmetic (Horner on both polynomials)."""
        backend = backend or FloatBackend()
        x = backend.num(value)
        return _horner(self.numerator, x, backend) / _horner(self.denominator, x, backend)

    def __repr__(self) -> str:
        return f"RationalFunction(({self.numerator.as_expr()}) / ({self.denominator.as_expr()}))"


def _horner(poly: sympy.Poly, x: Real, backend: NumericBackend) -> Real:
    total = backend.num(0)
    for c in poly.all_coeffs():
        total = total * x + backend.num(Fraction(int(c.p), int(c.q)))
    return total


def symbolic_drift(star: Starlike) -> RationalFunction:
    """Drift of star as a rational function of mu."""
    mu = RationalFunction.variable()
    total = RationalFunction(0)
    if not star.path_lengths:
        return total
    values = [1 - mu]
    while len(values) < star.height:
        values.append(2 - mu - values[-1].reciprocal())
    for q in star.path_lengths:
        total = total + 1 - values[q - 1].reciprocal()
    return total


def symbolic_trace(stars: Sequence[Starlike]) -> RationalFunction:
    """
    Interior value S_m after the given stars (no end correction), as a rational function of mu.
    """
    if len(stars) > _SYMBOLIC_MAX_STARS:
        raise DomainError(
            f"exact traces are limited to {_SYMBOLIC_MAX_STARS} stars; use numeric limits instead"
        )
    mu = RationalFunction.variable()
    drifts: Dict[Starlike, RationalFunction] = {}
    value: Optional[RationalFunction] = None
    for star in stars:
        if star not in drifts:
            drifts[star] = symbolic_drift(star)
        if value is None:
            value = 1 - mu + drifts[star]
        else:
            value = 2 - mu - value.reciprocal() + drifts[star]
    if value is None:
        raise DomainError("an exact trace needs at least one star")
    return value


def _normalize(poly: sympy.Poly) -> sympy.Poly:
    """Primitive integer polynomial with positive leading coefficient and no factor mu^v."""
    if poly.is_zero:
        return poly
    _, integral = poly.clear_denoms(convert=True)
    _, primitive = integral.primitive()
    if primitive.LC() < 0:
        primitive = -primitive
    coeffs = primitive.all_coeffs()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return sympy.Poly(coeffs, _MU, domain=sympy.ZZ)


# Numeric limits
def estimate_limit(
    spec: SequenceSpec,
    k_max: int,
    tol: Optional[Real] = None,
    backend: Optional[NumericBackend] = None,
) -> LimitEstimate:
    """
    Radii of G_1, ..., G_{k_max}; the last one estimates the limit.

    Args:
        spec: The sequence
        k_max: Largest tree length
        tol: Radius tolerance; the backend default when omitted
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The radii, the estimate and the last gap rho(G_kmax) - rho(G_kmax - 1)

    Raises:
        NotShearerSequence: when some radius falls below its predecessor
    """
    backend = backend or FloatBackend()
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    tol = backend.tolerance() if tol is None else backend.num(tol)
    radii: List[Real] = []
    for k in range(1, k_max + 1):
        value = radius(spec.tree(k), tol=tol, backend=backend).value
        if radii and value < radii[-1] - 2 * tol:
            raise NotShearerSequence(k, radii[-1], value)
        radii.append(value)
    gap = radii[-1] - radii[-2] if len(radii) > 1 else None
    return LimitEstimate(gamma=radii[-1], radii=tuple(radii), gap=gap, k_max=k_max)


def truncate(spec: SequenceSpec, k0: int) -> SequenceSpec:
    """
    Keep T_1, ..., T_k0 and continue with empty stars; closing stars shift along the stream.
    """
    if k0 < 1:
        raise DomainError("truncation keeps at least one star")
    prefix = tuple(spec.star(j) for j in range(1, k0 + 1))
    return SequenceSpec(prefix=prefix)


def _match_window(estimate: LimitEstimate, tol: Real) -> Real:
    gap = abs(estimate.gap) if estimate.gap is not None else 0
    return max(_MATCH_FACTOR * tol, _MATCH_FACTOR * gap)


def _refined_root(
    poly: sympy.Poly, interval: Tuple[Fraction, Fraction], backend: NumericBackend
) -> Tuple[Real, Tuple[Fraction, Fraction]]:
    bits = max(backend.precision, 53) + 8
    lo, hi = refine_root(poly, interval, Fraction(1, 2**bits))
    return backend.num((lo + hi) / 2), (lo, hi)


def _roots_above_four(poly: sympy.Poly) -> List[Tuple[Fraction, Fraction]]:
    if poly.degree() < 1:
        return []
    return [interval for interval in isolate_real_roots(poly) if interval[1] > 4]


def _select(
    candidates: List[LimitCandidate], estimate: LimitEstimate, tol: Real
) -> LimitCandidate:
    admissible = [c for c in candidates if c.admissible]
    window = _match_window(estimate, tol)
    if admissible:
        best = min(admissible, key=lambda c: abs(c.root - estimate.gamma))
        if abs(best.root - estimate.gamma) <= window:
            return best
    raise LimitInconsistency(
        "no exact root agrees with the numeric limit estimate", estimate.gamma, candidates
    )


def algebraic_limit(
    spec: SequenceSpec,
    k_max: Optional[int] = None,
    tol: Optional[Real] = None,
    backend: Optional[NumericBackend] = None,
) -> Union[AlgebraicLimit, DegenerateLimit]:
    """
    Exact limit of a sequence whose stream ends in empty stars.

    The limit mu_0 makes the last prefix value a fixed point of psi:
    ``P^2 - (2 - mu) P Q + Q^2 = 0`` with ``S_m = P/Q``. Every real root above 4 becomes a
    candidate labelled with the fixed point it hits; the one matching the numeric estimate wins.

    Args:
        spec: Zero-tail sequence with shifted (or explicit, then shifted) closing stars
        k_max: Length used for the numeric check; prefix length + 60 when omitted
        tol: Radius tolerance of the numeric check
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The AlgebraicLimit, or a DegenerateLimit on the pure-path boundary

    Raises:
        LimitInconsistency: when no root matches the estimate
    """
    backend = backend or FloatBackend()
    if spec.tail.kind is not TailKind.ZERO:
        raise DomainError("algebraic_limit needs a zero tail; see constant_tail_limit")
    if spec.closing.kind not in (ClosingKind.SHIFT, ClosingKind.EXPLICIT):
        raise DomainError("algebraic_limit needs closing stars that shift along the stream")
    m = len(spec.prefix)
    if spec.closing.kind is ClosingKind.EXPLICIT:
        m = max(m, len(spec.closing.stars))
    tol = backend.tolerance() if tol is None else backend.num(tol)
    estimate = estimate_limit(spec, k_max or m + _ESTIMATE_EXTRA, tol, backend)

    trace = symbolic_trace(spec.prefix)
    p, q = trace.numerator, trace.denominator
    witness = p * p - _poly(2 - _MU) * p * q + q * q
    defining = _normalize(witness)
    candidates = []
    for interval in _roots_above_four(defining):
        root, interval = _refined_root(defining, interval, backend)
        if root <= 4:
            continue
        points = fixed_points(root, backend)
        value = trace.evaluate(root, backend)
        repelling = abs(value - points.theta_prime) <= abs(value - points.theta)
        candidates.append(
            LimitCandidate(
                root=root,
                interval=interval,
                branch="S = theta'" if repelling else "S = theta",
                polynomial=defining,
                admissible=True,
            )
        )
    if not candidates and estimate.gamma <= 4:
        return DegenerateLimit(
            value=backend.num(4),
            reason="both fixed points merge at mu = 4; pure paths approach it from below",
            numeric_check=estimate,
        )
    chosen = _select(candidates, estimate, tol)
    candidates = [c.model_copy(update={"matches": c is chosen}) for c in candidates]
    return AlgebraicLimit(
        defining_polynomial=defining,
        witness=witness,
        candidates=tuple(candidates),
        selected_root=chosen.root,
        interval=chosen.interval,
        branch=chosen.branch,
        numeric_check=estimate,
        tolerance=tol,
    )


def constant_tail_limit(
    prefix: Sequence[Starlike],
    tail_star: Starlike,
    closing_star: Starlike,
    mu_window: Optional[Tuple[Real, Real]] = None,
    k_max: Optional[int] = None,
    tol: Optional[Real] = None,
    backend: Optional[NumericBackend] = None,
) -> AlgebraicLimit:
    """
    Exact limit of ``[prefix, tail_star, ..., tail_star, closing_star]``.

    After the prefix the values follow ``t -> c - 1/t`` with ``c = 2 - mu + d`` and d the tail
    drift; its fixed points sigma < sigma' solve ``t^2 - c t + 1 = 0``. The radii converge to the
    first mu where either the prefix lands on the repelling point (``S_m = sigma'``) or the
    closing value at the attracting point vanishes (``sigma = -e`` with
    ``e = delta(C) - d - 1``). Both equations are solved exactly; roots that only satisfy the
    squared form are marked inadmissible.

    Args:
        prefix: T_1, ..., T_m
        tail_star: The repeated star
        closing_star: The last star of every tree
        mu_window: Open interval roots must lie in; (4, inf) when omitted
        k_max: Length used for the numeric check; prefix length + 200 when omitted
        tol: Radius tolerance of the numeric check
        backend: Arithmetic to use; f64 when omitted

    Returns:
        The AlgebraicLimit; ``witness`` is the product of both equations
    """
    backend = backend or FloatBackend()
    tol = backend.tolerance() if tol is None else backend.num(tol)
    low, high = mu_window or (4, None)
    low = max(backend.num(low), backend.num(4))
    high = None if high is None else backend.num(high)

    trace = symbolic_trace(prefix)
    d = symbolic_drift(tail_star)
    c = 2 - RationalFunction.variable() + d
    e = symbolic_drift(closing_star) - d - 1
    orbit = _normalize((trace * trace - c * trace + 1).numerator)
    closing = _normalize((e * e + c * e + 1).numerator)

    candidates: List[LimitCandidate] = []
    for poly, branch in ((orbit, "S = sigma'"), (closing, "sigma = -e")):
        for interval in _roots_above_four(poly):
            root, interval = _refined_root(poly, interval, backend)
            if root <= low or (high is not None and root >= high):
                continue
            c_value = c.evaluate(root, backend)
            if c_value * c_value - 4 <= 0:
                continue
            spread = backend.sqrt(c_value * c_value - 4)
            sigma, sigma_prime = (c_value - spread) / 2, (c_value + spread) / 2
            s_value = trace.evaluate(root, backend)
            if branch == "S = sigma'":
                admissible = abs(s_value - sigma_prime) < abs(s_value - sigma)
            else:
                target = -e.evaluate(root, backend)
                nearer = abs(target - sigma) < abs(target - sigma_prime)
                admissible = nearer and s_value < sigma_prime
            candidates.append(
                LimitCandidate(
                    root=root,
                    interval=interval,
                    branch=branch,
                    polynomial=poly,
                    admissible=bool(admissible),
                )
            )
    tail = TailSpec()
    if tail_star != EMPTY_STAR:
        tail = TailSpec(kind=TailKind.CONSTANT, stars=(tail_star,))
    spec = SequenceSpec(
        prefix=tuple(prefix),
        tail=tail,
        closing=ClosingRule(kind=ClosingKind.CONSTANT, stars=(closing_star,)),
    )
    estimate = estimate_limit(spec, k_max or len(prefix) + _CONSTANT_TAIL_EXTRA, tol, backend)
    chosen = _select(candidates, estimate, tol)
    candidates = [c.model_copy(update={"matches": c is chosen}) for c in candidates]
    return AlgebraicLimit(
        defining_polynomial=chosen.polynomial,
        witness=orbit * closing,
        candidates=tuple(candidates),
        selected_root=chosen.root,
        interval=chosen.interval,
        branch=chosen.branch,
        numeric_check=estimate,
        tolerance=tol,
    )


# Domination and drift probes
def dominated_check(
    spec: SequenceSpec, mu: Real, k: int, backend: Optional[NumericBackend] = None
) -> DominationReport:
    """
    Evidence at horizon k that the sequence stays below mu.

    Checks, star by star: widths leave room below mu, drifts stay below mu, every interior value
    stays below the repelling fixed point, and the closing value of G_k is negative.
    """
    backend = backend or FloatBackend()
    mu = backend.num(mu)
    if k < 1:
        raise DomainError("horizon must be at least 1")
    theta_prime = fixed_points(mu, backend).theta_prime

    def report(index: Optional[int] = None, reason: Optional[ViolationReason] = None) -> Any:
        return DominationReport(
            mu=mu, k=k, passes=index is None, first_violation=index, reason=reason
        )

    stars = [spec.star(j) for j in range(1, k)] + [spec.closing_star(k)]
    for j, star in enumerate(stars, start=1):
        interior = 1 < j < k
        room = star.width + (3 if interior else 2 if k > 1 else 1)
        if star.path_lengths and room >= mu:
            return report(j, ViolationReason.DEGREE)
        if star.path_lengths and drift(star, mu, backend) >= mu:
            return report(j, ViolationReason.DRIFT)
    values = back_node_values(stars[:-1], mu, backend, closing=False) if k > 1 else []
    for j, value in enumerate(values, start=1):
        if value >= theta_prime:
            return report(j, ViolationReason.TRACE)
    closing_value = back_node_values(stars, mu, backend)[-1]
    if closing_value >= 0:
        return report(k, ViolationReason.CLOSING)
    return report()


def drift_monotonicity_probe(
    spec: SequenceSpec,
    j0: int,
    replacement_star: Starlike,
    mu: Optional[Real] = None,
    k: Optional[int] = None,
    backend: Optional[NumericBackend] = None,
) -> DriftProbeReport:
    """
    Replace T_j0 in G_k and compare radii against the drift change.

    Drifts are compared at mu, or at rho(G_k) when mu is omitted; a strictly larger drift must not
    lower the radius.
    """
    backend = backend or FloatBackend()
    k = k or len(spec.prefix)
    if not 1 <= j0 <= k:
        raise DomainError(f"j0 must lie in 1..{k}")
    g = spec.tree(k)
    original = g.stars[j0 - 1]
    before = radius(g, backend=backend).value
    after = radius(replace_star(g, j0, replacement_star), backend=backend).value
    at = before if mu is None else backend.num(mu)
    old_drift = drift(original, at, backend)
    new_drift = drift(replacement_star, at, backend)
    tol = backend.tolerance()
    consistent = not (new_drift > old_drift and after < before - tol)
    return DriftProbeReport(
        j0=j0,
        original=original,
        replacement=replacement_star,
        evaluated_at=at,
        drift=old_drift,
        replaced_drift=new_drift,
        radius=before,
        replaced_radius=after,
        consistent=consistent,
    )


# Reference constants
def _bracketed_root(ctx: Any, f: Any, bracket: Tuple[float, float]) -> Any:
    return ctx.findroot(f, bracket, solver="anderson")


def guo_limit(backend: Optional[NumericBackend] = None) -> Real:
    """``2 + omega + 1/omega`` with omega the real root of ``x^3 - x^2 - x - 1``."""
    backend = backend or FloatBackend()
    root = backend.sqrt(backend.num(33))
    omega = (backend.cbrt(19 + 3 * root) + backend.cbrt(19 - 3 * root) + 1) / 3
    return 2 + omega + 1 / omega


def reference_constants(n_max: int, backend: Optional[NumericBackend] = None) -> ReferenceConstants:
    """
    Known limit points below the Shearer and Guo thresholds.

    Guo: alpha_n = 2 + y + 1/y with y^2 the largest positive root of
    ``x^{n+1} - (1 + x + ... + x^{n-1})(sqrt(x) + 1)^2`` and alpha_0 = 4.
    Hoffman: alpha_bar_n = y + 1/y with y^2 the positive root of ``x^{n+1} - (1 + ... + x^{n-1})``.

    Args:
        n_max: Largest index computed
        backend: Arithmetic to use; f64 when omitted. Backends too coarse to separate alpha_n from
            alpha_{n+1} up to n_max are replaced by big floats of ``2 * n_max + 16`` bits.

    Returns:
        The constants
    """
    backend = backend or FloatBackend()
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    # successive alpha_n differ by roughly 2^(-1.8 n)
    needed = 2 * n_max + _REFERENCE_EXTRA_BITS
    if backend.precision < needed:
        backend = BigFloatBackend(max(needed, 53))
    ctx = mpmath.MPContext()
    ctx.prec = max(backend.precision, 53) + 2 * n_max + 64

    def scaled_sum(y: Any, n: int) -> Any:
        # (1 + y^2 + ... + y^(2n-2)) / y^(2n+2), bounded near the root
        return ctx.fsum(y ** (2 * i - 2 * n - 2) for i in range(n))

    guo = [backend.num(4)]
    hoffman = [backend.num(2)]
    for n in range(1, n_max + 1):
        y = _bracketed_root(ctx, lambda t: 1 - scaled_sum(t, n) * (t + 1) ** 2, (1.5, 2))
        guo.append(backend.num(2 + y + 1 / y))
        if n > 1:
            y = _bracketed_root(ctx, lambda t: 1 - scaled_sum(t, n), (1, 2))
            hoffman.append(backend.num(y + 1 / y))
    tau = (1 + backend.sqrt(backend.num(5))) / 2
    omega_sum = guo_limit(backend) - 2
    omega = (omega_sum + backend.sqrt(omega_sum * omega_sum - 4)) / 2
    return ReferenceConstants(
        guo_omega=omega,
        guo_limit=guo_limit(backend),
        guo_alpha=tuple(guo),
        hoffman_tau=tau,
        hoffman_limit=backend.sqrt(tau) + 1 / backend.sqrt(tau),
        hoffman_alpha_bar=tuple(hoffman),
    )
