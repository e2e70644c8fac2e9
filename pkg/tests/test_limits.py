"""Tests for sequence literals, exact and numeric limits, domination and reference constants."""

import math
import unittest

from laplimits import (
    DomainError,
    NotShearerSequence,
    Starlike,
    TreeSyntaxError,
    algebraic_limit,
    constant_tail_limit,
    dominated_check,
    drift_monotonicity_probe,
    estimate_limit,
    parse_sequence_spec,
    reference_constants,
    truncate,
)
from laplimits.limits import (
    NAMED_SPECS,
    RationalFunction,
    format_sequence_spec,
    guo_limit,
    symbolic_drift,
    symbolic_trace,
)
from laplimits.models import ClosingKind, DegenerateLimit, TailKind, ViolationReason
from laplimits.shearer import adjacency_threshold

MU_STAR = (5 + math.sqrt(33)) / 2


class TestSequenceSpec(unittest.TestCase):
    def test_parse_annotations(self):
        spec = parse_sequence_spec("[[1,1,1]];tail=[1];close=[1,1]")
        self.assertEqual(spec.prefix, (Starlike.of(1, 1, 1),))
        self.assertIs(spec.tail.kind, TailKind.CONSTANT)
        self.assertIs(spec.closing.kind, ClosingKind.CONSTANT)
        self.assertEqual(str(spec.tree(4)), "[[1,1,1],[1],[1],[1,1]]")

    def test_named_specs(self):
        self.assertEqual(
            parse_sequence_spec("nasty-caterpillar"),
            parse_sequence_spec(NAMED_SPECS["nasty-caterpillar"]),
        )
        self.assertEqual(len(parse_sequence_spec("random-5.4").prefix), 100)
        self.assertEqual(len(parse_sequence_spec("genetic-5.4").prefix), 30)

    def test_one_k_k_alias(self):
        spec = parse_sequence_spec("one-k-k")
        self.assertEqual(spec, parse_sequence_spec("quipu"))
        self.assertEqual(spec.closing_star(1), Starlike.of(1))
        self.assertEqual(spec.closing_star(3), Starlike.of(1, 2))
        self.assertEqual(str(spec.tree(3)), "[[0],[0],[1,2]]")

    def test_certificate_aliases(self):
        nasty = parse_sequence_spec("nasty-caterpillar")
        self.assertEqual(parse_sequence_spec("lemma34"), nasty)
        genetic = parse_sequence_spec("genetic-5.4")
        for alias in ("genetic-29", "<genetic-29>"):
            with self.subTest(alias=alias):
                self.assertEqual(parse_sequence_spec(alias), genetic)

    def test_zero_tail_and_periodic_tail(self):
        self.assertIs(parse_sequence_spec("[[1]];tail=[0]").tail.kind, TailKind.ZERO)
        spec = parse_sequence_spec("[[1]];tail=periodic:[[1],[2]]")
        self.assertEqual(
            [str(spec.star(j)) for j in range(1, 6)], ["[1]", "[1]", "[2]", "[1]", "[2]"]
        )

    def test_explicit_closing_then_shift(self):
        spec = parse_sequence_spec("[[1],[1]];close=explicit:[[2,2]]")
        self.assertEqual(spec.closing_star(1), Starlike.of(2, 2))
        self.assertEqual(spec.closing_star(2), Starlike.of(1))
        self.assertEqual(spec.closing_star(3), Starlike())

    def test_format(self):
        for text in (
            NAMED_SPECS["nasty-caterpillar"],
            "[[1]];tail=periodic:[[1],[2]];close=leaf-path",
            "[[0]];close=explicit:[[1,1]]",
            "[[2],[1,1]]",
        ):
            with self.subTest(text=text):
                self.assertEqual(format_sequence_spec(parse_sequence_spec(text)), text)

    def test_rejects(self):
        with self.assertRaises(TreeSyntaxError):
            parse_sequence_spec("[[1]];tail")
        with self.assertRaises(TreeSyntaxError):
            parse_sequence_spec("[[1]];grow=[1]")
        with self.assertRaises(TreeSyntaxError) as ctx:
            parse_sequence_spec("[[1]];tail=[1,0]")
        self.assertGreater(ctx.exception.position, 5)


class TestRationalFunction(unittest.TestCase):
    def test_lowest_terms(self):
        mu = RationalFunction.variable()
        self.assertEqual((mu * mu - 1) / (mu - 1), mu + 1)
        self.assertEqual(2 * mu / (4 * mu), RationalFunction(1, 2))
        with self.assertRaises(ZeroDivisionError):
            RationalFunction(0).reciprocal()

    def test_symbolic_trace_matches_closed_form(self):
        trace = symbolic_trace([Starlike.of(1, 1, 1)])
        self.assertAlmostEqual(trace.evaluate(5.4), 1 - 5.4 + 3 * 5.4 / 4.4, places=13)
        b2 = 2 - 5.4 + 1 / 4.4
        self.assertAlmostEqual(symbolic_drift(Starlike.of(2)).evaluate(5.4), 1 - 1 / b2, places=12)

    def test_symbolic_trace_limits(self):
        with self.assertRaises(DomainError):
            symbolic_trace([])
        with self.assertRaises(DomainError):
            symbolic_trace([Starlike.of(1)] * 65)


class TestEstimateLimit(unittest.TestCase):
    def test_random_stream(self):
        estimate = estimate_limit(parse_sequence_spec("random-5.4"), 100)
        self.assertAlmostEqual(estimate.radii[4], 5.397488989, places=8)
        self.assertAlmostEqual(estimate.gamma, 5.399995047, places=8)
        self.assertLess(estimate.gamma, 5.4)
        self.assertEqual(estimate.k_max, 100)
        self.assertGreaterEqual(estimate.gap, 0)

    def test_genetic_stream_radius(self):
        estimate = estimate_limit(parse_sequence_spec("genetic-5.4"), 30)
        self.assertAlmostEqual(estimate.gamma, 5.399999999963, places=10)

    def test_not_shearer(self):
        spec = parse_sequence_spec("[[0]];close=explicit:[[1,1,1,1,1]]")
        with self.assertRaises(NotShearerSequence) as ctx:
            estimate_limit(spec, 3)
        self.assertEqual(ctx.exception.index, 2)
        self.assertIsInstance(ctx.exception, DomainError)

    def test_radius_drop_after_growth(self):
        spec = parse_sequence_spec("[[1,1],[1,1]];close=explicit:[[1,1],[1,1,1,1]]")
        with self.assertRaises(NotShearerSequence) as ctx:
            estimate_limit(spec, 3)
        self.assertEqual(ctx.exception.index, 3)
        self.assertAlmostEqual(float(ctx.exception.previous), 6.141336116, places=8)
        self.assertAlmostEqual(float(ctx.exception.current), 5.261802245, places=8)

    def test_quipu_approaches_its_cubic_limit(self):
        root = 2.5
        for _ in range(50):
            root -= (root**3 - 4 * root - 4) / (3 * root**2 - 4)
        estimate = estimate_limit(parse_sequence_spec("quipu"), 60)
        self.assertLess(abs(estimate.gamma - (2 + root)), 1e-6)
        self.assertLess(estimate.gamma, 2 + root + 1e-12)

    def test_single_tree(self):
        estimate = estimate_limit(parse_sequence_spec("[[1,1,1]]"), 1)
        self.assertIsNone(estimate.gap)
        self.assertAlmostEqual(estimate.gamma, 4, places=10)
        with self.assertRaises(DomainError):
            estimate_limit(parse_sequence_spec("[[1]]"), 0)

    def test_truncate(self):
        spec = truncate(parse_sequence_spec("nasty-caterpillar"), 3)
        self.assertEqual(spec.prefix, (Starlike.of(1, 1, 1), Starlike.of(1), Starlike.of(1)))
        self.assertIs(spec.tail.kind, TailKind.ZERO)
        self.assertIs(spec.closing.kind, ClosingKind.SHIFT)
        with self.assertRaises(DomainError):
            truncate(spec, 0)


class TestAlgebraicLimit(unittest.TestCase):
    def test_two_leaves_then_path(self):
        limit = algebraic_limit(parse_sequence_spec("[[1,1]]"))
        self.assertEqual(limit.defining_polynomial.all_coeffs(), [1, -4, -1])
        self.assertAlmostEqual(limit.selected_root, 2 + math.sqrt(5), places=12)
        self.assertEqual(limit.branch, "S = theta'")
        self.assertEqual(sum(c.matches for c in limit.candidates), 1)
        self.assertAlmostEqual(limit.numeric_check.gamma, limit.selected_root, places=9)

    def test_pure_path_is_degenerate(self):
        limit = algebraic_limit(parse_sequence_spec("[[0]]"))
        self.assertIsInstance(limit, DegenerateLimit)
        self.assertEqual(limit.value, 4)
        self.assertLess(limit.numeric_check.gamma, 4)

    def test_needs_zero_tail(self):
        with self.assertRaises(DomainError):
            algebraic_limit(parse_sequence_spec("nasty-caterpillar"))

    def test_constant_tail(self):
        limit = constant_tail_limit(
            (Starlike.of(1, 1, 1),), Starlike.of(1), Starlike.of(1, 1), k_max=80
        )
        self.assertEqual(limit.defining_polynomial.all_coeffs(), [1, -5, -2])
        self.assertEqual(limit.branch, "S = sigma'")
        self.assertAlmostEqual(limit.selected_root, MU_STAR, places=12)
        self.assertTrue(all(c.branch == "S = sigma'" for c in limit.candidates))
        self.assertLess(limit.numeric_check.gamma, MU_STAR + 1e-9)


class TestDomination(unittest.TestCase):
    def test_nasty_is_dominated(self):
        report = dominated_check(parse_sequence_spec("nasty-caterpillar"), 5.4, 20)
        self.assertTrue(report.passes)
        self.assertIsNone(report.first_violation)

    def test_violations(self):
        for text, k, index, reason in (
            ("[[1,1,1,1]]", 2, 1, ViolationReason.DEGREE),
            ("[[1,1,1]];tail=[1,1]", 3, 2, ViolationReason.TRACE),
            ("[[1,1,1]];close=[1,1,1]", 2, 2, ViolationReason.CLOSING),
        ):
            with self.subTest(spec=text):
                report = dominated_check(parse_sequence_spec(text), 5.4, k)
                self.assertFalse(report.passes)
                self.assertEqual(report.first_violation, index)
                self.assertIs(report.reason, reason)

    def test_width_leaving_no_room(self):
        spec = parse_sequence_spec("[[1],[1,1,1]];tail=[1]")
        report = dominated_check(spec, 6, 3)
        self.assertFalse(report.passes)
        self.assertEqual(report.first_violation, 2)
        self.assertIs(report.reason, ViolationReason.DEGREE)

    def test_horizon(self):
        with self.assertRaises(DomainError):
            dominated_check(parse_sequence_spec("[[1]]"), 5.4, 0)


class TestDriftProbe(unittest.TestCase):
    def test_larger_drift_raises_the_radius(self):
        report = drift_monotonicity_probe(
            parse_sequence_spec("[[1],[1],[1]]"), 2, Starlike.of(1, 1)
        )
        self.assertTrue(report.consistent)
        self.assertGreater(report.replaced_drift, report.drift)
        self.assertGreater(report.replaced_radius, report.radius)
        self.assertEqual(report.radius_order, 1)
        self.assertEqual(report.evaluated_at, report.radius)

    def test_index_range(self):
        with self.assertRaises(DomainError):
            drift_monotonicity_probe(parse_sequence_spec("[[1],[1]]"), 3, Starlike())


class TestReferenceConstants(unittest.TestCase):
    def test_guo(self):
        constants = reference_constants(3)
        self.assertEqual(constants.guo(0), 4)
        self.assertAlmostEqual(constants.guo(1), 2 + math.sqrt(5), places=12)
        self.assertAlmostEqual(constants.guo(2), 4.346676455120, places=11)
        self.assertAlmostEqual(constants.guo_limit, 4.382975768, places=8)
        self.assertAlmostEqual(guo_limit(), constants.guo_limit, places=14)
        self.assertLess(constants.guo(3), constants.guo_limit)

    def test_hoffman(self):
        constants = reference_constants(3)
        self.assertEqual(constants.hoffman(1), 2)
        self.assertAlmostEqual(constants.hoffman(2), 2.019800887090, places=11)
        self.assertAlmostEqual(constants.hoffman(3), 2.036639152060, places=11)
        self.assertAlmostEqual(constants.hoffman_limit, adjacency_threshold(), places=12)
        self.assertAlmostEqual(constants.hoffman_tau, (1 + math.sqrt(5)) / 2, places=14)

    def test_n_max(self):
        with self.assertRaises(DomainError):
            reference_constants(0)

    def test_long_range_stays_increasing(self):
        constants = reference_constants(60)
        self.assertEqual(constants.guo(0), 4)
        self.assertTrue(all(a < b for a, b in zip(constants.guo_alpha, constants.guo_alpha[1:])))
        self.assertTrue(
            all(a < b for a, b in zip(constants.hoffman_alpha_bar, constants.hoffman_alpha_bar[1:]))
        )
        self.assertLess(0, constants.guo_limit - constants.guo(60))
        self.assertLess(constants.guo_limit - constants.guo(60), 1e-6)

    def test_index_offsets(self):
        constants = reference_constants(5)
        self.assertEqual(len(constants.guo_alpha), 6)
        self.assertEqual(len(constants.hoffman_alpha_bar), 5)
        self.assertEqual(constants.guo(0), constants.guo_alpha[0])
        self.assertEqual(constants.hoffman(1), constants.hoffman_alpha_bar[0])
        self.assertEqual(constants.hoffman(5), constants.hoffman_alpha_bar[-1])
        cases = (
            (constants.guo, -1),
            (constants.guo, 6),
            (constants.hoffman, 0),
            (constants.hoffman, 6),
        )
        for call, n in cases:
            with self.subTest(call=call.__name__, n=n):
                with self.assertRaises(DomainError):
                    call(n)


if __name__ == "__main__":
    unittest.main()
