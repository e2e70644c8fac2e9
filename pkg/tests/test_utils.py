"""Tests for numeric backends, constant expressions, seeded streams and serialization."""

import io
import json
import math
import unittest
from fractions import Fraction

import mpmath
import sympy

from laplimits import DomainError, TreeSyntaxError
from laplimits.models import SampleRecord
from laplimits.utils import (
    BackendConfig,
    BigFloatBackend,
    ExactBackend,
    FloatBackend,
    ConsolePrinter,
    Timer,
    coerce_real,
    make_backend,
    parse_expression,
)
from laplimits.utils.rng import record_seed, stream
from laplimits.utils.serialization import format_real, to_jsonable, write_csv

MU_STAR = "(5+sqrt(33))/2"


class TestBackendConfig(unittest.TestCase):
    def test_defaults(self):
        config = BackendConfig()
        self.assertEqual(config.kind, "f64")
        self.assertEqual(config.precision, 256)
        self.assertEqual(config.cap, 8192)
        self.assertIsInstance(make_backend(config), FloatBackend)

    def test_configure(self):
        config = BackendConfig()
        config.configure(kind="big", precision=512)
        backend = make_backend(config)
        self.assertIsInstance(backend, BigFloatBackend)
        self.assertEqual(backend.precision, 512)

        config.configure(kind="exact")
        self.assertIsInstance(make_backend(config), ExactBackend)
        with self.assertRaises(ValueError):
            config.configure(kind="quad")


class TestFloatBackend(unittest.TestCase):
    def test_conversions(self):
        backend = FloatBackend()
        self.assertEqual(backend.num(Fraction(1, 4)), 0.25)
        self.assertAlmostEqual(backend.num(sympy.sqrt(2)), math.sqrt(2), places=15)
        self.assertEqual(backend.cbrt(-8.0), -2.0)
        self.assertEqual(backend.floor(-0.5), -1)
        with self.assertRaises(DomainError):
            backend.sqrt(-1.0)

    def test_doubled_is_big(self):
        doubled = FloatBackend().doubled()
        self.assertIsInstance(doubled, BigFloatBackend)
        self.assertEqual(doubled.precision, 106)


class TestBigFloatBackend(unittest.TestCase):
    def test_private_context(self):
        low, high = BigFloatBackend(64), BigFloatBackend(512)
        third = high.num(1) / 3
        self.assertEqual(low.ctx.prec, 64)
        self.assertEqual(high.ctx.prec, 512)
        self.assertEqual(mpmath.mp.prec, 53)
        self.assertLess(abs(third * 3 - 1), high.ctx.ldexp(1, -500))

    def test_guard_scales_with_precision(self):
        backend = BigFloatBackend(256)
        self.assertEqual(backend.guard(), backend.ctx.ldexp(1, -128))
        self.assertEqual(backend.doubled().precision, 512)
        self.assertEqual(BigFloatBackend(8192).doubled().precision, 8192)

    def test_real_cube_root(self):
        backend = BigFloatBackend(128)
        self.assertLess(abs(backend.cbrt(backend.num(-27)) + 3), backend.ctx.ldexp(1, -120))

    def test_minimum_precision(self):
        with self.assertRaises(DomainError):
            BigFloatBackend(32)

    def test_rationals_are_exact_at_precision(self):
        backend = BigFloatBackend(200)
        value = backend.num(sympy.Rational(1, 3))
        self.assertLess(abs(value - backend.ctx.mpf(1) / 3), backend.ctx.ldexp(1, -199))


class TestExactBackend(unittest.TestCase):
    def test_roots(self):
        backend = ExactBackend()
        self.assertEqual(backend.sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertEqual(backend.cbrt(Fraction(-27, 8)), Fraction(-3, 2))
        with self.assertRaises(DomainError):
            backend.sqrt(Fraction(2))

    def test_conversions(self):
        backend = ExactBackend()
        self.assertEqual(backend.num(0.5), Fraction(1, 2))
        self.assertEqual(backend.num(mpmath.mpf("0.75")), Fraction(3, 4))
        self.assertEqual(backend.num(sympy.Rational(2, 7)), Fraction(2, 7))
        with self.assertRaises(DomainError):
            backend.num(sympy.sqrt(2))
        self.assertEqual(backend.guard(), 0)
        self.assertIs(backend.doubled(), backend)


class TestExpressions(unittest.TestCase):
    def test_decimal_is_rational(self):
        self.assertEqual(parse_expression("5.4"), sympy.Rational(27, 5))

    def test_constants(self):
        self.assertEqual(parse_expression(MU_STAR), (5 + sympy.sqrt(33)) / 2)
        self.assertEqual(parse_expression("2 + 2^2"), 6)
        self.assertEqual(parse_expression("cbrt(-8)"), -2)

    def test_full_precision_evaluation(self):
        backend = BigFloatBackend(256)
        value = coerce_real(MU_STAR, backend)
        self.assertLess(abs(value * value - 5 * value - 2), backend.ctx.ldexp(1, -240))

    def test_rejects(self):
        for text, error in (
            ("", TreeSyntaxError),
            ("5 $ 4", TreeSyntaxError),
            ("log(2)", TreeSyntaxError),
            ("(5", TreeSyntaxError),
            ("sqrt(-1)", DomainError),
        ):
            with self.subTest(text=text):
                with self.assertRaises(error):
                    parse_expression(text)


class TestStreams(unittest.TestCase):
    def test_streams_are_replayable(self):
        first = stream(7, 3).integers(100, size=5)
        again = stream(7, 3).integers(100, size=5)
        other = stream(7, 4).integers(100, size=5)
        self.assertEqual(list(first), list(again))
        self.assertNotEqual(list(first), list(other))

    def test_record_seed(self):
        self.assertEqual(record_seed(0, 1), record_seed(0, 1))
        self.assertNotEqual(record_seed(0, 1), record_seed(0, 2))
        self.assertLess(record_seed(123, 0), 2**64)


class TestSerialization(unittest.TestCase):
    def test_format_real(self):
        self.assertEqual(format_real(Fraction(3, 4)), "3/4")
        self.assertEqual(format_real(Fraction(4)), "4")
        self.assertEqual(format_real(0.25), "0.25")
        value = BigFloatBackend(256).num(sympy.sqrt(2))
        self.assertTrue(format_real(value).startswith("1.41421356237309504880168872420969807"))

    def test_polynomials_are_integer_lists(self):
        x = sympy.Symbol("x")
        poly = sympy.Poly(sympy.Rational(1, 2) * x**2 - 2 * x - 1, x, domain=sympy.QQ)
        self.assertEqual(to_jsonable(poly), ["1", "-4", "-2"])

    def test_nested(self):
        document = {1: (Fraction(1, 3), None, True), "kind": sympy.Rational(5, 2)}
        self.assertEqual(
            json.loads(json.dumps(to_jsonable(document))),
            {"1": ["1/3", None, True], "kind": "5/2"},
        )

    def test_csv(self):
        buffer = io.StringIO()
        write_csv(
            [
                SampleRecord(seed=1, spec="[[1,1,1],[0]]", radius=4.5),
                SampleRecord(seed=2, spec="[[1,1,1],[1]]", radius=5.0, gap=0.5),
            ],
            buffer,
        )
        self.assertEqual(
            buffer.getvalue().splitlines(),
            [
                "seed,spec,radius,gap",
                '1,"[[1,1,1],[0]]",4.5,',
                '2,"[[1,1,1],[1]]",5.0,0.5',
            ],
        )


class TestTimer(unittest.TestCase):
    def test_elapsed_is_frozen_on_exit(self):
        with Timer() as timer:
            running = timer.elapsed()
        stopped = timer.elapsed()
        self.assertGreaterEqual(stopped, running)
        self.assertEqual(stopped, timer.elapsed())

    def test_elapsed_before_entry_is_zero(self):
        self.assertEqual(Timer().elapsed(), 0.0)


class TestConsolePrinter(unittest.TestCase):
    def test_messages_above_verbosity_are_dropped(self):
        sink = io.StringIO()
        printer = ConsolePrinter(verbosity=1, output=sink)
        printer.print("radius 4.5\n", 0)
        printer.print("elapsed 0.01s\n", 1)
        printer.print("fallback to exact\n", 2)
        self.assertEqual(sink.getvalue(), "radius 4.5\nelapsed 0.01s\n")

        printer.set_verbosity(0)
        printer.print("elapsed 0.02s\n")
        self.assertEqual(printer.verbosity, 0)
        self.assertNotIn("0.02", sink.getvalue())


if __name__ == "__main__":
    unittest.main()
