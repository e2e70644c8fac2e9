"""
laplimits command line: radii, traces, Shearer generators, limit points and certificates.

Exit codes: 0 success, 2 parse or usage error, 3 domain error, 4 limit inconsistency or
non-monotone sequence, 5 precision cap reached (partial output is still written).
"""

import argparse
import hashlib
import io
import json
import os
import sys
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .diagonalize import classify, diagonalize_tree, pi_trace
from .errors import (
    DomainError,
    GuardTripped,
    LimitInconsistency,
    NotShearerSequence,
    PrecisionExhausted,
    TreeSyntaxError,
)
from .interfaces import (
    CacheInterface,
    NumericBackend,
    PrinterInterface,
    ProgressIndicatorInterface,
)
from .limits import (
    algebraic_limit,
    constant_tail_limit,
    dominated_check,
    estimate_limit,
    parse_sequence_spec,
    reference_constants,
)
from .models import (
    EMPTY_STAR,
    CachedResult,
    ClosingKind,
    GeneratorPolicy,
    LinearTree,
    MatrixKind,
    OutputFormat,
    RadiusLocation,
    RunConfig,
    SampleRecord,
    Selection,
    SequenceSpec,
    ShearerMode,
    Starlike,
    TailKind,
)
from .shearer import (
    classic_adjacency,
    classic_laplacian,
    generalized_random,
    nasty_inequalities,
    nasty_interval,
    sweep_nasty,
    verify_nasty,
)
from .spectral import oracle_radius, radius
from .tree_model import format_linear_tree, parse_linear_tree, realize
from .utils import (
    BackendConfig,
    CacheConfig,
    Colors,
    ConsolePrinter,
    FileBasedCache,
    SilentProgress,
    Spinner,
    Timer,
    coerce_real,
    make_backend,
)
from .utils.rng import record_seed, stream
from .utils.serialization import dump_json, schema, to_jsonable, write_csv
from .variational import alpha_certificate

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INCONSISTENT = 4
EXIT_PRECISION = 5

_F1_FIRST = Starlike.of(1, 1, 1)
_F1_CHOICES = (EMPTY_STAR, Starlike.of(1), Starlike.of(1, 1))
_LONG_COMMANDS = ("certify", "limit", "sample-f1", "nasty-interval")
_LIST_PREVIEW = 12  # list items shown in text output below verbosity 2

Document = Dict[str, Any]


def sample_f1_record(seed: int, k: int, index: int) -> SampleRecord:
    """
    One sequence of the family with T_1 = [1,1,1] and T_2..T_k uniform over [0], [1], [1,1].

    Record ``index`` draws from its own stream, so records do not depend on worker scheduling.
    """
    picks = stream(seed, index).integers(len(_F1_CHOICES), size=k - 1)
    g = LinearTree.of([_F1_FIRST] + [_F1_CHOICES[int(i)] for i in picks])
    return SampleRecord(
        seed=record_seed(seed, index),
        spec=format_linear_tree(g, compress=True),
        radius=float(radius(g).value),
    )


def sample_f1(samples: int, k: int, seed: int = 0, workers: int = 1) -> List[SampleRecord]:
    """
    Sample the family, sort by radius and fill in the gap to the previous record.

    Args:
        samples: Number of sequences
        k: Length of each tree, at least 2
        seed: Run seed
        workers: Worker processes; 1 computes in-process

    Returns:
        Records sorted by radius
    """
    if k < 2:
        raise DomainError("sampled trees need at least two stars")
    task = partial(sample_f1_record, seed, k)
    if workers > 1 and samples > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(task, range(samples), chunksize=max(1, samples // workers)))
    else:
        records = [task(index) for index in range(samples)]
    records.sort(key=lambda record: (record.radius, record.spec, record.seed))
    gapped = records[:1]
    for previous, record in zip(records, records[1:]):
        gapped.append(record.model_copy(update={"gap": record.radius - previous.radius}))
    return gapped


def _read_literal(text: str) -> str:
    if os.path.isfile(text):
        with open(text, "r") as f:
            return f.read().strip()
    return text


def _split_indices(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise TreeSyntaxError(f"malformed index list {text!r}", 0) from exc


class Runner:
    """Runs one configured command and renders its result."""

    def __init__(
        self,
        printer: Optional[PrinterInterface] = None,
        cache: Optional[CacheInterface] = None,
        progress_indicator: Optional[ProgressIndicatorInterface] = None,
        use_color: bool = True,
        output: Optional[Any] = None,
    ):
        self._printer: PrinterInterface = printer if printer is not None else ConsolePrinter()
        self._cache: Optional[CacheInterface] = cache  # None disables caching
        self._progress_indicator: ProgressIndicatorInterface = (
            progress_indicator if progress_indicator is not None else SilentProgress()
        )
        self.use_color = use_color
        self._output = output  # stream for documents; the printer when None
        self.backend_config = BackendConfig()
        self._handlers: Dict[str, Callable[[RunConfig], Tuple[str, Any]]] = {
            "radius": self._radius,
            "diagonalize": self._diagonalize,
            "shearer": self._shearer,
            "limit": self._limit,
            "certify": self._certify,
            "sample-f1": self._sample_f1,
            "nasty-interval": self._nasty_interval,
            "reference-constants": self._reference_constants,
        }

    def run(self, config: RunConfig) -> int:
        """
        Execute a command, consulting the cache first.

        Args:
            config: The validated run configuration

        Returns:
            The exit code (errors propagate to main)
        """
        if config.command not in self._handlers:
            raise DomainError(f"unknown command {config.command!r}")
        self.backend_config.configure(kind=config.backend, precision=config.precision)
        key = self._create_hash_key(config)
        document = self._read_from_cache(key)
        elapsed = 0.0
        if document is None:
            try:
                with Timer() as timer:
                    kind, result = self._compute(config)
            except PrecisionExhausted as exc:
                if exc.partial is not None:
                    partial_document = self._document(config, "certificate", exc.partial)
                    partial_document["partial"] = True
                    self._emit(config, partial_document, 0.0)
                raise
            elapsed = timer.elapsed()
            document = self._document(config, kind, result)
            self._write_to_cache(config, key, document)
        self._emit(config, document, elapsed)
        return EXIT_OK

    def _compute(self, config: RunConfig) -> Tuple[str, Any]:
        started = False
        if config.command in _LONG_COMMANDS:
            self._progress_indicator.start()
            started = True
        try:
            return self._handlers[config.command](config)
        finally:
            if started:
                self._progress_indicator.stop()

    def _backend(self) -> NumericBackend:
        return make_backend(self.backend_config)

    @staticmethod
    def _document(config: RunConfig, kind: str, result: Any) -> Document:
        return {
            "schema": schema(kind),
            "command": config.command,
            "result": to_jsonable(result),
        }

    # Commands
    def _tree(self, config: RunConfig) -> LinearTree:
        if config.tree is None:
            raise TreeSyntaxError("a tree literal is required", 0)
        return parse_linear_tree(_read_literal(config.tree), caterpillar=config.caterpillar)

    def _mu(self, config: RunConfig, backend: NumericBackend) -> Any:
        if config.mu is None:
            raise DomainError(f"{config.command} needs --mu")
        return coerce_real(config.mu, backend)

    def _spec(self, config: RunConfig) -> SequenceSpec:
        if config.spec is None:
            raise TreeSyntaxError("a sequence literal or --family name is required", 0)
        return parse_sequence_spec(_read_literal(config.spec))

    def _radius(self, config: RunConfig) -> Tuple[str, Any]:
        g = self._tree(config)
        result: Dict[str, Any] = {
            "tree": format_linear_tree(g, compress=True),
            "radius": radius(g, config.kind, config.tolerance, self._backend()),
        }
        if config.oracle:
            result["oracle"] = oracle_radius(g, config.kind)
        return "radius", result

    def _diagonalize(self, config: RunConfig) -> Tuple[str, Any]:
        g = self._tree(config)
        backend = self._backend()
        mu = self._mu(config, backend)
        result: Dict[str, Any] = {"tree": format_linear_tree(g, compress=True), "mu": mu}
        if config.kind is MatrixKind.LAPLACIAN and mu > 4:
            try:
                result["trace"] = pi_trace(g, mu, backend)
            except GuardTripped as exc:
                self._printer.print(
                    f"guard tripped at S_{exc.index}; using the generic diagonalization\n", 2
                )
            result["location"] = classify(g, mu, backend)
        if "trace" not in result:
            outcome = diagonalize_tree(realize(g, config.kind), -mu)
            result["diagonalization"] = outcome
            result["location"] = _location_from(outcome.inertia)
        return "diagonalization", result

    def _shearer(self, config: RunConfig) -> Tuple[str, Any]:
        backend = self._backend()
        if config.k is None:
            raise DomainError("shearer needs --k")
        target = self._mu(config, backend)
        if config.mode is ShearerMode.ADJACENCY_CLASSIC:
            run = classic_adjacency(target, config.k, backend, config.with_radii)
        elif config.mode is ShearerMode.GENERALIZED_RANDOM:
            run = generalized_random(target, config.k, config.policy, backend, config.with_radii)
        else:
            run = classic_laplacian(target, config.k, backend, config.with_radii)
        if run.experimental:
            warning = "target lies below the guaranteed domain; run is experimental\n"
            self._printer.print(self._paint(warning, Colors.WARNING), 1)
        return "shearer-run", run

    def _limit(self, config: RunConfig) -> Tuple[str, Any]:
        spec = self._spec(config)
        backend = self._backend()
        tol = config.tolerance
        result: Dict[str, Any] = {"spec": config.spec}
        if spec.tail.kind is TailKind.ZERO and spec.closing.kind in (
            ClosingKind.SHIFT,
            ClosingKind.EXPLICIT,
        ):
            result["limit"] = algebraic_limit(spec, config.k_max, tol, backend)
        elif spec.tail.kind is TailKind.CONSTANT and spec.closing.kind is ClosingKind.CONSTANT:
            result["limit"] = constant_tail_limit(
                spec.prefix,
                spec.tail.stars[0],
                spec.closing.stars[0],
                k_max=config.k_max,
                tol=tol,
                backend=backend,
            )
        else:
            k_max = config.k_max or len(spec.prefix) + 60
            result["estimate"] = estimate_limit(spec, k_max, tol, backend)
        if config.dominated_at is not None:
            horizon = config.k or config.k_max or len(spec.prefix) + 1
            at = coerce_real(config.dominated_at, backend)
            result["domination"] = dominated_check(spec, at, horizon, backend)
        return "limit", result

    def _certify(self, config: RunConfig) -> Tuple[str, Any]:
        spec = self._spec(config)
        if config.mu is None:
            raise DomainError("certify needs --mu")
        k = config.k or max(config.indices, default=0)
        if k < 1:
            raise DomainError("certify needs --k or --idx")
        certificate = alpha_certificate(
            spec,
            config.mu,
            k,
            precision=config.precision,
            epsilon_indices=config.indices if config.epsilon else None,
        )
        indices = config.indices or (k,)
        for j in indices:
            if not 1 <= j <= k:
                raise DomainError(f"index {j} lies outside 1..{k}")
        selected = {
            "alpha": {j: certificate.alpha_at(j) for j in indices},
            "x": {j: certificate.x_values[j - 1] for j in indices},
        }
        self._printer.print(f"certificate computed at {certificate.precision} bits\n", 2)
        return "certificate", {"selected": selected, "certificate": certificate}

    def _sample_f1(self, config: RunConfig) -> Tuple[str, Any]:
        k = config.k or 100
        records = sample_f1(config.samples, k, config.seed, config.workers)
        gaps = [record.gap for record in records if record.gap is not None]
        summary = {
            "count": len(records),
            "min_radius": records[0].radius if records else None,
            "max_radius": records[-1].radius if records else None,
            "min_gap": min(gaps, default=None),
            "max_gap": max(gaps, default=None),
        }
        return "sample-f1", {"summary": summary, "records": records}

    def _nasty_interval(self, config: RunConfig) -> Tuple[str, Any]:
        backend = self._backend()
        result: Dict[str, Any] = {"interval": nasty_interval(backend)}
        k = config.k or 20
        if config.mu is not None:
            mu = self._mu(config, backend)
            result["inequalities"] = nasty_inequalities(mu, backend)
            result["verified"] = verify_nasty(mu, k, backend)
        if config.samples:
            result["sweep"] = sweep_nasty(config.samples, k, config.seed, backend)
        return "nasty-interval", result

    def _reference_constants(self, config: RunConfig) -> Tuple[str, Any]:
        return "reference-constants", reference_constants(config.n_max, self._backend())

    # Output
    def _paint(self, text: str, color: str) -> str:
        return f"{color}{text}{Colors.ENDC}" if self.use_color else text

    def _emit(self, config: RunConfig, document: Document, elapsed: float) -> None:
        buffer = io.StringIO()
        if config.output_format is OutputFormat.JSON:
            dump_json({**document, "elapsed": round(elapsed, 6)}, buffer)
        elif config.output_format is OutputFormat.CSV:
            records = document["result"].get("records", [])
            write_csv((SampleRecord.model_validate(record) for record in records), buffer)
        else:
            buffer.write(self._render_text(document, colored=config.output is None))
        self._deliver(config, buffer.getvalue())
        if config.output_format is OutputFormat.TEXT:
            self._printer.print(self._paint(f"elapsed {elapsed:.3f}s\n", Colors.CYAN), 1)

    def _deliver(self, config: RunConfig, text: str) -> None:
        if config.output is not None:
            with open(config.output, "w") as f:
                f.write(text)
            self._printer.print(f"wrote {config.output}\n", 1)
        elif self._output is not None:
            self._output.write(text)
        else:
            self._printer.print(text, 0)

    def _render_text(self, document: Document, colored: bool) -> str:
        verbosity = int(getattr(self._printer, "verbosity", 1))
        title = document["schema"]
        lines = [self._paint(title, Colors.BOLD) if colored else title]
        lines.extend(_text_lines(document["result"], 0, verbosity))
        return "\n".join(lines) + "\n"

    # Cache
    def _create_hash_key(self, config: RunConfig) -> str:
        key = json.dumps(config.cache_key_fields(), sort_keys=True)
        return hashlib.md5(key.encode()).hexdigest()

    def _read_from_cache(self, key: str) -> Optional[Document]:
        if self._cache is None:
            return None
        cached = self._cache.get(key)
        if cached is None:
            return None
        self._printer.print(self._paint("result loaded from cache\n", Colors.GREEN), 2)
        return {"schema": cached.schema_name, "command": cached.command, "result": cached.payload}

    def _write_to_cache(self, config: RunConfig, key: str, document: Document) -> None:
        if self._cache is None:
            return
        self._cache.set(
            key,
            CachedResult(
                timestamp=time.time(),
                command=config.command,
                schema_name=document["schema"],
                payload=document["result"],
            ),
        )
        self._printer.print(f"cached result under {key}\n", 2)


def _location_from(inertia: Any) -> RadiusLocation:
    if inertia.above > 0:
        return RadiusLocation.ABOVE
    return RadiusLocation.EQUALS if inertia.equal > 0 else RadiusLocation.BELOW


def _text_lines(value: Any, indent: int, verbosity: int) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1, verbosity))
            else:
                lines.append(f"{pad}{key}: {_inline(item, verbosity)}")
    elif isinstance(value, list):
        shown = value if verbosity >= 2 else value[:_LIST_PREVIEW]
        for item in shown:
            nested = _text_lines(item, indent + 1, verbosity)
            lines.append(f"{pad}- " + nested[0].strip() if nested else f"{pad}-")
            lines.extend(nested[1:])
        if len(shown) < len(value):
            lines.append(f"{pad}... {len(value) - len(shown)} more (-v shows all)")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _flat(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(item, (dict, list)) for item in value)


def _inline(value: Any, verbosity: int) -> str:
    if isinstance(value, list):
        shown = value if verbosity >= 2 else value[:_LIST_PREVIEW]
        text = ", ".join(str(item) for item in shown)
        if len(shown) < len(value):
            text += f", ... ({len(value)} total)"
        return f"[{text}]"
    return "-" if value is None else str(value)


# Argument parsing
def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        dest="output_format",
        default="text",
        choices=[f.value for f in OutputFormat],
        help="Output format",
    )
    common.add_argument("--output", default=None, help="Write the result to this file")
    common.add_argument(
        "--backend", default="f64", choices=["f64", "big"], help="Arithmetic for traces and radii"
    )
    common.add_argument(
        "--precision",
        type=int,
        default=256,
        help="Big-float mantissa bits (starting precision for certify)",
    )
    common.add_argument("--tol", dest="tolerance", type=float, default=None, help="Tolerance")
    common.add_argument("-v", "--verbose", action="store_true", help="Print diagnostics")
    common.add_argument("-q", "--quiet", action="store_true", help="Print results only")
    common.add_argument("--cache-dir", default=None, help="Cache results in this directory")
    common.add_argument("--no-color", action="store_true", help="Disable ANSI colours")
    return common


def _add_tree_command(
    commands: Any, common: argparse.ArgumentParser, name: str, help_text: str
) -> argparse.ArgumentParser:
    sub = commands.add_parser(name, parents=[common], help=help_text)
    sub.add_argument("tree", help="Tree literal such as [[1],[1,2]], or a file holding one")
    sub.add_argument("--kind", default="laplacian", choices=[k.value for k in MatrixKind])
    sub.add_argument(
        "--caterpillar", action="store_true", help="Read the tree as leaf counts [r_1,...,r_k]"
    )
    return sub


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per operation."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="laplimits",
        description="Laplacian spectral radii of linear trees and their limit points",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = _add_tree_command(commands, common, "radius", "Spectral radius of a linear tree")
    sub.add_argument(
        "--oracle", action="store_true", help="Also compute the exact polynomial radius"
    )
    sub = _add_tree_command(commands, common, "diagonalize", "Back-node trace at mu")
    sub.add_argument("--mu", required=True, help="Target (decimal or expression)")

    sub = commands.add_parser("shearer", parents=[common], help="Generate a Shearer sequence")
    sub.add_argument("--mode", default="classic", choices=[m.value for m in ShearerMode])
    sub.add_argument("--mu", required=True, help="Target (lambda for adjacency mode)")
    sub.add_argument("--k", type=int, required=True, help="Number of stars")
    sub.add_argument("--max-width", type=int, default=4)
    sub.add_argument("--max-height", type=int, default=2)
    sub.add_argument("--selection", default="max-drift", choices=[s.value for s in Selection])
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument(
        "--weight",
        action="append",
        default=[],
        metavar="STAR=WEIGHT",
        help="Selection weight for a star, e.g. [1,1]=2 (repeatable)",
    )
    sub.add_argument("--no-radii", action="store_true", help="Skip the radius estimates")

    sub = commands.add_parser("limit", parents=[common], help="Limit point of a sequence")
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", help="Sequence literal, e.g. [[1,1,1]];tail=[1];close=[1,1]")
    source.add_argument("--family", help="Named sequence, e.g. nasty-caterpillar or one-k-k")
    sub.add_argument("--kmax", dest="k_max", type=int, default=None)
    sub.add_argument("--dominated-at", default=None, help="Also check domination by this mu")
    sub.add_argument("--k", type=int, default=None, help="Horizon of the domination check")

    sub = commands.add_parser("certify", parents=[common], help="Tangent-root certificate")
    sub.add_argument("--mu", required=True, help="Target (decimal or expression)")
    sub.add_argument("--spec", required=True, help="Sequence literal or named sequence")
    sub.add_argument("--idx", default="", help="Comma-separated indices to report")
    sub.add_argument("--k", type=int, default=None, help="Horizon (default: largest index)")
    sub.add_argument("--epsilon", action="store_true", help="Also solve eps_j at the indices")

    sub = commands.add_parser("sample-f1", parents=[common], help="Sample the [1,1,1] family")
    sub.add_argument("--n", dest="samples", type=int, default=3000)
    sub.add_argument("--k", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=1)

    sub = commands.add_parser("nasty-interval", parents=[common], help="The nasty interval")
    sub.add_argument("--mu", default=None, help="Also check the inequalities at this mu")
    sub.add_argument("--k", type=int, default=20)
    sub.add_argument("--samples", type=int, default=0, help="Sweep this many sampled targets")
    sub.add_argument("--seed", type=int, default=0)

    sub = commands.add_parser(
        "reference-constants", parents=[common], help="Guo and Hoffman limit points"
    )
    sub.add_argument("--n-max", type=int, default=10)
    return parser


def _weights(pairs: Sequence[str]) -> Dict[str, float]:
    weights: Dict[str, float] = {}
    for pair in pairs:
        star, sep, weight = pair.rpartition("=")
        if not sep:
            raise TreeSyntaxError(f"expected STAR=WEIGHT, found {pair!r}", 0)
        weights[star.strip()] = float(weight)
    return weights


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validated RunConfig from parsed arguments."""
    options = vars(args)
    spec = options.get("spec") or options.get("family")
    policy = GeneratorPolicy()
    if args.command == "shearer":
        policy = GeneratorPolicy(
            max_width=args.max_width,
            max_height=args.max_height,
            selection=Selection(args.selection),
            rng_seed=args.seed,
            weights=_weights(args.weight),
        )
    return RunConfig(
        command=args.command,
        tree=options.get("tree"),
        caterpillar=options.get("caterpillar", False),
        spec=spec,
        mu=options.get("mu"),
        k=options.get("k"),
        k_max=options.get("k_max"),
        kind=MatrixKind(options.get("kind", "laplacian")),
        mode=ShearerMode(options.get("mode", "classic")),
        policy=policy,
        with_radii=not options.get("no_radii", False),
        oracle=options.get("oracle", False),
        tolerance=args.tolerance,
        backend=args.backend,
        precision=args.precision,
        seed=options.get("seed", 0),
        indices=_split_indices(options.get("idx", "")),
        epsilon=options.get("epsilon", False),
        dominated_at=options.get("dominated_at"),
        samples=options.get("samples", 0),
        workers=options.get("workers", 1),
        n_max=options.get("n_max", 10),
        output_format=OutputFormat(args.output_format),
        output=args.output,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Command-line entry point.

    Args:
        argv: Arguments without the program name; sys.argv when omitted

    Returns:
        The exit code
    """
    errors = ConsolePrinter(verbosity=0, output=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    use_color = not args.no_color
    verbosity = 0 if args.quiet else 2 if args.verbose else 1

    def fail(code: int, message: str) -> int:
        text = f"error: {message}\n"
        errors.print(f"{Colors.FAIL}{text}{Colors.ENDC}" if use_color else text, 0)
        return code

    try:
        config = config_from_args(args)
        if config.output_format is OutputFormat.CSV and config.command != "sample-f1":
            return fail(EXIT_USAGE, "csv output is only available for sample-f1")
        cache = None
        if args.cache_dir:
            cache_config = CacheConfig()
            cache_config.configure(use_cache=True)
            cache = FileBasedCache(cache_config, cache_dir=args.cache_dir)
        interactive = verbosity >= 1 and sys.stderr.isatty()
        progress = (
            Spinner(stop_event=threading.Event(), message=f"laplimits {config.command}")
            if interactive and config.command in _LONG_COMMANDS
            else SilentProgress()
        )
        runner = Runner(
            printer=ConsolePrinter(verbosity=verbosity),
            cache=cache,
            progress_indicator=progress,
            use_color=use_color and config.output_format is OutputFormat.TEXT,
        )
        return runner.run(config)
    except (TreeSyntaxError, ValidationError) as exc:
        return fail(EXIT_USAGE, str(exc))
    except (NotShearerSequence, LimitInconsistency) as exc:
        return fail(EXIT_INCONSISTENT, str(exc))
    except DomainError as exc:
        return fail(EXIT_DOMAIN, str(exc))
    except PrecisionExhausted as exc:
        return fail(EXIT_PRECISION, str(exc))
    except ValueError as exc:
        return fail(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
