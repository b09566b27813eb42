"""The `cuntzlift` command-line tool.

Every command reads JSON documents, writes one document to stdout or `--out`, and
logs to stderr. The exit status is 0 on success, 1 for rejected input or a check the
input fails, and 2 when a computed result fails its own re-check.
"""
import argparse
import json
import logging
import random
import sys

from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

import attr

from ..determinant import Certificate, Check, Report, aue_obstruction, dhs
from ..determinant import jiang_su_demo, obstruction_demo
from ..exceptions import InvariantViolation
from ..graph import MetricGraph
from ..lift import fill_up, graph_lift_sequence, lift_graph, lift_sequence
from ..lift import verify_lift
from ..lift.exceptions import LiftError
from ..morphisms import ArcValuation, Distance, cauchy_check, cauchy_limit
from ..morphisms import compare_on_lambda, d_cu, dd_cu, validate
from ..morphisms.exceptions import InconsistentValuationError, NotSettledError
from ..rational import format_rational
from ..sampling import random_field, random_unitary, random_valuation
from ..schema import DOCUMENT_TYPES, dumps, load
from ..schema.exceptions import SchemaError
from ..spectral import DiagonalUnitary, Matching, UnitaryField, cu_of_unitary
from ..spectral import marriage_match, matching_distance
from ..types import PathLike
from ..version import __version__
from . import config
from .config import Settings

logger = logging.getLogger(__name__)

#: Log levels for zero, one and two or more `-v` flags.
VERBOSITY = (logging.WARNING, logging.INFO, logging.DEBUG)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVARIANT = 2


def _ensure(condition: bool, message: str):
    if not condition:
        raise InvariantViolation(message)


def _read(path: PathLike, kind: Optional[str] = None) -> Any:
    with open(path) as f:
        return load(f, kind)


def _read_turns(path: Optional[PathLike]) -> Optional[List[List[int]]]:
    if path is None:
        return None
    with open(path) as f:
        try:
            turns = json.load(f)
        except json.JSONDecodeError as e:
            raise SchemaError("$", f"malformed json at line {e.lineno}: {e.msg}") from e
    if not isinstance(turns, list) or not all(isinstance(t, list) for t in turns):
        raise SchemaError("$", "turns must be an array of integer arrays, one per edge")
    for e, per_track in enumerate(turns):
        for j, count in enumerate(per_track):
            if not isinstance(count, int) or isinstance(count, bool):
                raise SchemaError(f"$[{e}][{j}]", f"expected an integer, got {count!r}")
    return turns


def _valuation(path: str, settings: Settings) -> ArcValuation:
    alpha = _read(path, "arc_valuation")
    settings.check_resolution(alpha.resolution, "morphism resolution")
    return alpha


def _valuations(path: str, settings: Settings) -> List[ArcValuation]:
    seq = _read(path, "sequence")
    for i, term in enumerate(seq):
        if not isinstance(term, ArcValuation):
            raise SchemaError(f"$.items[{i}].type", "expected an 'arc_valuation' document")
        settings.check_resolution(term.resolution, "term resolution")
    return seq


def _certificate_lines(certificate: Certificate) -> List[str]:
    lines = [f"certificate: {certificate.kind.value} at size {certificate.modulus}"]
    for point, value in zip(certificate.witnesses, certificate.values):
        where = point.vertex if point.is_vertex else f"edge {point.edge} at {point.coord}"
        lines.append(f"  difference {format_rational(value)} at {where}")
    if certificate.constant is not None:
        lines.append(f"  constant difference {format_rational(certificate.constant)}")
    return lines


def render_text(obj: Any) -> str:
    """A human-readable rendering; records without one fall back to JSON."""
    if isinstance(obj, list):
        return "".join(render_text(item) for item in obj)
    if isinstance(obj, Report):
        lines = [f"{obj.name}: {'pass' if obj.passed else 'FAIL'}"]
        for check in obj.checks:
            mark = "ok" if check.passed else "FAIL"
            lines.append(
                f"  [{mark}] {check.name}: {check.computed_value} "
                f"(claimed {check.claimed_bound})"
            )
        if obj.verdict is not None:
            lines.append(f"verdict: {obj.verdict}")
        if obj.certificate is not None:
            lines.extend(_certificate_lines(obj.certificate))
        lines.extend(f"note: {note}" for note in obj.notes)
        return "\n".join(lines) + "\n"
    if isinstance(obj, Distance):
        return f"{obj}\n"
    if isinstance(obj, Certificate):
        return "\n".join(_certificate_lines(obj)) + "\n"
    if isinstance(obj, Matching):
        pairs = ", ".join(
            f"{obj.source[i]} -> {obj.target[j]}" for i, j in obj.pairs
        )
        return f"bottleneck {format_rational(obj.bottleneck)}: {pairs}\n"
    if isinstance(obj, DiagonalUnitary):
        return f"{obj}\n"
    return dumps(obj)


def _emit(obj: Any, args: argparse.Namespace, settings: Settings):
    text = render_text(obj) if settings.output_format == "text" else dumps(obj)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _validate_command(args: argparse.Namespace, settings: Settings) -> int:
    obj = _read(args.input, args.kind)
    checks = [Check("schema", "valid", "valid", True)]
    notes = []
    if isinstance(obj, ArcValuation):
        try:
            validate(obj)
            checks.append(Check("consistent", "consistent", "consistent", True))
        except InconsistentValuationError as e:
            checks.append(Check("consistent", "consistent", e.invariant, False))
            notes.append(str(e))
    report = Report("validate", checks, notes=notes)
    _emit(report, args, settings)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _lift_fd_command(args: argparse.Namespace, settings: Settings) -> int:
    alpha = validate(_valuation(args.morphism, settings))
    if args.n_max is None:
        u = fill_up(alpha)
        _ensure(
            cu_of_unitary(u, alpha.resolution).same_as(alpha),
            "the fill-up does not reproduce the morphism",
        )
        _emit(u, args, settings)
        return EXIT_OK

    sequence = lift_sequence(alpha, settings.check_resolution(args.n_max, "n-max"))
    for n, u in enumerate(sequence, start=1):
        _ensure(
            cu_of_unitary(u, n).same_as(alpha.coarsen(n)),
            f"the fill-up at resolution {n} does not reproduce the morphism",
        )
    _emit(sequence, args, settings)
    return EXIT_OK


def _lift_graph_command(args: argparse.Namespace, settings: Settings) -> int:
    alpha = validate(_valuation(args.morphism, settings))
    if args.n_max is None:
        field = lift_graph(alpha)
        report = verify_lift(alpha, field)
        _ensure(report.ok, f"the graph lift fails verification: {report}")
        _emit(report if args.verify else field, args, settings)
        return EXIT_OK

    lifts = graph_lift_sequence(alpha, settings.check_resolution(args.n_max, "n-max"))
    reports = [verify_lift(alpha, field, n) for n, field in enumerate(lifts, start=1)]
    for report in reports:
        _ensure(report.ok, f"the graph lift fails verification: {report}")
    _emit(reports if args.verify else lifts, args, settings)
    return EXIT_OK


def _cu_of_unitary_command(args: argparse.Namespace, settings: Settings) -> int:
    u = _read(args.unitary)
    if not isinstance(u, (DiagonalUnitary, UnitaryField)):
        raise SchemaError("$.type", "expected a 'diagonal_unitary' or 'unitary_field' document")
    n = settings.resolution_cap if args.at is None else settings.check_resolution(args.at)
    _emit(cu_of_unitary(u, n), args, settings)
    return EXIT_OK


def _cu_distance_command(args: argparse.Namespace, settings: Settings) -> int:
    alpha = _valuation(args.a, settings)
    beta = _valuation(args.b, settings)
    distance = dd_cu(alpha, beta) if args.discrete else d_cu(alpha, beta)
    logger.info("distance %s at resolution %d", distance, distance.resolution)
    _emit(distance, args, settings)
    return EXIT_OK


def _cu_compare_command(args: argparse.Namespace, settings: Settings) -> int:
    alpha = _valuation(args.a, settings)
    beta = _valuation(args.b, settings)
    n = args.at
    if n is None:
        n = min(alpha.resolution, beta.resolution)
    settings.check_resolution(n)
    compares = compare_on_lambda(alpha, beta, n, exhaustive=args.exhaustive)
    report = Report(
        f"compare_on_lambda_{n}",
        [],
        verdict="compare" if compares else "do not compare",
    )
    _emit(report, args, settings)
    return EXIT_OK


def _cu_du_match_command(args: argparse.Namespace, settings: Settings) -> int:
    u = _read(args.u, "diagonal_unitary")
    v = _read(args.v, "diagonal_unitary")
    if u.dimensions != v.dimensions:
        raise ValueError(f"block sizes {u.dimensions} and {v.dimensions} differ")
    matchings = [
        marriage_match(a, b, 1, source_label=i, target_label=i)
        for i, (a, b) in enumerate(zip(u.blocks, v.blocks))
    ]
    logger.info("matching distance %s", format_rational(matching_distance(u, v)))
    _emit(matchings, args, settings)
    return EXIT_OK


def _cauchy_check_command(args: argparse.Namespace, settings: Settings) -> int:
    seq = _valuations(args.sequence, settings)
    holds = cauchy_check(seq, args.C, start=args.start)
    report = Report(
        "cauchy_check",
        [
            Check(
                "cauchy",
                f"dd_cu(a_(n-1), a_n) <= {format_rational(args.C)}/2^n",
                "holds" if holds else "fails",
                holds,
            )
        ],
    )
    _emit(report, args, settings)
    return EXIT_OK if holds else EXIT_FAILURE


def _cauchy_limit_command(args: argparse.Namespace, settings: Settings) -> int:
    seq = _valuations(args.sequence, settings)
    if args.at is not None:
        settings.check_resolution(args.at)
    limit = cauchy_limit(seq, args.C, resolution=args.at, start=args.start)
    _emit(limit, args, settings)
    return EXIT_OK


def _dhs_det_command(args: argparse.Namespace, settings: Settings) -> int:
    field = _read(args.field, "unitary_field")
    _emit(dhs(field, _read_turns(args.turns)), args, settings)
    return EXIT_OK


def _dhs_certify_command(args: argparse.Namespace, settings: Settings) -> int:
    u = _read(args.u, "unitary_field")
    v = _read(args.v, "unitary_field")
    certificate = aue_obstruction(u, v, _read_turns(args.u_turns), _read_turns(args.v_turns))
    if certificate is not None:
        _emit(certificate, args, settings)
        return EXIT_OK
    report = Report(
        "certify",
        [],
        verdict="inconclusive",
        notes=("the determinants agree in the stable quotient, which does not prove equivalence",),
    )
    _emit(report, args, settings)
    return EXIT_FAILURE


def _demo_obstruction_command(args: argparse.Namespace, settings: Settings) -> int:
    report = obstruction_demo(settings.check_resolution(args.level, "level"))
    _emit(report, args, settings)
    _ensure(report.passed, f"obstruction demo checks fail: {report.failed()}")
    return EXIT_OK


def _demo_jiang_su_command(args: argparse.Namespace, settings: Settings) -> int:
    report = jiang_su_demo(args.k, args.l, settings.check_resolution(args.top, "top"))
    _emit(report, args, settings)
    _ensure(report.passed, f"jiang-su demo checks fail: {report.failed()}")
    return EXIT_OK


def _trial_fill_up(rng: random.Random, cap: int) -> bool:
    n = rng.randint(0, min(3, cap))
    dimensions = [rng.randint(1, 3) for _ in range(rng.randint(1, 2))]
    alpha = random_valuation(rng, dimensions, n)
    return cu_of_unitary(fill_up(alpha), n).same_as(alpha)


def _trial_metrics(rng: random.Random, cap: int) -> bool:
    n = min(3, cap)
    alpha, beta = (cu_of_unitary(random_unitary(rng, 2, n + 1), n) for _ in range(2))
    d = d_cu(alpha, beta).value
    dd = dd_cu(alpha, beta).value
    return d <= 2 * dd and (d == 0 or dd < 2 * d)


def _trial_oracle(rng: random.Random, cap: int) -> bool:
    n = min(3, cap)
    u, v = (random_unitary(rng, 3, n) for _ in range(2))
    dd = dd_cu(cu_of_unitary(u, n), cu_of_unitary(v, n)).value
    if u.same_spectrum(v):
        return dd == 0
    return dd < 2 * matching_distance(u, v)


def _trial_matching(rng: random.Random, cap: int) -> bool:
    n = min(3, cap)
    u, v = (random_unitary(rng, 3, n) for _ in range(2))
    return d_cu(cu_of_unitary(u, n), cu_of_unitary(v, n)).value == matching_distance(u, v)


def _trial_graph_lift(rng: random.Random, cap: int) -> bool:
    n = max(1, min(rng.choice((3, 4)), cap))
    shape = rng.choice(
        (MetricGraph.interval(), MetricGraph.circle(), MetricGraph.theta((1, 1, Fraction(1, 2))))
    )
    alpha = cu_of_unitary(random_field(rng, shape, rng.randint(1, 6), n), n)
    lift = lift_graph(alpha)
    return verify_lift(alpha, lift).ok and compare_on_lambda(
        cu_of_unitary(lift, n), alpha, max(n - 2, 0)
    )


#: Randomized properties run by `selftest`, by name.
TRIALS: Tuple[Tuple[str, str, Callable[[random.Random, int], bool]], ...] = (
    ("fill_up_agreement", "Cu(fill_up(alpha)) = alpha", _trial_fill_up),
    ("metric_relations", "d <= 2 dd and dd < 2 d", _trial_metrics),
    ("oracle_inequality", "dd_cu < 2 d_match", _trial_oracle),
    ("matching_agreement", "d_cu = d_match on grid angles", _trial_matching),
    ("graph_lift", "verify_lift ok and lift compares on Lambda_{n-2}", _trial_graph_lift),
)


def run_selftest(settings: Settings) -> Report:
    """Run every randomized property `settings.trials` times from `settings.seed`."""
    rng = random.Random(settings.seed)
    checks = []
    for name, claim, trial in TRIALS:
        passed = sum(trial(rng, settings.resolution_cap) for _ in range(settings.trials))
        logger.info("%s: %d of %d trials pass", name, passed, settings.trials)
        checks.append(
            Check(name, claim, f"{passed}/{settings.trials}", passed == settings.trials)
        )
    return Report("selftest", checks, notes=(f"seed {settings.seed}",))


def _selftest_command(args: argparse.Namespace, settings: Settings) -> int:
    report = run_selftest(settings)
    _emit(report, args, settings)
    _ensure(report.passed, f"selftest properties fail: {report.failed()}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """An argument parser whose usage errors exit with :data:`EXIT_FAILURE`."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default=None, help="Write the output document here.")
    common.add_argument("--format", choices=config.OUTPUT_FORMATS, default=None)
    common.add_argument("--config", default=None, help="A TOML settings file.")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument(
        "--resolution",
        type=int,
        default=None,
        help="Lower the resolution cap to n for this run; cu of-unitary works at it.",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(
        prog="cuntzlift",
        description="Lift Cuntz semigroup morphisms out of Lsc(T, N) to diagonal unitaries.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name: str, func, summary: str) -> argparse.ArgumentParser:
        sub = group.add_parser(name, parents=[common], help=summary)
        sub.set_defaults(func=func)
        return sub

    p = leaf(commands, "validate", _validate_command, "Parse and check a document.")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=DOCUMENT_TYPES, default=None)

    lift = commands.add_parser("lift", help="Lift a morphism to unitaries.")
    lifts = lift.add_subparsers(dest="target", required=True)
    p = leaf(lifts, "fd", _lift_fd_command, "Lift into a finite-dimensional algebra.")
    p.add_argument("--morphism", required=True)
    p.add_argument("--n-max", type=int, default=None, help="Emit the lift sequence.")
    p = leaf(lifts, "graph", _lift_graph_command, "Lift into C(X) (x) M_d.")
    p.add_argument("--morphism", required=True)
    p.add_argument("--n-max", type=int, default=None, help="Emit the lift sequence.")
    p.add_argument("--verify", action="store_true", help="Emit the verification report.")

    cu = commands.add_parser("cu", help="Cuntz semigroup valuations and distances.")
    cus = cu.add_subparsers(dest="action", required=True)
    p = leaf(cus, "of-unitary", _cu_of_unitary_command, "Cu of a unitary on Lambda_n.")
    p.add_argument("--unitary", required=True)
    p.add_argument("--at", type=int, default=None, help="Defaults to the resolution cap.")
    p = leaf(cus, "distance", _cu_distance_command, "d_cu, or dd_cu with --discrete.")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--discrete", action="store_true")
    p = leaf(cus, "compare", _cu_compare_command, "Whether two valuations compare.")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--at", type=int, default=None, help="The resolution to compare at.")
    p.add_argument("--exhaustive", action="store_true")
    p = leaf(cus, "du-match", _cu_du_match_command, "Optimal eigenvalue matchings.")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)

    cauchy = commands.add_parser("cauchy", help="Cauchy sequences of valuations.")
    cauchies = cauchy.add_subparsers(dest="action", required=True)
    for name, func in (("check", _cauchy_check_command), ("limit", _cauchy_limit_command)):
        p = leaf(cauchies, name, func, f"Cauchy {name}.")
        p.add_argument("--sequence", required=True)
        p.add_argument("--C", type=Fraction, required=True)
        p.add_argument("--start", type=int, default=1)
        if name == "limit":
            p.add_argument("--at", type=int, default=None, help="The target resolution.")

    det = commands.add_parser("dhs", help="De la Harpe-Skandalis determinants.")
    dets = det.add_subparsers(dest="action", required=True)
    p = leaf(dets, "det", _dhs_det_command, "The determinant of a unitary field.")
    p.add_argument("--field", required=True)
    p.add_argument("--turns", default=None, help="JSON array of whole turns per edge and track.")
    p = leaf(dets, "certify", _dhs_certify_command, "Certify u and v are not aue.")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--u-turns", default=None)
    p.add_argument("--v-turns", default=None)

    demo = commands.add_parser("demo", help="The worked counterexamples.")
    demos = demo.add_subparsers(dest="action", required=True)
    p = leaf(demos, "obstruction", _demo_obstruction_command, "The determinant obstruction.")
    p.add_argument("--level", type=int, default=3)
    p = leaf(demos, "jiang-su", _demo_jiang_su_command, "Unitaries of the Jiang-Su algebra.")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--top", type=int, default=6)

    p = leaf(commands, "selftest", _selftest_command, "Run the randomized properties.")
    p.add_argument("--trials", type=int, default=None)
    return parser


def load_settings(args: argparse.Namespace, environ=None) -> Settings:
    """Defaults, then the settings file, then the environment, then flags.

    Raises:
        ValueError: raised when `--resolution` exceeds the cap from the file or the
            environment.
    """
    settings = Settings()
    if args.config:
        with open(args.config) as f:
            settings = config.load(f)
    settings = Settings.from_env(settings, environ)
    overrides = {}
    if args.resolution is not None:
        overrides["resolution_cap"] = settings.check_resolution(args.resolution)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.format is not None:
        overrides["output_format"] = args.format
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    return attr.evolve(settings, **overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=VERBOSITY[min(args.verbose, len(VERBOSITY) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        settings = load_settings(args)
        return args.func(args, settings)
    except InvariantViolation as e:
        logger.error("internal invariant violated: %s", e)
        return EXIT_INVARIANT
    except (LiftError, NotSettledError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE
    except (KeyError, OSError, TypeError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE


__all__ = ["TRIALS", "build_parser", "load_settings", "main", "render_text", "run_selftest"]


if __name__ == "__main__":
    raise SystemExit(main())
