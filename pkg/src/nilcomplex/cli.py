"""Command-line front end.

    nilcomplex classify --family three-step --rho 1 --B 1+1i --c 1
    nilcomplex frolicher --family three-step --rho 0 --B 1 --c 1/4 --format json
    nilcomplex metrics --family two-step --rho 1 --lambda 1 --D 1/4
    nilcomplex equiv --first 1,1,i --second 1,1,i
    nilcomplex sweep h15-sine --grid=-1:1:1/2 --format csv
    nilcomplex semicont h15-sine --center 1 --nearby 1/2,0

Exit codes: 0 success, 1 usage, 2 parse error, 3 domain error or
unsupported case, 4 internal-consistency alarm.
Values starting with a minus sign are given as --option=value.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from .classify import GeneralNilpotentParams
from .classify import NonNilpotentParams
from .classify import Params
from .classify import ThreeStepTriple
from .classify import TwoStepTriple
from .classify import automorphism_witness
from .classify import canonical_form
from .classify import classify
from .classify import equations_of
from .classify import equivalent_2step
from .classify import identify
from .cohomology import hodge_table
from .deform import Family
from .deform import FamilyTag
from .deform import semicontinuity_report
from .deform import sweep
from .errors import ConsistencyAlarm
from .errors import DomainError
from .errors import NilcomplexError
from .errors import ParseError
from .errors import UnsupportedCaseError
from .errors import exit_code
from .exterior import Scalar
from .hermitian import HermitianParams
from .hermitian import balanced_exists
from .hermitian import metric_flags
from .hermitian import sg_exists
from .liealg import RealStructureEquations
from .liealg import StructureEquations
from .parsing import parse_input
from .render import render_equivalence
from .render import render_hodge
from .render import render_report
from .render import render_semicontinuity
from .render import render_sweep
from .render import report_csv
from .render import semicontinuity_record
from .render import sweep_csv
from .render import sweep_record
from .spectral import behaviour
from .spectral import einfty_check
from .spectral import sequence_of

logger = logging.getLogger(__name__)

FAMILIES = ("two-step", "three-step", "non-nilpotent", "general")
FORMATS = ("text", "json", "csv")
PAGES = (1, 2, 3, 4)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def load_schema() -> Dict[str, Any]:
    """The JSON schema of `frolicher`, `cohomology` and `metrics` reports."""
    text = resources.files("nilcomplex").joinpath("schema/report.schema.json").read_text("utf-8")
    return json.loads(text)


# Argument values


def _scalar(text: str) -> Scalar:
    return Scalar.parse(text)


def _rational(text: str) -> Fraction:
    value = Scalar.parse(text)
    if not value.is_real:
        raise ParseError(f"expecting a rational number, got {text!r}", text, 0)
    return value.re


def parse_grid(text: str) -> List[Fraction]:
    """"lo:hi:step" as exact rationals lo, lo + step, ... up to hi."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError("grid must be lo:hi:step", text, 0)
    lo, hi, step = (_rational(part) for part in parts)
    if step <= 0:
        raise ParseError("grid step must be positive", text, text.rindex(":") + 1)
    values = []
    value = lo
    while value <= hi:
        values.append(value)
        value += step
    return values


def parse_values(text: str) -> List[Scalar]:
    return [_scalar(part) for part in text.split(",") if part.strip()]


def parse_triple(text: str) -> TwoStepTriple:
    """"rho,lambda,D" as a two-step triple."""
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError("triple must be rho,lambda,D", text, 0)
    rho = _rational(parts[0])
    if rho.denominator != 1:
        raise ParseError("rho must be 0 or 1", text, 0)
    return TwoStepTriple(int(rho), _rational(parts[1]), _scalar(parts[2]))


def parse_metric(text: str) -> HermitianParams:
    """"r2,s2,t2[,u,v,z]" as Hermitian coefficients."""
    parts = text.split(",")
    if len(parts) not in (3, 6):
        raise ParseError("metric must be r2,s2,t2 or r2,s2,t2,u,v,z", text, 0)
    reals = [_rational(part) for part in parts[:3]]
    complexes = [_scalar(part) for part in parts[3:]]
    return HermitianParams(*reals, *complexes)


def params_from_args(args) -> Params:
    family = args.family
    rho = args.rho
    if family == "two-step":
        return TwoStepTriple(rho, _rational(args.lam), _scalar(args.D))
    if family == "three-step":
        return ThreeStepTriple(rho, _scalar(args.B), _rational(args.c))
    if family == "non-nilpotent":
        return NonNilpotentParams(args.epsilon, args.sign)
    return GeneralNilpotentParams(
        args.epsilon, rho, _scalar(args.A), _scalar(args.B), _scalar(args.C), _scalar(args.D)
    )


class Target:
    """Equations of the command's input, with family parameters when given."""

    def __init__(self, args):
        self.params: Optional[Params] = None
        self.real: Optional[RealStructureEquations] = None
        self.eqs: Optional[StructureEquations] = None
        if args.input:
            parsed = parse_input(Path(args.input).read_text(encoding="utf-8"))
            if isinstance(parsed, RealStructureEquations):
                self.real = parsed
            else:
                self.eqs = parsed
        elif args.family:
            self.params = params_from_args(args)
            self.eqs = equations_of(self.params)
        else:
            raise DomainError("Give either --family or --input.")

    def complex_equations(self) -> StructureEquations:
        if self.eqs is None:
            raise DomainError("This command needs complex structure equations.")
        return self.eqs


# Reports


def _optional(check: Callable, target) -> Optional[Any]:
    try:
        return check(target)
    except UnsupportedCaseError as error:
        logger.info("%s", error)
        return None


def metrics_record(
    eqs: StructureEquations, params: Optional[Params], metric: Optional[HermitianParams]
) -> Dict[str, Any]:
    if params is not None:
        sg = _optional(sg_exists, params)
        balanced = _optional(balanced_exists, params)
    else:
        sg = _optional(sg_exists, eqs)
        balanced = None
    witness = None
    if balanced:
        witness = balanced.witness
    elif sg:
        witness = sg.witness
    record: Dict[str, Any] = {
        "sg_exists": None if sg is None else bool(sg),
        "balanced_exists": None if balanced is None else bool(balanced),
        "witness": None if witness is None else str(witness),
    }
    if metric is not None:
        flags = metric_flags(eqs, metric)
        record.update(balanced=flags.balanced, sg=flags.sg, gauduchon=flags.gauduchon)
    return record


def build_report(
    eqs: StructureEquations,
    params: Optional[Params] = None,
    metric: Optional[HermitianParams] = None,
    with_metrics: bool = False,
) -> Dict[str, Any]:
    """The machine-readable report shared by cohomology, frolicher and metrics."""
    algebra_class = classify(params) if params is not None else identify(eqs)
    table = hodge_table(eqs)
    check = einfty_check(eqs)
    if not check:
        raise ConsistencyAlarm(f"E_inf totals differ from Betti numbers in degrees {check.mismatches}.")
    sequence = sequence_of(eqs)
    signature = behaviour(eqs)
    return {
        "algebra_class": str(algebra_class),
        "triple": None if params is None else str(params),
        "hodge": [list(row) for row in table.h],
        "betti": list(table.betti),
        "frolicher": {f"E{r}": [list(row) for row in sequence.dims(r)] for r in PAGES},
        "behaviour": signature.text,
        "degeneration_step": signature.degeneration_step,
        "metrics": metrics_record(eqs, params, metric) if with_metrics else None,
    }


def _emit_report(report: Dict[str, Any], fmt: str, text: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        return report_csv(report)
    return text


# Commands


def cmd_classify(args) -> str:
    target = Target(args)
    if target.params is not None:
        canonical = _optional(canonical_form, target.params)
        algebra_class = classify(target.params)
    else:
        canonical = None
        algebra_class = identify(target.real if target.real is not None else target.eqs)
    record = {
        "algebra_class": str(algebra_class),
        "triple": None if target.params is None else str(target.params),
        "canonical": None if canonical is None else str(canonical.params),
    }
    if args.format == "json":
        return json.dumps(record, indent=2, ensure_ascii=False) + "\n"
    if args.format == "csv":
        return "algebra_class,triple,canonical\n" + ",".join(
            "" if v is None else f'"{v}"' for v in record.values()
        ) + "\n"
    text = f"{algebra_class}\n"
    if canonical is not None:
        text += f"canonical: {canonical.params}\n"
    return text


def cmd_cohomology(args) -> str:
    target = Target(args)
    report = build_report(target.complex_equations(), target.params)
    return _emit_report(report, args.format, render_hodge(report))


def cmd_frolicher(args) -> str:
    target = Target(args)
    report = build_report(target.complex_equations(), target.params)
    return _emit_report(report, args.format, render_report(report))


def cmd_metrics(args) -> str:
    target = Target(args)
    metric = parse_metric(args.metric) if args.metric else None
    report = build_report(target.complex_equations(), target.params, metric, with_metrics=True)
    return _emit_report(report, args.format, render_report(report))


def cmd_equiv(args) -> str:
    first, second = parse_triple(args.first), parse_triple(args.second)
    equivalent = equivalent_2step(first, second)
    witness = automorphism_witness(first, second) if equivalent else None
    record = {"equivalent": equivalent, "witness": None if witness is None else str(witness)}
    if args.format == "json":
        return json.dumps(record, indent=2, ensure_ascii=False) + "\n"
    if args.format == "csv":
        return f"equivalent,witness\n{equivalent},{'' if witness is None else witness}\n"
    return render_equivalence(equivalent, record["witness"])


def _family(args) -> Family:
    lam = _rational(args.lam) if args.lam is not None else None
    return Family(FamilyTag(args.tag), lam)


def cmd_sweep(args) -> str:
    family = _family(args)
    if args.grid:
        params: Sequence[Any] = parse_grid(args.grid)
    elif args.values:
        params = parse_values(args.values)
    else:
        raise DomainError("Give --grid or --values.")
    rows = sweep(family, params, workers=args.workers)
    if args.format == "json":
        return json.dumps([sweep_record(row) for row in rows], indent=2, ensure_ascii=False) + "\n"
    if args.format == "csv":
        return sweep_csv(rows)
    return render_sweep(rows)


def cmd_semicont(args) -> str:
    family = _family(args)
    report = semicontinuity_report(family, _scalar(args.center), parse_values(args.nearby))
    if args.format == "json":
        return json.dumps(semicontinuity_record(report), indent=2, ensure_ascii=False) + "\n"
    return render_semicontinuity(report)


# Parser


def _add_structure_options(parser):
    group = parser.add_argument_group("structure")
    group.add_argument("--family", choices=FAMILIES)
    group.add_argument("--input", help="file in Salamon or complex notation")
    group.add_argument("--rho", type=int, default=0)
    group.add_argument("--lambda", dest="lam", default="0")
    group.add_argument("--epsilon", type=int, default=0)
    group.add_argument("--sign", type=int, default=1)
    for name in ("A", "B", "C", "D"):
        group.add_argument(f"--{name}", default="0")
    group.add_argument("--c", default="0")


def _add_family_options(parser):
    parser.add_argument("tag", choices=[tag.value for tag in FamilyTag])
    parser.add_argument("--lambda", dest="lam", default=None, help="fixed lambda of h5-drift")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="nilcomplex", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (
        ("classify", cmd_classify, "algebra class and canonical form"),
        ("cohomology", cmd_cohomology, "Dolbeault cohomology (Hodge numbers)"),
        ("frolicher", cmd_frolicher, "Frölicher spectral sequence"),
        ("metrics", cmd_metrics, "balanced, sG and Gauduchon metrics"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        _add_structure_options(sub)
        sub.set_defaults(handler=handler)
        if name == "metrics":
            sub.add_argument("--metric", help="r2,s2,t2[,u,v,z]")

    sub = commands.add_parser("equiv", parents=[common], help="equivalence of two-step triples")
    sub.add_argument("--first", required=True, help="rho,lambda,D")
    sub.add_argument("--second", required=True, help="rho,lambda,D")
    sub.set_defaults(handler=cmd_equiv)

    sub = commands.add_parser("sweep", parents=[common], help="sweep a deformation family")
    _add_family_options(sub)
    sub.add_argument("--grid", help="lo:hi:step")
    sub.add_argument("--values", help="comma-separated parameters")
    sub.add_argument("--workers", type=int, default=4)
    sub.set_defaults(handler=cmd_sweep)

    sub = commands.add_parser("semicont", parents=[common], help="jumps of dim E_r at a parameter")
    _add_family_options(sub)
    sub.add_argument("--center", required=True)
    sub.add_argument("--nearby", required=True, help="comma-separated parameters")
    sub.set_defaults(handler=cmd_semicont)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    _configure_logging(args.verbose)

    try:
        output = args.handler(args)
    except NilcomplexError as error:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"nilcomplex: {type(error).__name__}: {error}", file=sys.stderr)
        return exit_code(error)
    except OSError as error:
        print(f"nilcomplex: {error}", file=sys.stderr)
        return 1

    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
