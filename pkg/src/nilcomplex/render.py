"""Plain-text rendering of dimension tables, reports and sweeps."""
import csv
import io
import textwrap
from string import Template
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from .deform import SemicontinuityReport
from .deform import SweepRow
from .spectral import Dims

REPORT_TEMPLATE = Template(
    """\
algebra: $algebra_class
triple: $triple
behaviour: $behaviour (degenerates at E$degeneration_step)
betti: $betti
"""
)

SWEEP_COLUMNS = (
    "param",
    "triple",
    "algebra_class",
    "behaviour",
    "degeneration_step",
    "sg_exists",
    "balanced_exists",
    "error",
)


def dims_table(dims: Dims, title: str) -> str:
    """Grid with p down and q across."""
    width = max(3, max(len(str(v)) for row in dims for v in row))
    header = "     " + " ".join(f"q={q}".rjust(width) for q in range(len(dims[0])))
    lines = [title, header]
    for p, row in enumerate(dims):
        lines.append(f"p={p}  " + " ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines)


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "unknown"
    return "yes" if value else "no"


def render_report(report: Dict[str, Any]) -> str:
    """Text form of the JSON report built by the cli module."""
    parts = [
        REPORT_TEMPLATE.substitute(
            algebra_class=report["algebra_class"],
            triple=report.get("triple") or "-",
            behaviour=report["behaviour"],
            degeneration_step=report["degeneration_step"],
            betti=" ".join(str(b) for b in report["betti"]),
        ).rstrip()
    ]
    parts.append(dims_table(report["hodge"], "Hodge numbers h^{p,q}"))
    for page, dims in report["frolicher"].items():
        parts.append(dims_table(dims, f"{page}^{{p,q}}"))
    metrics = report.get("metrics")
    if metrics:
        lines = [
            f"sG metrics: {_flag(metrics['sg_exists'])}",
            f"balanced metrics: {_flag(metrics['balanced_exists'])}",
        ]
        if metrics.get("witness"):
            lines.append(f"witness: {metrics['witness']}")
        for name in ("balanced", "sg", "gauduchon"):
            if name in metrics:
                lines.append(f"given metric {name}: {_flag(metrics[name])}")
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + "\n"


def sweep_record(row: SweepRow) -> Dict[str, Any]:
    return {
        "param": str(row.param),
        "triple": None if row.triple is None else str(row.triple),
        "algebra_class": None if row.algebra_class is None else str(row.algebra_class),
        "behaviour": row.behaviour or None,
        "degeneration_step": row.degeneration_step or None,
        "sg_exists": row.sg_exists,
        "balanced_exists": row.balanced_exists,
        "frolicher": {f"E{r}": [list(p) for p in dims] for r, dims in enumerate(row.dims, start=1)},
        "error": None if row.error is None else f"{row.error.error.__name__}: {row.error.value}",
    }


def render_sweep(rows: Sequence[SweepRow]) -> str:
    records = [sweep_record(row) for row in rows]
    cells = [[str(record[c]) if record[c] is not None else "-" for c in SWEEP_COLUMNS] for record in records]
    widths = [
        max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(SWEEP_COLUMNS)
    ]
    lines = ["  ".join(c.ljust(w) for c, w in zip(SWEEP_COLUMNS, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    """CSV with one column per E_r^{p,q} cell after the summary columns."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    cells: List[str] = []
    if any(row.dims for row in rows):
        sample = next(row for row in rows if row.dims)
        n = len(sample.dims[0]) - 1
        cells = [
            f"E{r}_{p}{q}"
            for r in range(1, len(sample.dims) + 1)
            for p in range(n + 1)
            for q in range(n + 1)
        ]
    writer.writerow(list(SWEEP_COLUMNS) + cells)
    for row in rows:
        record = sweep_record(row)
        values = ["" if record[c] is None else str(record[c]) for c in SWEEP_COLUMNS]
        flat = [str(v) for dims in row.dims for line in dims for v in line]
        writer.writerow(values + (flat or [""] * len(cells)))
    return buffer.getvalue()


def semicontinuity_record(report: SemicontinuityReport) -> Dict[str, Any]:
    return {
        "family": str(report.family),
        "center": str(report.center),
        "nearby": [str(v) for v in report.nearby],
        "center_step": report.center_step,
        "nearby_steps": list(report.nearby_steps),
        "step_jump": report.step_jump,
        "jumps": [
            {
                "r": j.r,
                "p": j.p,
                "q": j.q,
                "center": j.center,
                "nearby": list(j.nearby),
                "kind": j.kind,
            }
            for j in report.jumps
        ],
    }


def render_semicontinuity(report: SemicontinuityReport) -> str:
    nearby = ", ".join(str(v) for v in report.nearby)
    lines = [
        f"{report.family}: center {report.center} against {nearby}",
        f"degeneration step {report.center_step} against "
        + ", ".join(str(s) for s in report.nearby_steps),
    ]
    if report.step_jump:
        lines.append(f"degeneration step jumps ({report.step_jump})")
    if not report.jumps:
        lines.append("no jumping cells")
    for j in report.jumps:
        values = ", ".join(str(v) for v in j.nearby)
        lines.append(f"E{j.r}^{{{j.p},{j.q}}}: {j.center} vs {values} ({j.kind}-jump)")
    return "\n".join(lines) + "\n"


def render_equivalence(equivalent: bool, witness: Optional[str]) -> str:
    text = "equivalent" if equivalent else "not equivalent"
    if witness:
        text += "\n" + textwrap.indent(f"witness: {witness}", "  ")
    return text + "\n"


def render_hodge(report: Dict[str, Any]) -> str:
    header = f"algebra: {report['algebra_class']}\ntriple: {report.get('triple') or '-'}"
    return "\n\n".join([header, dims_table(report["hodge"], "Hodge numbers h^{p,q}")]) + "\n"


def report_csv(report: Dict[str, Any]) -> str:
    """One (table, p, q, value) line per dimension of a report."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["table", "p", "q", "value"])
    tables = [("hodge", report["hodge"])] + list(report["frolicher"].items())
    for name, dims in tables:
        for p, row in enumerate(dims):
            for q, value in enumerate(row):
                writer.writerow([name, p, q, value])
    return buffer.getvalue()
