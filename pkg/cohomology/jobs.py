"""
Batch jobs: one command applied to a (variety, group) pair.

``run`` never raises for engine errors; it returns the exit status and the
text to print. Usage problems give status 1, failed mathematical checks 2.
"""

import json
import logging
from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from . import charts, gkm, liealg, linalg, zeroscheme
from .exceptions import ContextMismatch, EqcohError, IdentityViolation, ParseError, UnsupportedFamily
from .hilbert import format_t_polynomial
from .parsing import parse_chart, parse_group, parse_values
from .polyalg import format_rational
from .records import GraphRecord, PresentationRecord

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
MATH_ERROR = 2

Command = Literal["present", "hilbert", "fiber", "components", "kostant-conj", "unif-conj", "gkm"]

_NEEDS_VARIETY = {"present", "hilbert", "fiber", "components", "gkm"}
_NEEDS_VALUES = {"fiber", "kostant-conj", "unif-conj"}


class JobSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    variety: str | None = None
    group: str | None = None
    at: str | None = None
    format: Literal["text", "json"] = "text"
    paper_sign: bool = False
    strategy: Literal["auto", "triangular", "groebner"] = "auto"
    coordinate: str | None = None

    @model_validator(mode="after")
    def required_options(self):
        if self.group is None:
            raise ValueError(f"{self.command} needs --group")
        if self.command in _NEEDS_VARIETY and self.variety is None:
            raise ValueError(f"{self.command} needs --variety")
        if self.command in _NEEDS_VALUES and self.at is None:
            raise ValueError(f"{self.command} needs --at")
        return self


@dataclass(frozen=True)
class JobResult:
    status: int
    output: str
    error: str = ""


@dataclass(frozen=True)
class _Resolved:
    chart: object
    family: object
    values: list


def resolve(job):
    """Parse every grammar string and reject mismatched pairs before computing."""
    family = parse_group(job.group)
    chart = parse_chart(job.variety) if job.variety is not None else None
    values = parse_values(job.at) if job.at is not None else None
    if chart is not None and chart.n != family.n:
        raise ContextMismatch(f"{chart} needs sl_{chart.n}, {family} acts through sl_{family.n}")
    if job.command in ("kostant-conj", "unif-conj", "components", "gkm") and not family.is_torus:
        raise UnsupportedFamily(f"{job.command} needs an e + t family, not {family}")
    if values is not None and len(values) != len(family.params):
        raise ParseError(f"expected {len(family.params)} values for {list(family.params)}", job.at, 0)
    if job.coordinate is not None and chart is not None and job.coordinate not in chart.cell_coords:
        raise ParseError(f"unknown coordinate {job.coordinate!r}", job.coordinate, 0)
    return _Resolved(chart, family, values)


def run(job):
    try:
        r = resolve(job)
    except (ParseError, ContextMismatch, UnsupportedFamily) as exc:
        return JobResult(USAGE_ERROR, "", str(exc))
    try:
        output = _COMMANDS[job.command](job, r)
    except EqcohError as exc:
        logger.info("%s %s %s failed: %s", job.command, job.variety, job.group, exc)
        return JobResult(MATH_ERROR, "", str(exc))
    return JobResult(0, output)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _fix(job):
    return zeroscheme.sign_flip if job.paper_sign else (lambda p: p)


def _ideal(r):
    return zeroscheme.zero_scheme_ideal(r.chart, r.family)


def _checked_presentation(ideal, strategy):
    zeroscheme.homogeneity_report(ideal)
    pres = zeroscheme.present(ideal, strategy)
    if pres.rank is None:
        raise IdentityViolation("free over the parameter ring", "a Poincare polynomial", str(pres.hilbert))
    return pres


def _present(job, r):
    ideal = _ideal(r)
    pres = _checked_presentation(ideal, job.strategy)
    if job.format == "json":
        return PresentationRecord.build(ideal, pres, paper_sign=job.paper_sign).to_json()
    fix = _fix(job)
    lines = [
        f"variety: {r.chart}",
        f"family: {r.family}",
        f"kept: {', '.join(pres.kept)}",
        "relations:",
        *(f"  {fix(rel)}" for rel in pres.relations),
        f"rank: {pres.rank}",
        f"hilbert: {pres.hilbert}",
    ]
    return "\n".join(lines)


def _hilbert(job, r):
    ideal = _ideal(r)
    degrees = zeroscheme.homogeneity_report(ideal)
    report = zeroscheme.poincare_check(ideal)
    if not report.ok:
        raise IdentityViolation("Poincare identity", str(report.expected), str(report.hilbert))
    pres = zeroscheme.present(ideal, job.strategy)
    if job.format == "json":
        return json.dumps(
            {
                "variety": str(r.chart),
                "family": str(r.family),
                "degrees": degrees,
                "hilbert": str(pres.hilbert),
                "hilbert_numerator": list(pres.poincare),
                "rank": pres.rank,
            },
            indent=2,
        )
    return "\n".join([
        f"degrees: {', '.join(map(str, degrees))}",
        f"hilbert: {pres.hilbert}",
        f"poincare: {format_t_polynomial(list(pres.poincare))}",
        f"rank: {pres.rank}",
    ])


def _fiber(job, r):
    dim = zeroscheme.fiber_dimension(_ideal(r), r.values)
    if job.format == "json":
        return json.dumps({"variety": str(r.chart), "family": str(r.family), "at": job.at, "dim": dim}, indent=2)
    return f"dim = {dim}"


def _components(job, r):
    ideal = _ideal(r)
    pres = _checked_presentation(ideal, zeroscheme.TRIANGULAR)
    comps = zeroscheme.components_over_regular(ideal, pres)
    if job.format == "json":
        return PresentationRecord.build(ideal, pres, comps, paper_sign=job.paper_sign).to_json()
    fix = _fix(job)
    return "\n".join(
        f"{c.label}: " + ", ".join(f"{name} = {fix(v)}" for name, v in c.values.items()) for c in comps
    )


def _torus(r):
    return r.family.torus_at(r.values)


def _kostant_conj(job, r):
    conj = liealg.solve_kostant_conjugator(_torus(r))
    section = liealg.kostant_section(r.family.n)
    if not section.contains(conj.chi):
        raise IdentityViolation("Ad_A(e + w) lies in S", "a point of S", linalg.format_matrix(conj.chi))
    coords = {p: format_rational(c) for p, c in zip(section.params, conj.coords)}
    if job.format == "json":
        return json.dumps(
            {"A": linalg.format_matrix(conj.A), "chi": linalg.format_matrix(conj.chi), "coordinates": coords},
            indent=2,
        )
    lines = [f"A = {linalg.format_matrix(conj.A)}", f"chi = {linalg.format_matrix(conj.chi)}"]
    lines += [f"{p} = {c}" for p, c in coords.items()]
    return "\n".join(lines)


def _unif_conj(job, r):
    w = _torus(r)
    M = liealg.solve_unipotent_conjugator(w)
    e = liealg.principal_triple(w.n).e.matrix
    lhs = M @ w.matrix() @ linalg.inverse(M)
    if not linalg.equal(lhs, e + w.matrix()):
        raise IdentityViolation("Ad_M(w) = e + w", linalg.format_matrix(e + w.matrix()), linalg.format_matrix(lhs))
    if job.format == "json":
        return json.dumps({"M": linalg.format_matrix(M)}, indent=2)
    return f"M = {linalg.format_matrix(M)}"


def _gkm(job, r):
    ideal = _ideal(r)
    comps = zeroscheme.components_over_regular(ideal)
    coordinate = job.coordinate or ideal.cells[0]
    klass = gkm.PiecewiseClass(tuple(c.values[coordinate] for c in comps))
    if r.chart.kind == charts.PROJECTIVE and r.family.kind == "borel":
        graph = gkm.moment_graph_pn(r.chart.n - 1)
    else:
        graph = gkm.collision_graph(comps, ideal.ctx.restrict(ideal.params))
    check = gkm.is_gkm_class(graph, klass)
    if not check.ok:
        raise IdentityViolation("edge congruences", "all edges", f"failing {list(check.failing)}")
    if job.format == "json":
        return GraphRecord.build(graph, paper_sign=job.paper_sign).to_json()
    fix = _fix(job)
    lines = [f"vertices: {', '.join(graph.vertices)}", "edges:"]
    lines += [f"  {graph.vertices[e.i]} - {graph.vertices[e.j]}: {fix(e.form).primitive()}" for e in graph.edges]
    lines.append(f"{coordinate}: " + ", ".join(str(fix(v)) for v in klass.values))
    lines.append("congruences: ok")
    return "\n".join(lines)


_COMMANDS = {
    "present": _present,
    "hilbert": _hilbert,
    "fiber": _fiber,
    "components": _components,
    "kostant-conj": _kostant_conj,
    "unif-conj": _unif_conj,
    "gkm": _gkm,
}
