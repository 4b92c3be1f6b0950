"""
Golden acceptance suite.

Items live in ``settings.EQCOH_GOLDEN_FILE``. Each names a check and its
parameters; ``sign: paper`` means the expected polynomials are written in
the opposite sign convention and are flipped before comparing. Items run on
a thread pool of ``EQCOH_THREADS`` workers and are reported in file order.
"""

import logging
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Literal

import numpy as np
import yaml
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from . import charts, families, gkm, groebner, liealg, linalg, zeroscheme
from .exceptions import EqcohError, IdentityViolation
from .hilbert import format_t_polynomial
from .parsing import parse_chart, parse_group
from .polyalg import RationalFunction

logger = logging.getLogger(__name__)


class GoldenItem(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    check: str
    description: str = ""
    sign: Literal["engine", "paper"] = "engine"
    params: dict = Field(default_factory=dict)


class GoldenResult(BaseModel):
    id: str
    ok: bool
    detail: str = ""


def load_items(path=None):
    path = path or settings.EQCOH_GOLDEN_FILE
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    return [GoldenItem(**raw) for raw in data["items"]]


# ─── helpers ──────────────────────────────────────────────────────────────────

def _ideal(variety, group):
    return zeroscheme.zero_scheme_ideal(parse_chart(variety), parse_group(group))


def _expected(texts, ctx, sign):
    polys = [ctx.parse(t) for t in texts]
    return [zeroscheme.sign_flip(p) for p in polys] if sign == "paper" else polys


def _rng():
    return np.random.default_rng(settings.EQCOH_RANDOM_SEED)


def _random_rational(rng):
    return Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 5)))


def _random_torus(rng, n, regular=False):
    while True:
        w = liealg.TorusElement(tuple(_random_rational(rng) for _ in range(n - 1)))
        if not regular or w.is_regular():
            return w


def _same_ideal(got, expected, what):
    if not groebner.ideals_equal(list(got), list(expected)):
        raise IdentityViolation(
            what,
            "; ".join(str(p) for p in expected),
            "; ".join(str(p) for p in got),
        )


def _check_hilbert(pres, numerator=None, rank=None, series=None):
    if numerator is not None and list(pres.poincare) != list(numerator):
        raise IdentityViolation("Hilbert numerator", format_t_polynomial(numerator), format_t_polynomial(list(pres.poincare)))
    if rank is not None and pres.rank != rank:
        raise IdentityViolation("rank", str(rank), str(pres.rank))
    if series is not None and str(pres.hilbert) != series:
        raise IdentityViolation("Hilbert series", series, str(pres.hilbert))


def _pn_product(n, kind, ctx):
    x = ctx.var("x1")
    if kind == "psl2-borel":
        v = ctx.var("v")
        factors = [x + 2 * k * v for k in range(n + 1)]
    elif kind == "borel":
        factors = [x] + [x - ctx.var(f"v{i}") for i in range(1, n + 1)]
    else:
        t = ctx.var("t")
        factors = [x * x - k * k * t for k in range(n, 0, -2)]
        if n % 2 == 0:
            factors.append(x)
    out = ctx.one()
    for f in factors:
        out = out * f
    return out


# ─── checks ───────────────────────────────────────────────────────────────────

def check_pn_products(item):
    """P^n relations against the closed product formulas."""
    kind = item.params["family"]
    for n in item.params["sizes"]:
        group = f"{kind}:{n + 1}" if kind.startswith("psl2") else f"{kind}:sl{n + 1}"
        ideal = _ideal(f"pn:{n}", group)
        pres = zeroscheme.present(ideal)
        expected = [_pn_product(n, kind, pres.ctx)]
        _same_ideal(pres.relations, expected, f"P^{n} / {group} relation")
        if kind.endswith("kostant") and pres.rank != n + 1:
            raise IdentityViolation(f"rank of P^{n} / {group}", str(n + 1), str(pres.rank))
    return f"sizes {item.params['sizes']}"


def check_relations(item):
    p = item.params
    ideal = _ideal(p["variety"], p["group"])
    pres = zeroscheme.present(ideal, p.get("strategy", "auto"))
    if "kept" in p and list(pres.kept) != p["kept"]:
        raise IdentityViolation("kept variables", str(p["kept"]), str(list(pres.kept)))
    expected = _expected(p["relations"], pres.ctx, item.sign)
    if p.get("exact"):
        got = [str(r) for r in pres.relations]
        want = [str(r.primitive()) for r in expected]
        if got != want:
            raise IdentityViolation("relations", "; ".join(want), "; ".join(got))
    else:
        _same_ideal(pres.relations, expected, f"{p['variety']} / {p['group']} relations")
    _check_hilbert(pres, p.get("hilbert_numerator"), p.get("rank"), p.get("hilbert"))
    for values in p.get("fibers", []):
        dim = zeroscheme.fiber_dimension(ideal, values["at"])
        if dim != values["dim"]:
            raise IdentityViolation(f"fiber at {values['at']}", str(values["dim"]), str(dim))
    return "; ".join(str(r) for r in pres.relations)


def check_components(item):
    p = item.params
    ideal = _ideal(p["variety"], p["group"])
    comps = zeroscheme.components_over_regular(ideal)
    ctx = ideal.ctx.restrict(ideal.params)
    names = p["coordinates"]
    got = {tuple(str(c.values[name]) for name in names) for c in comps}
    want = {
        tuple(str(x) for x in _expected([row[name] for name in names], ctx, item.sign))
        for row in p["expected"]
    }
    if got != want:
        raise IdentityViolation("component families", str(sorted(want)), str(sorted(got)))
    return f"{len(comps)} components"


def check_bott_samelson(item):
    """x_j^2 + sum_{k<j} b_jk x_k x_j + alpha_{i_j}(w) x_j for each word."""
    for entry in item.params["words"]:
        word, n = entry["word"], entry["n"]
        chart = charts.ChartDescriptor.bott_samelson(word, n)
        ideal = zeroscheme.borel_ideal(chart, families.borel_torus(n))
        pres = zeroscheme.present(ideal)
        ctx = pres.ctx
        roots = liealg.RootData(n)
        w = families.borel_torus(n).torus(ctx)
        x = [ctx.var(f"x{j}") for j in range(1, len(word) + 1)]
        expected = []
        for j, ij in enumerate(word):
            rel = x[j] * x[j] + roots.simple_root(ij, w) * x[j]
            for k in range(j):
                rel = rel + roots.cartan(ij, word[k]) * x[k] * x[j]
            expected.append(rel)
        _same_ideal(pres.relations, expected, f"{chart} relations")
        numerator = [0] * (2 * len(word) + 1)
        for k in range(len(word) + 1):
            numerator[2 * k] = math.comb(len(word), k)
        _check_hilbert(pres, numerator, 2 ** len(word))
    return f"{len(item.params['words'])} words"


def check_homogeneity(item):
    for variety, group in item.params["pairs"]:
        ideal = _ideal(variety, group)
        zeroscheme.homogeneity_report(ideal)
        dim = zeroscheme.regular_sequence_check(ideal)
        chi = charts.euler_characteristic(ideal.chart)
        if dim != chi:
            raise IdentityViolation(f"{variety} / {group} zero fiber", str(chi), str(dim))
    return f"{len(item.params['pairs'])} pairs"


def check_flatness(item):
    rng = _rng()
    samples = settings.EQCOH_SAMPLES["flatness"]
    for variety, group in item.params["pairs"]:
        ideal = _ideal(variety, group)
        chi = charts.euler_characteristic(ideal.chart)
        points = [[0] * len(ideal.params)]
        points += [[_random_rational(rng) for _ in ideal.params] for _ in range(samples)]
        for values in points:
            dim = zeroscheme.fiber_dimension(ideal, values)
            if dim != chi:
                raise IdentityViolation(f"{variety} / {group} fiber at {values}", str(chi), str(dim))
    return f"{len(item.params['pairs'])} pairs, {samples} samples"


def check_kostant_conjugator(item):
    rng = _rng()
    samples = settings.EQCOH_SAMPLES["kostant_conjugator"]
    sizes = item.params["sizes"]
    for k in range(samples):
        n = sizes[k % len(sizes)]
        w = _random_torus(rng, n)
        conj = liealg.solve_kostant_conjugator(w)
        e = liealg.principal_triple(n).e.matrix
        lhs = conj.A @ (e + w.matrix()) @ linalg.inverse(conj.A)
        if not linalg.equal(lhs, conj.chi) or not liealg.kostant_section(n).contains(lhs):
            raise IdentityViolation("Ad_A(e + w) in S", linalg.format_matrix(conj.chi), linalg.format_matrix(lhs))
        for image in liealg.weyl_orbit(w):
            if liealg.solve_kostant_conjugator(image).coords != conj.coords:
                raise IdentityViolation("Weyl invariance of chi", str(conj.coords), str(image.coords))
    (c2,) = liealg.chi_symbolic(2)
    ctx = c2.ctx
    # w = diag(a, -a) with a = -v1/2
    if c2 != ctx.var("v1") * ctx.var("v1") / 4:
        raise IdentityViolation("chi(diag(a, -a)) = e + a^2 f", "1/4*v1^2", str(c2))
    return f"{samples} samples"


def check_unipotent_conjugator(item):
    M = liealg.unipotent_conjugator_symbolic(3)
    ctx = M[0, 1].numerator.ctx
    for entry in item.params["closed_forms"]:
        i, j = entry["entry"]
        want = RationalFunction(ctx.parse(entry["numerator"]), ctx.parse(entry["denominator"]))
        if not M[i, j] == want:
            raise IdentityViolation(f"M_w[{i}][{j}]", str(want), str(M[i, j]))
    rng = _rng()
    samples = settings.EQCOH_SAMPLES["unipotent_conjugator"]
    sizes = item.params["sizes"]
    for k in range(samples):
        n = sizes[k % len(sizes)]
        w = _random_torus(rng, n, regular=True)
        Mw = liealg.solve_unipotent_conjugator(w)
        e = liealg.principal_triple(n).e.matrix
        lhs = Mw @ w.matrix() @ linalg.inverse(Mw)
        if not linalg.equal(lhs, e + w.matrix()):
            raise IdentityViolation("Ad_M(w) = e + w", linalg.format_matrix(e + w.matrix()), linalg.format_matrix(lhs))
    return f"{samples} samples"


def check_gkm(item):
    p = item.params
    for entry in p["localizations"]:
        ideal = _ideal(entry["variety"], entry["group"])
        klass = gkm.localize_presentation(ideal, entry["coordinate"])
        chart = ideal.chart
        if chart.kind == charts.PROJECTIVE and ideal.family.kind == families.BOREL:
            graph = gkm.moment_graph_pn(chart.n - 1)
        else:
            comps = zeroscheme.components_over_regular(ideal)
            graph = gkm.collision_graph(comps, ideal.ctx.restrict(ideal.params))
        check = gkm.is_gkm_class(graph, klass)
        if not check.ok:
            raise IdentityViolation(f"{chart} edge congruences", "all edges", str(list(check.failing)))
    for n in p["dimension_sizes"]:
        graph = gkm.moment_graph_pn(n)
        pres = zeroscheme.present(_ideal(f"pn:{n}", f"borel:sl{n + 1}"))
        coeffs = pres.hilbert.expand(2 * p["max_degree"])
        for d in range(p["max_degree"] + 1):
            dim = gkm.piecewise_dimension(graph, d)
            if dim != coeffs[2 * d]:
                raise IdentityViolation(f"P^{n} piecewise dimension in degree {d}", str(coeffs[2 * d]), str(dim))
    return f"{len(p['localizations'])} localizations"


def check_restriction(item):
    for n in item.params["sizes"]:
        zeroscheme.restriction_pn(n)
    return f"P^{item.params['sizes']}"


def check_quotient_map(item):
    total = 0
    for entry in item.params["charts"]:
        chart = parse_chart(entry["variety"])
        total += zeroscheme.quotient_map_check(chart, entry["at"])
    return f"{total} points"


def check_shift(item):
    for n in item.params["sizes"]:
        zeroscheme.kostant_borel_shift_check(n)
    return f"sizes {item.params['sizes']}"


CHECKS = {
    "pn_products": check_pn_products,
    "relations": check_relations,
    "components": check_components,
    "bott_samelson": check_bott_samelson,
    "homogeneity": check_homogeneity,
    "flatness": check_flatness,
    "kostant_conjugator": check_kostant_conjugator,
    "unipotent_conjugator": check_unipotent_conjugator,
    "gkm": check_gkm,
    "restriction": check_restriction,
    "quotient_map": check_quotient_map,
    "kostant_borel_shift": check_shift,
}


# ─── runner ───────────────────────────────────────────────────────────────────

def run_item(item):
    start = time.perf_counter()
    try:
        detail = CHECKS[item.check](item)
        ok = True
    except EqcohError as exc:
        ok, detail = False, str(exc)
    except Exception as exc:
        logger.exception("golden item %s crashed", item.id)
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    logger.info("%s %s in %.2fs: %s", item.id, "passed" if ok else "FAILED", time.perf_counter() - start, detail)
    return GoldenResult(id=item.id, ok=ok, detail=detail)


def golden_suite(only=None, path=None, threads=None):
    """Run the golden items; results come back in file order."""
    items = load_items(path)
    if only:
        unknown = set(only) - {i.id for i in items}
        if unknown:
            raise KeyError(f"unknown golden items {sorted(unknown)}")
        items = [i for i in items if i.id in only]
    for item in items:
        if item.check not in CHECKS:
            raise KeyError(f"golden item {item.id} names unknown check {item.check!r}")
    threads = threads or settings.EQCOH_THREADS
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(tqdm(
            pool.map(run_item, items),
            total=len(items),
            desc="golden",
            file=sys.stderr,
            disable=not sys.stderr.isatty(),
        ))
    passed = sum(r.ok for r in results)
    logger.info("golden suite: %d of %d passed", passed, len(results))
    return results
