"""
Text grammars: canonical polynomials, chart descriptors, family descriptors
and rational value lists.

Every failure is raised as ``ParseError`` carrying the 0-based position.
"""

from fractions import Fraction

import pyparsing as pp

from .exceptions import ParseError

_INT = pp.Word(pp.nums)
_RATIONAL = pp.Combine(_INT + pp.Optional("/" + _INT))
_SIGN = pp.one_of("+ - −")

# ---------------------------------------------------------------------------
# Polynomials: "x1^3 - 2*c2*x1 - c3", "1/2*v^2 + x"
# ---------------------------------------------------------------------------
_NAME = pp.Word(pp.alphas, pp.alphanums + "_").set_parse_action(lambda s, loc, t: [(t[0], loc)])
_FACTOR = pp.Group(_NAME + pp.Optional(pp.Suppress("^") + _INT, default="1"))
_MONOMIAL = pp.Group(_FACTOR + pp.ZeroOrMore(pp.Suppress("*") + _FACTOR))
_TERM = pp.Group(
    _RATIONAL("coef") + pp.Optional(pp.Suppress("*") + _MONOMIAL("mono"))
    | _MONOMIAL("mono")
)
_POLYNOMIAL = pp.Optional(_SIGN, default="+") + _TERM + pp.ZeroOrMore(_SIGN + _TERM) + pp.StringEnd()


def parse_polynomial(text, ctx):
    """Parse the canonical text format into a Polynomial of ``ctx``."""
    try:
        tokens = _POLYNOMIAL.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError("malformed polynomial", text, exc.loc) from None
    result = ctx.zero()
    for sign, term in zip(tokens[0::2], tokens[1::2]):
        coef = Fraction(term.get("coef", "1"))
        if sign != "+":
            coef = -coef
        exp = [0] * ctx.nvars
        for (name, loc), power in term.get("mono", []):
            if name not in ctx:
                raise ParseError(f"unknown variable {name!r}", text, loc)
            exp[ctx.index(name)] += int(power)
        result = result + ctx.constant(coef) * _monomial(ctx, exp)
    return result


def _monomial(ctx, exp):
    from .polyalg import Polynomial

    return Polynomial(ctx, {tuple(exp): 1})


# ---------------------------------------------------------------------------
# Charts: "pn:4", "gr:2,4", "flag:3", "flag:1,2@4", "bs:1,2,1@sl3"
# ---------------------------------------------------------------------------
_INTLIST = pp.DelimitedList(_INT)
_PN = pp.Literal("pn")("kind") + pp.Suppress(":") + _INT("n")
_GR = pp.Literal("gr")("kind") + pp.Suppress(":") + _INT("k") + pp.Suppress(",") + _INT("n")
_FLAG = (
    pp.Literal("flag")("kind") + pp.Suppress(":") + pp.Group(_INTLIST)("dims")
    + pp.Optional(pp.Suppress("@") + _INT("n"))
)
_BS = (
    pp.Literal("bs")("kind") + pp.Suppress(":") + pp.Group(_INTLIST)("word")
    + pp.Suppress("@") + pp.Suppress(pp.Literal("sl")) + _INT("n")
)
_CHART = (_PN | _GR | _FLAG | _BS) + pp.StringEnd()


def parse_chart(text):
    from .charts import ChartDescriptor

    try:
        t = _CHART.parse_string(text.strip(), parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError("malformed variety descriptor", text, exc.loc) from None
    try:
        if t.kind == "pn":
            return ChartDescriptor.projective(int(t.n))
        if t.kind == "gr":
            return ChartDescriptor.grassmannian(int(t.k), int(t.n))
        if t.kind == "flag":
            dims = [int(d) for d in t.dims]
            if t.n == "":
                if len(dims) != 1:
                    raise ValueError("a flag without '@n' takes a single size")
                return ChartDescriptor.full_flag(dims[0])
            return ChartDescriptor.flag(dims, int(t.n))
        return ChartDescriptor.bott_samelson([int(i) for i in t.word], int(t.n))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


# ---------------------------------------------------------------------------
# Families: "borel:sl3", "kostant:sl3", "psl2-borel:4", "psl2-kostant:4"
# ---------------------------------------------------------------------------
_GROUP = (
    pp.one_of("psl2-borel psl2-kostant borel kostant")("kind")
    + pp.Suppress(":") + pp.Optional(pp.Literal("sl"))("sl") + _INT("n") + pp.StringEnd()
)


def parse_group(text):
    from . import families

    try:
        t = _GROUP.parse_string(text.strip(), parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError("malformed group descriptor", text, exc.loc) from None
    n = int(t.n)
    if n < 2:
        raise ParseError("matrix size must be at least 2", text, text.find(t.n))
    builders = {
        "borel": families.borel_torus,
        "kostant": families.kostant,
        "psl2-borel": families.principal_sl2_torus,
        "psl2-kostant": families.principal_sl2_kostant,
    }
    return builders[t.kind](n)


# ---------------------------------------------------------------------------
# Value lists: "1,2", "1/2, -3"
# ---------------------------------------------------------------------------
_VALUE = pp.Combine(pp.Optional(_SIGN) + _RATIONAL)
_VALUES = pp.DelimitedList(_VALUE) + pp.StringEnd()


def parse_values(text):
    try:
        tokens = _VALUES.parse_string(text.strip(), parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError("malformed value list", text, exc.loc) from None
    return [Fraction(tok.replace("−", "-")) for tok in tokens]
