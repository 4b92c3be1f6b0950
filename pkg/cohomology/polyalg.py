"""
Exact sparse polynomials over a weighted-graded ring context.

Coefficients are ``fractions.Fraction``; exponent vectors are dense tuples,
one entry per context variable. Every value is immutable once built.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Union

from .exceptions import (
    ContextMismatch,
    InhomogeneousError,
    OddWeightError,
    UnboundVariable,
)

logger = logging.getLogger(__name__)

PARAM = "param"
CELL = "cell"

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# Ring contexts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str
    weight: int = 2
    role: str = CELL


@dataclass(frozen=True)
class RingContext:
    """Ordered variables with even positive weights and a role tag each."""

    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ContextMismatch(f"duplicate variable names in {names}")
        for v in self.variables:
            if isinstance(v.weight, bool) or not isinstance(v.weight, int) or v.weight <= 0 or v.weight % 2:
                raise OddWeightError(
                    f"weight of {v.name} must be a positive even integer, got {v.weight}"
                )
            if v.role not in (PARAM, CELL):
                raise ContextMismatch(f"unknown role {v.role!r} for {v.name}")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @classmethod
    def of(cls, *specs):
        """Build a context from ``Variable``s or ``(name, weight[, role])`` tuples."""
        return cls(tuple(s if isinstance(s, Variable) else Variable(*s) for s in specs))

    def __str__(self):
        return "{" + ", ".join(f"{v.name}:{v.weight}" for v in self.variables) + "}"

    def __contains__(self, name):
        return name in self._index

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def names(self):
        return tuple(v.name for v in self.variables)

    @property
    def weights(self):
        return tuple(v.weight for v in self.variables)

    @property
    def params(self):
        return tuple(v.name for v in self.variables if v.role == PARAM)

    @property
    def cells(self):
        return tuple(v.name for v in self.variables if v.role == CELL)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ContextMismatch(f"unknown variable {name!r} in context {self}") from None

    def weight(self, name):
        return self.variables[self.index(name)].weight

    def restrict(self, names):
        """Sub-context on ``names``, keeping this context's order."""
        keep = set(names)
        for name in keep:
            self.index(name)
        return RingContext(tuple(v for v in self.variables if v.name in keep))

    def degree(self, exp):
        return sum(w * e for w, e in zip(self.weights, exp))

    def zero(self):
        return Polynomial(self)

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name):
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self):
        return {name: self.var(name) for name in self.names}

    def parse(self, text):
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)


# ---------------------------------------------------------------------------
# Coefficient helpers
# ---------------------------------------------------------------------------

def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _is_scalar(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != ctx.nvars:
                raise ContextMismatch(f"exponent {exp} does not fit context {ctx}")
            c = Fraction(c)
            if c:
                clean[exp] = c
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, terms):
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        return p

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"context {other.ctx} differs from {self.ctx}")
            return other
        if _is_scalar(other):
            return self.ctx.constant(other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Polynomial._raw(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            other = Fraction(other)
            if not other:
                return self.ctx.zero()
            return Polynomial._raw(self.ctx, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, 0) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    terms.pop(exp, None)
        return Polynomial._raw(self.ctx, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = self.ctx.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if _is_scalar(other):
            return self.terms == self.ctx.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def variables(self):
        """Names of the variables that occur."""
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return {self.ctx.names[i] for i in sorted(used)}

    def degree_in(self, name):
        i = self.ctx.index(name)
        return max((e[i] for e in self.terms), default=0)

    def weighted_degree(self):
        """Weighted degree if homogeneous, ``None`` if inhomogeneous."""
        if not self.terms:
            raise InhomogeneousError("the zero polynomial has no degree")
        degrees = {self.ctx.degree(e) for e in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def coefficient(self, monomial):
        return self.terms.get(tuple(monomial), Fraction(0))

    # -- normalization ----------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: decreasing weighted degree, then decreasing lex."""
        return sorted(self.terms.items(), key=lambda t: (self.ctx.degree(t[0]), t[0]), reverse=True)

    def primitive(self):
        """Integer coprime coefficients, first canonical term positive."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(int(c * den) for c in self.terms.values()))
        scale = Fraction(den, num)
        if self.sorted_terms()[0][1] < 0:
            scale = -scale
        return self * scale

    # -- substitution -----------------------------------------------------

    def substitute(self, bindings: Mapping[str, object], ctx=None):
        """Image under the ring map sending bound names to their values.

        Unbound variables are carried over by name into ``ctx`` (default: this
        polynomial's context).
        """
        target = ctx or self.ctx
        images = []
        for name in self.ctx.names:
            if name in bindings:
                value = bindings[name]
                if isinstance(value, Polynomial):
                    if value.ctx != target:
                        raise ContextMismatch(f"binding for {name} lives in {value.ctx}, not {target}")
                else:
                    value = target.constant(value)
                images.append(value)
            elif name in target:
                images.append(target.var(name))
            else:
                images.append(None)
        result = target.zero()
        powers = {}
        for exp, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(exp):
                if not e:
                    continue
                if images[i] is None:
                    raise UnboundVariable(f"variable {self.ctx.names[i]} has no value in {target}")
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = term * powers[key]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]):
        """Full evaluation to a Fraction."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for name, e in zip(self.ctx.names, exp):
                if not e:
                    continue
                if name not in values:
                    raise UnboundVariable(f"no value for variable {name}")
                term *= Fraction(values[name]) ** e
            total += term
        return total

    def to_context(self, ctx):
        """Re-embed into ``ctx`` by variable names."""
        if ctx == self.ctx:
            return self
        missing = self.variables() - set(ctx.names)
        if missing:
            raise ContextMismatch(f"variables {sorted(missing)} are missing from {ctx}")
        positions = [ctx.index(name) if name in ctx else None for name in self.ctx.names]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * ctx.nvars
            for i, e in enumerate(exp):
                if e:
                    new[positions[i]] = e
            terms[tuple(new)] = c
        return Polynomial._raw(ctx, terms)

    # -- printing ---------------------------------------------------------

    def _monomial_text(self, exp):
        parts = []
        for role in (PARAM, CELL):
            for v, e in zip(self.ctx.variables, exp):
                if e and v.role == role:
                    parts.append(v.name if e == 1 else f"{v.name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_text(exp)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_arith(a, b, op):
    """``add``, ``sub`` or ``mul`` of two polynomials in the same context."""
    if a.ctx != b.ctx:
        raise ContextMismatch(f"context {a.ctx} differs from {b.ctx}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def weighted_degree(p):
    return p.weighted_degree()


def substitute(p, bindings, ctx=None):
    return p.substitute(bindings, ctx)


# ---------------------------------------------------------------------------
# Rational functions (closed forms of conjugators)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if self.numerator.ctx != self.denominator.ctx:
            raise ContextMismatch("numerator and denominator contexts differ")

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.numerator * other.denominator == other.numerator * self.denominator
        if isinstance(other, Polynomial) or _is_scalar(other):
            return self.numerator == self.denominator * other
        return NotImplemented

    __hash__ = None

    def evaluate(self, values):
        den = self.denominator.evaluate(values)
        if not den:
            raise ZeroDivisionError(f"denominator {self.denominator} vanishes at {dict(values)}")
        return self.numerator.evaluate(values) / den

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        num = str(self.numerator)
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        den = str(self.denominator)
        if len(self.denominator.terms) > 1 or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"
