"""
Hilbert series of weighted monomial quotients.

The numerator is computed by pivoting on single variables:
HS(S/I) = HS(S/(I + x)) + t^deg(x) HS(S/(I : x)), with base case at most
one generator that is not a pure power.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .polyalg import CELL

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Integer polynomials in t, as coefficient lists by degree
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _add(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _shift(p, k):
    return _trim([0] * k + list(p)) if p else []


def _mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _one_minus(d):
    """Coefficients of 1 - t^d."""
    if d == 0:
        return []
    return [1] + [0] * (d - 1) + [-1]


def _divide_one_minus(p, d):
    """Exact quotient of p by 1 - t^d, or ``None``."""
    if not p:
        return []
    q = [0] * len(p)
    for k in range(len(p)):
        q[k] = p[k] + (q[k - d] if k >= d else 0)
    # p = (1 - t^d) q requires the tail of q to vanish.
    if any(q[len(p) - d:]) if len(p) >= d else any(q):
        return None
    return _trim(q[: max(len(p) - d, 0)])


def format_t_polynomial(p):
    if not p:
        return "0"
    out = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod(1 - t^d for d in denominator)."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(_trim(self.numerator)))
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))

    def is_zero(self):
        return not self.numerator

    def expand(self, degree):
        """Series coefficients of t^0 .. t^degree."""
        coeffs = list(self.numerator[: degree + 1]) + [0] * max(0, degree + 1 - len(self.numerator))
        for d in self.denominator:
            for k in range(d, degree + 1):
                coeffs[k] += coeffs[k - d]
        return coeffs

    def cancel(self, weights):
        """Divide out the factors 1 - t^d for ``d`` in ``weights`` where exact."""
        num, den = list(self.numerator), list(self.denominator)
        for d in weights:
            if d in den and num:
                q = _divide_one_minus(num, d)
                if q is not None:
                    num = q
                    den.remove(d)
        return HilbertSeries(tuple(num), tuple(den))

    def over(self, weights):
        """The same series written over exactly ``prod(1 - t^d for d in weights)``."""
        num, den = list(self.numerator), list(self.denominator)
        target = list(weights)
        for d in list(target):
            if d in den:
                den.remove(d)
                target.remove(d)
        for d in target:
            num = _mul(num, _one_minus(d))
        for d in den:
            q = _divide_one_minus(num, d)
            if q is None:
                raise ValueError(f"{self} cannot be written over weights {sorted(weights)}")
            num = q
        return HilbertSeries(tuple(num), tuple(weights))

    def equivalent(self, other):
        lhs = list(self.numerator)
        rhs = list(other.numerator)
        for d in other.denominator:
            lhs = _mul(lhs, _one_minus(d))
        for d in self.denominator:
            rhs = _mul(rhs, _one_minus(d))
        return _trim(lhs) == _trim(rhs)

    @property
    def rank(self):
        """Numerator at t = 1."""
        return sum(self.numerator)

    def __str__(self):
        num = format_t_polynomial(self.numerator)
        if not self.denominator or not self.numerator:
            return num
        if sum(1 for c in self.numerator if c) > 1:
            num = f"({num})"
        factors = [f"(1 - t^{d})" for d in self.denominator]
        den = factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")"
        return f"{num}/{den}"


# ---------------------------------------------------------------------------
# Monomial quotients
# ---------------------------------------------------------------------------

def minimalize(A):
    """Minimal generators among the rows of A."""
    Amin = []
    for m in A:
        if all(not np.all(m >= g) for g in Amin):
            Amin = [g for g in Amin if not np.all(g >= m)]
            Amin.append(m)
    return Amin


def pivot(A, k):
    """Split on the variable k: generators of (I + x_k) and of (I : x_k)."""
    p = np.zeros(len(A[0]), dtype=np.int64)
    p[k] = 1
    left = [m for m in A if not m[k]] + [p]
    right = [np.where(m >= p, m - p, 0) for m in A]
    return minimalize(left), minimalize(right)


def _pure_powers_numerator(A, weights):
    num = [1]
    for m in A:
        num = _mul(num, _one_minus(int(m @ weights)))
    return num


def _numerator(A, weights):
    if not A:
        return [1]
    if any(not m.any() for m in A):
        return []
    nontrivial = [m for m in A if np.count_nonzero(m) > 1]
    if len(nontrivial) <= 1:
        pure = [m for m in A if np.count_nonzero(m) <= 1]
        num = _pure_powers_numerator(pure, weights)
        if nontrivial:
            m = nontrivial[0]
            colon = [np.maximum(g - m, 0) for g in pure]
            num = _add(num, [-c for c in _shift(_pure_powers_numerator(colon, weights), int(m @ weights))])
        return num
    k = int(np.argmax(np.count_nonzero(np.array(nontrivial), axis=0)))
    left, right = pivot(A, k)
    return _add(_numerator(left, weights), _shift(_numerator(right, weights), int(weights[k])))


def hilbert_series_monomial_quotient(leading_terms, ctx):
    """Hilbert series of ctx's ring modulo the monomial ideal of ``leading_terms``.

    Denominator factors of cell coordinates are cancelled first, then those
    of parameters.
    """
    weights = np.array(ctx.weights, dtype=np.int64)
    A = minimalize([np.array(m, dtype=np.int64) for m in leading_terms])
    num = _numerator(A, weights)
    logger.debug("monomial quotient with %d generators: numerator %s", len(A), num)
    series = HilbertSeries(tuple(num), ctx.weights)
    order = [v.weight for v in ctx.variables if v.role == CELL]
    order += [v.weight for v in ctx.variables if v.role != CELL]
    return series.cancel(order)
