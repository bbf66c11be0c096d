"""Truncated Laurent germs over Q with the sheet involution z -> -z.

A germ stores the coefficients from ``valuation`` upward and is only known
modulo ``z**trunc``.  Every operation returns a canonical germ: no leading
zeros, nothing stored at or beyond ``trunc``.  The zero germ keeps its window
(its ``valuation`` is set equal to ``trunc`` so the precision rules below
treat it as "zero up to trunc").
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Iterable, Sequence

INF = math.inf


class GermError(ValueError):
    """Raised for non-invertible inputs or malformed germ text."""


class IndeterminateError(GermError):
    """The requested quantity is not certified at the working precision."""


def _frac(c) -> F:
    return c if isinstance(c, F) else F(c)


@dataclass(frozen=True)
class Germ:
    valuation: int
    coeffs: tuple
    trunc: int

    # construction -------------------------------------------------------
    @classmethod
    def make(cls, valuation: int, coeffs: Iterable, trunc: int) -> "Germ":
        cs = [_frac(c) for c in coeffs]
        keep = max(0, trunc - valuation)
        cs = cs[:keep]
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        cs = cs[lead:]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            return cls(trunc, (), trunc)
        return cls(valuation + lead, tuple(cs), trunc)

    @classmethod
    def zero(cls, trunc: int) -> "Germ":
        return cls(trunc, (), trunc)

    @classmethod
    def const(cls, c, trunc: int) -> "Germ":
        return cls.make(0, [c], trunc)

    @classmethod
    def one(cls, trunc: int) -> "Germ":
        return cls.const(1, trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, c=1) -> "Germ":
        return cls.make(k, [c], trunc)

    @classmethod
    def poly(cls, coeffs: Sequence, trunc: int, valuation: int = 0) -> "Germ":
        return cls.make(valuation, coeffs, trunc)

    @classmethod
    def from_dict(cls, terms: dict, trunc: int) -> "Germ":
        if not terms:
            return cls.zero(trunc)
        lo = min(terms)
        hi = max(terms)
        return cls.make(lo, [terms.get(k, 0) for k in range(lo, hi + 1)], trunc)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> F:
        i = k - self.valuation
        if k >= self.trunc:
            raise IndeterminateError(f"coefficient z^{k} beyond trunc {self.trunc}")
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return F(0)

    def terms(self) -> dict:
        return {self.valuation + i: c for i, c in enumerate(self.coeffs) if c}

    def order(self):
        return order(self)

    def lead(self) -> F:
        if self.is_zero():
            raise GermError("zero germ has no leading coefficient")
        return self.coeffs[0]

    def is_unit(self) -> bool:
        return not self.is_zero() and self.valuation == 0

    def is_holomorphic(self) -> bool:
        return self.is_zero() or self.valuation >= 0

    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self.terms())

    def is_odd(self) -> bool:
        return all(k % 2 == 1 for k in self.terms())

    # window manipulation ------------------------------------------------
    def truncate(self, trunc: int) -> "Germ":
        return Germ.make(self.valuation, self.coeffs, min(trunc, self.trunc))

    def shift(self, k: int) -> "Germ":
        """Multiply by z**k (exact, moves the window with it)."""
        if self.is_zero():
            return Germ.zero(self.trunc + k)
        return Germ(self.valuation + k, self.coeffs, self.trunc + k)

    # operators ----------------------------------------------------------
    def __add__(self, other):
        return add(self, _coerce(other, self.trunc))

    __radd__ = __add__

    def __neg__(self):
        return Germ.make(self.valuation, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.trunc))

    def __rsub__(self, other):
        return add(_coerce(other, self.trunc), -self)

    def __mul__(self, other):
        if isinstance(other, (int, F)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, F)):
            return self.scale(F(1) / F(other))
        return mul(self, invert(other))

    def scale(self, c) -> "Germ":
        c = _frac(c)
        return Germ.make(self.valuation, [c * x for x in self.coeffs], self.trunc)

    def agrees(self, other: "Germ", trunc: int | None = None) -> bool:
        """Equality on the common window (or on ``trunc`` if given)."""
        t = min(self.trunc, other.trunc) if trunc is None else trunc
        if t > min(self.trunc, other.trunc):
            raise IndeterminateError("comparison window exceeds known precision")
        return self.truncate(t) == other.truncate(t)

    def __str__(self) -> str:
        return format_germ(self)


def _coerce(x, trunc: int) -> Germ:
    if isinstance(x, Germ):
        return x
    return Germ.const(x, trunc)


def add(x: Germ, y: Germ) -> Germ:
    t = min(x.trunc, y.trunc)
    tx, ty = x.terms(), y.terms()
    out = dict(tx)
    for k, c in ty.items():
        out[k] = out.get(k, F(0)) + c
    out = {k: c for k, c in out.items() if k < t and c}
    return Germ.from_dict(out, t)


def mul(x: Germ, y: Germ) -> Germ:
    t = min(x.trunc + y.valuation, y.trunc + x.valuation)
    if x.is_zero() or y.is_zero():
        return Germ.zero(t)
    v = x.valuation + y.valuation
    n = max(0, t - v)
    xs, ys = x.coeffs[:n], y.coeffs[:n]
    out = [F(0)] * min(n, len(xs) + len(ys) - 1)
    for i, a in enumerate(xs):
        if not a:
            continue
        for j in range(min(len(ys), len(out) - i)):
            out[i + j] += a * ys[j]
    return Germ.make(v, out, t)


def invert(x: Germ) -> Germ:
    if x.is_zero():
        raise GermError("non-invertible: zero germ")
    v = x.valuation
    n = x.trunc - v  # unit part known mod z^n
    u = x.coeffs
    inv0 = 1 / u[0]
    out = [inv0]
    for k in range(1, n):
        s = sum((u[i] * out[k - i] for i in range(1, min(k, len(u) - 1) + 1)), F(0))
        out.append(-s * inv0)
    return Germ.make(-v, out, n - v)


def divide(x: Germ, y: Germ) -> Germ:
    return mul(x, invert(y))


def sigma_pullback(x: Germ) -> Germ:
    return Germ.make(
        x.valuation,
        [c if (x.valuation + i) % 2 == 0 else -c for i, c in enumerate(x.coeffs)],
        x.trunc,
    )


def parity_split(x: Germ) -> tuple[Germ, Germ]:
    terms = x.terms()
    even = {k: c for k, c in terms.items() if k % 2 == 0}
    odd = {k: c for k, c in terms.items() if k % 2 != 0}
    return Germ.from_dict(even, x.trunc), Germ.from_dict(odd, x.trunc)


def order(x: Germ):
    """Lowest exponent with nonzero coefficient; INF for the zero germ.

    A nonzero canonical germ always has valuation < trunc, so the value is
    certified.  INF only means "no nonzero coefficient below trunc".
    """
    if x.is_zero():
        return INF
    return x.valuation


def certified_order(x: Germ, what: str = "germ") -> int:
    o = order(x)
    if o == INF:
        raise IndeterminateError(f"indeterminate at this precision: {what} vanishes mod z^{x.trunc}")
    return o


# text format -------------------------------------------------------------

def _fmt_q(c: F) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_germ(x: Germ) -> str:
    if x.is_zero():
        return f"v=0;t={x.trunc};0"
    return f"v={x.valuation};t={x.trunc};" + ",".join(_fmt_q(c) for c in x.coeffs)


def parse_germ(text: str, default_trunc: int | None = None) -> Germ:
    s = text.strip().replace(" ", "")
    if "v=" not in s:
        # bare rational constant, e.g. "0" or "3/2"
        if default_trunc is None:
            raise GermError(f"bare constant {text!r} needs a default truncation")
        try:
            return Germ.const(F(s), default_trunc)
        except (ValueError, ZeroDivisionError) as e:
            raise GermError(f"malformed germ {text!r}") from e
    parts = s.split(";")
    if len(parts) != 3 or not parts[0].startswith("v=") or not parts[1].startswith("t="):
        raise GermError(f"malformed germ {text!r}; expected 'v=<val>;t=<trunc>;c0,c1,...'")
    try:
        v = int(parts[0][2:])
        t = int(parts[1][2:])
        cs = [F(c) for c in parts[2].split(",")] if parts[2] else []
    except (ValueError, ZeroDivisionError) as e:
        raise GermError(f"malformed germ {text!r}") from e
    if cs and any(cs) and v >= t:
        raise GermError(f"valuation {v} must be below trunc {t}")
    return Germ.make(v, cs, t)
