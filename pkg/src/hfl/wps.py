"""Points of weighted projective spaces over Q, compared over the closure."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from math import gcd
from functools import reduce
from typing import Sequence


class WPSError(ValueError):
    pass


@dataclass(frozen=True)
class WPSPoint:
    weights: tuple
    coords: tuple

    @classmethod
    def make(cls, weights: Sequence[int], coords: Sequence) -> "WPSPoint":
        w = tuple(int(x) for x in weights)
        c = tuple(F(x) for x in coords)
        if len(w) != len(c):
            raise WPSError("weights and coordinates differ in length")
        if any(x <= 0 for x in w):
            raise WPSError("weights must be positive")
        if not any(c):
            raise WPSError("the origin is not a point of weighted projective space")
        return cls(w, c)

    def support(self) -> tuple:
        return tuple(i for i, x in enumerate(self.coords) if x != 0)

    def __eq__(self, other):
        if not isinstance(other, WPSPoint):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash((self.weights, self.support()))

    def __str__(self) -> str:
        return format_point(self)


def _bezout(ws: Sequence[int]) -> list:
    """Integers c with sum(c_i * w_i) = gcd(ws)."""
    cs = [1]
    g = ws[0]
    for w in ws[1:]:
        # extended Euclid on (g, w)
        r0, r1, s0, s1, t0, t1 = g, w, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        cs = [c * s0 for c in cs] + [t0]
        g = r0
    return cs


def equals(x: WPSPoint, y: WPSPoint) -> bool:
    """Geometric equality: some complex lambda rescales x into y.

    With ratios r_i = y_i / x_i on the common support and g the gcd of the
    supported weights, lambda exists iff nu = prod r_i^{c_i} (Bezout
    coefficients of w_i / g) satisfies nu^{w_i / g} = r_i for every i.  For
    g = 1 this is the pairwise cross-power test x_i^{w_j} y_j^{w_i} =
    y_i^{w_j} x_j^{w_i}; for g > 1 it also separates points that differ by a
    root of unity acting on the orbifold stabiliser.
    """
    if x.weights != y.weights:
        raise WPSError("weight mismatch")
    sup = x.support()
    if sup != y.support():
        return False
    ws = [x.weights[i] for i in sup]
    g = reduce(gcd, ws)
    wr = [w // g for w in ws]
    rs = [y.coords[i] / x.coords[i] for i in sup]
    nu = F(1)
    for c, r in zip(_bezout(wr), rs):
        nu *= r ** c
    return all(nu ** w == r for w, r in zip(wr, rs))


def rescale(lam, x: WPSPoint) -> WPSPoint:
    lam = F(lam)
    if lam == 0:
        raise WPSError("zero scalar")
    return WPSPoint(x.weights, tuple(lam ** wi * c for wi, c in zip(x.weights, x.coords)))


def torus_act(t: Sequence, x: WPSPoint) -> WPSPoint:
    """(x0 : t1^{w1} x1 : ... : tn^{wn} xn), the torus of the x0 != 0 chart."""
    t = [F(s) for s in t]
    if len(t) != len(x.coords) - 1:
        raise WPSError("torus element must have one entry per coordinate after the first")
    if any(s == 0 for s in t):
        raise WPSError("zero scalar in torus element")
    coords = (x.coords[0],) + tuple(
        s ** wi * c for s, wi, c in zip(t, x.weights[1:], x.coords[1:])
    )
    return WPSPoint(x.weights, coords)


def is_orbifold_singular(x: WPSPoint) -> bool:
    ws = [x.weights[i] for i in x.support()]
    return reduce(gcd, ws) > 1


def invariant_vector(x: WPSPoint) -> tuple:
    """Cross-power invariants x_i^{w_j} / x_j^{w_i} against the first nonzero slot."""
    sup = x.support()
    i = sup[0]
    w = x.weights
    return tuple(
        (j, x.coords[j] ** w[i] / x.coords[i] ** w[j]) for j in sup[1:]
    )


def normalized(x: WPSPoint) -> WPSPoint:
    """Rescale so the first nonzero weight-1 coordinate is 1 (unchanged if none)."""
    for w, c in zip(x.weights, x.coords):
        if w == 1 and c != 0:
            return rescale(1 / c, x)
    return x


def _fmt_q(c: F) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_point(x: WPSPoint) -> str:
    return "w=" + ",".join(map(str, x.weights)) + ";x=" + ",".join(_fmt_q(c) for c in x.coords)


def parse_point(text: str) -> WPSPoint:
    try:
        wpart, xpart = text.replace(" ", "").split(";")
        if not (wpart.startswith("w=") and xpart.startswith("x=")):
            raise ValueError
        w = [int(s) for s in wpart[2:].split(",")]
        c = [F(s) for s in xpart[2:].split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise WPSError(f"malformed point {text!r}; expected 'w=1,1,2;x=1,2,3'") from e
    return WPSPoint.make(w, c)


def to_json(x: WPSPoint) -> dict:
    return {
        "weights": list(x.weights),
        "coords": [_fmt_q(c) for c in x.coords],
        "normalized": [_fmt_q(c) for c in normalized(x).coords],
        "invariants": [[j, _fmt_q(v)] for j, v in invariant_vector(x)],
    }
