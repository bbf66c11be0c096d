"""2x2 germ matrices: gauge conjugation, the local normal form of a Higgs
field, Hecke-transformed Higgs fields and eigenline twist orders.

Everything happens in a fixed local trivialisation with the 1-form factor
dz left implicit, so a Higgs field is a bare traceless germ matrix.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction as F

from .germ import (
    INF,
    Germ,
    GermError,
    IndeterminateError,
    certified_order,
    format_germ,
    invert,
    order,
    parse_germ,
)


class HiggsError(GermError):
    pass


def default_trunc(lambda_order: int) -> int:
    """Working window 2*Lambda + 4, overridable through HFL_TRUNC."""
    env = os.environ.get("HFL_TRUNC")
    if env:
        return int(env)
    return 2 * lambda_order + 4


@dataclass(frozen=True)
class GermMatrix2:
    entries: tuple  # (m11, m12, m21, m22)

    @classmethod
    def of(cls, m11, m12, m21, m22, trunc: int | None = None) -> "GermMatrix2":
        es = [m11, m12, m21, m22]
        if trunc is None:
            trunc = min(e.trunc for e in es if isinstance(e, Germ))
        es = [e if isinstance(e, Germ) else Germ.const(e, trunc) for e in es]
        return cls(tuple(es))

    @classmethod
    def identity(cls, trunc: int) -> "GermMatrix2":
        return cls.of(1, 0, 0, 1, trunc)

    @classmethod
    def constant(cls, rows, trunc: int) -> "GermMatrix2":
        (p, q), (r, s) = rows
        return cls.of(F(p), F(q), F(r), F(s), trunc)

    def __getitem__(self, ij) -> Germ:
        i, j = ij
        return self.entries[2 * i + j]

    @property
    def trunc(self) -> int:
        """Common reliable window: the smallest entry window."""
        return min(e.trunc for e in self.entries)

    def __mul__(self, other):
        if isinstance(other, GermMatrix2):
            a, b, c, d = self.entries
            e, f, g, h = other.entries
            return GermMatrix2((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))
        return GermMatrix2(tuple(x * other for x in self.entries))

    __rmul__ = __mul__

    def __add__(self, other: "GermMatrix2") -> "GermMatrix2":
        return GermMatrix2(tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "GermMatrix2") -> "GermMatrix2":
        return GermMatrix2(tuple(x - y for x, y in zip(self.entries, other.entries)))

    def det(self) -> Germ:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> Germ:
        return self.entries[0] + self.entries[3]

    def adj(self) -> "GermMatrix2":
        a, b, c, d = self.entries
        return GermMatrix2((d, -b, -c, a))

    def shift(self, k: int) -> "GermMatrix2":
        return GermMatrix2(tuple(e.shift(k) for e in self.entries))

    def truncate(self, t: int) -> "GermMatrix2":
        return GermMatrix2(tuple(e.truncate(t) for e in self.entries))

    def at_zero(self) -> tuple:
        return tuple(e.coefficient(0) if e.trunc > 0 else F(0) for e in self.entries)

    def is_holomorphic(self) -> bool:
        return all(e.is_holomorphic() for e in self.entries)

    def agrees(self, other: "GermMatrix2", trunc: int | None = None) -> bool:
        t = min(self.trunc, other.trunc) if trunc is None else trunc
        return all(x.agrees(y, t) for x, y in zip(self.entries, other.entries))

    def __str__(self) -> str:
        return format_matrix(self)


def format_matrix(m: GermMatrix2) -> str:
    return ";".join(format_germ(e) for e in m.entries)


_GERM_RE = re.compile(r"v=-?\d+;t=-?\d+;[^;]*")


def parse_matrix(text: str) -> GermMatrix2:
    parts = _GERM_RE.findall(text.replace(" ", ""))
    if len(parts) != 4:
        raise HiggsError(f"expected four germs in row-major order, got {len(parts)}")
    return GermMatrix2(tuple(parse_germ(p) for p in parts))


@dataclass(frozen=True)
class LocalHiggsData:
    matrix: GermMatrix2
    lambda_order: int

    def validate(self) -> None:
        if not self.matrix.trace().is_zero():
            raise HiggsError("invalid Higgs data: trace is not zero")
        od = order(self.matrix.det())
        if od == INF:
            raise IndeterminateError("indeterminate order: det vanishes in the window")
        if od != 2 * self.lambda_order:
            raise HiggsError(
                f"invalid Higgs data: det has order {od}, expected 2*{self.lambda_order}"
            )


# conjugation ----------------------------------------------------------------

def conjugate(phi: GermMatrix2, g: GermMatrix2) -> GermMatrix2:
    """g^{-1} phi g, computed as adj(g) phi g / det(g)."""
    dg = g.det()
    if dg.is_zero():
        raise HiggsError("singular gauge")
    inv_det = invert(dg)
    return (g.adj() * phi * g) * inv_det


def vanishing_divisor(m: GermMatrix2) -> int:
    """Minimum entry order, certified below the common window."""
    o = min(order(e) for e in m.entries)
    if o == INF or o >= m.trunc:
        raise IndeterminateError("indeterminate order: matrix vanishes in the window")
    return int(o)


# normal form ----------------------------------------------------------------

def _cyclic_constant_gauge(p: F, q: F, r: F) -> tuple:
    """Constant basis (phi0 v | v) putting phi0=[[p,q],[r,-p]] in shape [[0,1],[*,0]]."""
    if q != 0:
        v = (F(0), F(1))
    elif r != 0:
        v = (F(1), F(0))
    else:
        v = (F(1), F(1))
    w = (p * v[0] + q * v[1], r * v[0] - p * v[1])
    return ((w[0], v[0]), (w[1], v[1]))


def normal_form(h: LocalHiggsData):
    """Return (D, Lambda, gauge) with gauge^{-1} m gauge = z^D [[0,1],[-det/z^{2D},0]].

    The gauge is allowed to have unit (not unit-one) determinant, which avoids
    the square root of the lower-left unit.
    """
    m = h.matrix
    t = m.trunc
    if not m.trace().is_zero():
        raise HiggsError("invalid Higgs data: trace is not zero")
    D = min(order(e) for e in m.entries)
    if D == INF or D >= t:
        raise IndeterminateError("indeterminate order")
    D = int(D)
    det_order = order(m.det())
    if det_order == INF:
        raise IndeterminateError("indeterminate order: det vanishes in the window")
    if det_order % 2:
        raise HiggsError("invalid Higgs data: det has odd vanishing order")
    lam = det_order // 2
    if lam != h.lambda_order:
        raise HiggsError(f"invalid Higgs data: det order {det_order} != 2*{h.lambda_order}")
    phi = m.shift(-D)
    p, q, r, _ = phi.at_zero()
    c_rows = _cyclic_constant_gauge(p, q, r)
    C = GermMatrix2.constant(c_rows, phi.trunc)
    phi1 = conjugate(phi, C)
    a, b = phi1[0, 0], phi1[0, 1]
    G = GermMatrix2.of(b, Germ.zero(b.trunc), -a, Germ.one(b.trunc))
    gauge = C * G
    return D, lam, gauge


def companion_target(m: GermMatrix2, D: int) -> GermMatrix2:
    """z^D [[0,1],[-det(m)/z^{2D},0]]: the form normal_form conjugates into."""
    dm = m.det()
    t = m.trunc
    return GermMatrix2.of(
        Germ.zero(t), Germ.monomial(D, t), (-dm).shift(-D), Germ.zero(t)
    )


# Hecke-transformed Higgs fields -----------------------------------------------

def _hecke_matrix(d: int, a: Germ, b: Germ) -> GermMatrix2:
    """[[a/b z^d, b^2-a^2],[z^{2d}/b^2, -a/b z^d]]; swaps the roles of a,b if b=0."""
    if b.is_zero():
        if a.is_zero():
            raise HiggsError("inconsistent Hecke data: a and b both vanish")
        a, b = b, a
    binv = invert(b)
    r = (a * binv).shift(d)
    m = GermMatrix2((r, b * b - a * a, (binv * binv).shift(2 * d), -r))
    if not m.is_holomorphic():
        raise HiggsError("inconsistent Hecke data: non-holomorphic entry")
    return m


def hecke_higgs(d: int, a: Germ, b: Germ) -> GermMatrix2:
    """Higgs field of the Hecke transformation at an odd zero, in the induced frame."""
    if d <= 0 or d % 2 == 0:
        raise HiggsError("hecke_higgs needs an odd positive d")
    if not a.is_odd() or not b.is_even():
        raise HiggsError("inconsistent Hecke data: need a sigma-odd, b sigma-even")
    return _hecke_matrix(d, a, b)


def even_hecke_higgs(m: int, a: Germ, b: Germ) -> GermMatrix2:
    """Same local formula at one preimage of an even zero (no parity constraint)."""
    if m <= 0:
        raise HiggsError("m must be positive")
    return _hecke_matrix(m, a, b)


def transition_oracle(d: int, a: Germ, b: Germ) -> GermMatrix2:
    """Independent computation: psi^{-1} Phi_L psi with psi the Hecke transition.

    Phi_L starts as diag(z^d, -z^d) in the eigenframe (s, sigma*s); the frame
    s_+ = s + sigma*s, s_- = s - sigma*s turns it into [[0,z^d],[z^d,0]].
    psi = [[b^{-1}, -a z^{-d}],[0, b z^{-d}]] in that frame.
    """
    if b.is_zero():
        a, b = b, a
    t = min(a.trunc, b.trunc)
    zd = Germ.monomial(d, t)
    diag = GermMatrix2.of(zd, Germ.zero(t), Germ.zero(t), -zd)
    frame = GermMatrix2.constant(((1, 1), (1, -1)), t)
    phi_l = conjugate(diag, frame)
    psi = GermMatrix2.of(invert(b), (-a).shift(-d), Germ.zero(t), b.shift(-d))
    return conjugate(phi_l, psi)


# eigenline twists ------------------------------------------------------------

def _section_order(lam: Germ, m: GermMatrix2, sign: int):
    """Order of the sign*lam eigen-section, normalised by sqrt(m21)."""
    m11, m12, m21, _ = m.entries
    if m21.is_zero() and m12.is_zero():
        return 0
    if m21.is_zero():
        # swap basis vectors: same eigenvalues, roles of m12/m21 exchanged
        m11, m21 = -m11, m12
    o21 = certified_order(m21, "m21")
    if o21 % 2:
        raise HiggsError("m21 has odd order; no square-root normalisation")
    first = lam * sign + m11  # row-2 cofactor (sign*lam - m22, m21), m22 = -m11
    o = min(order(first), o21)
    if o == INF:
        raise IndeterminateError("indeterminate eigen-section order")
    return int(o) - o21 // 2


def eigen_twist_orders(m: GermMatrix2, lambda_order: int, lam: Germ | None = None):
    """Vanishing orders (plus, minus) of the +lam / -lam eigen-sections.

    The kernel of (m - lam) is spanned by the cofactor (lam - m22, m21); for
    Hecke-transformed fields m21 = (z^d / b)^2, and dividing the cofactor by
    the square root of m21 gives the image of the original eigenframe, whose
    vanishing order is the twist.  ``lam`` defaults to z^lambda_order.
    """
    if lam is None:
        lam = Germ.monomial(lambda_order, m.trunc)
    det_target = -(lam * lam)
    if not m.det().agrees(det_target, min(m.det().trunc, det_target.trunc)):
        raise HiggsError("det(m) != -lam^2")
    return _section_order(lam, m, 1), _section_order(lam, m, -1)
