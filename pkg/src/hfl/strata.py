"""Stratification combinatorics of a singular Hitchin fibre.

Input is a zero profile of a quadratic differential: genus g and the zero
orders m_i (summing to 4g - 4).  Strata are indexed by Higgs divisors
0 <= D_i <= floor(m_i / 2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Optional, Sequence

import numpy as np

from ._kernels import DEG, DIM, N0, R1, R2, REAL_EXP, strata_table


class ProfileError(ValueError):
    pass


class NotCovered(ValueError):
    """Real-point counting needs at least one odd zero."""


@dataclass(frozen=True)
class QDProfile:
    genus: int
    mults: tuple
    assume_no_global_sqrt: bool = True

    @classmethod
    def make(cls, genus: int, mults: Sequence[int], assume_no_global_sqrt: bool = True):
        mults = tuple(int(m) for m in mults)
        if genus < 2:
            raise ProfileError(f"genus must be at least 2, got {genus}")
        if not mults:
            raise ProfileError("need at least one zero")
        if any(m <= 0 for m in mults):
            raise ProfileError("zero orders must be positive")
        if sum(mults) != 4 * genus - 4:
            raise ProfileError(
                f"zero orders sum to {sum(mults)}, expected 4g-4 = {4 * genus - 4}"
            )
        return cls(int(genus), mults, bool(assume_no_global_sqrt))

    @property
    def n(self) -> int:
        return len(self.mults)

    @property
    def n_odd(self) -> int:
        return sum(m % 2 for m in self.mults)

    @property
    def n_even(self) -> int:
        return self.n - self.n_odd


@dataclass(frozen=True)
class HiggsDivisor:
    coeffs: tuple

    def deg(self) -> int:
        return sum(self.coeffs)


@dataclass
class Stratum:
    divisor: HiggsDivisor
    deg: int
    dim: int
    prym_dim: int
    r1: int
    r2: int
    per_zero_fibre: list = field(default_factory=list)
    real_points: Optional[int] = None
    is_open: bool = False
    is_lowest: bool = False

    def to_json(self) -> dict:
        return {
            "D": list(self.divisor.coeffs),
            "deg": self.deg,
            "dim": self.dim,
            "prym_dim": self.prym_dim,
            "r1": self.r1,
            "r2": self.r2,
            "fibre": self.per_zero_fibre,
            "real_points": self.real_points,
        }


def spectral_numerology(p: QDProfile) -> dict:
    n_odd = p.n_odd
    assert n_odd % 2 == 0, "odd number of odd zeros is impossible"
    g_tilde = 2 * p.genus - 1 + n_odd // 2
    return {
        "n": p.n,
        "n_odd": n_odd,
        "n_even": p.n_even,
        "spectral_genus": g_tilde,
        "prym_dim": g_tilde - p.genus,
        "branch_points": n_odd,
        "unbranched": n_odd == 0,
    }


def _zero_fibre(m: int, d: int) -> dict:
    if m % 2:
        return {"order": m, "D": d, "kind": "odd", "affine_params": (m - 2 * d - 1) // 2}
    if 2 * d < m:
        return {"order": m, "D": d, "kind": "even", "punctured_lines": 1,
                "affine_params": m // 2 - d - 1}
    return {"order": m, "D": d, "kind": "even-saturated", "point": True}


def _table(p: QDProfile) -> np.ndarray:
    return strata_table(np.asarray(p.mults, dtype=np.int64), np.int64(p.genus))


def enumerate_strata(p: QDProfile) -> list:
    num = spectral_numerology(p)
    prym = num["prym_dim"]
    n = p.n
    tab = _table(p)
    dmax = tuple(m // 2 for m in p.mults)
    out = []
    for row in tab:
        D = tuple(int(x) for x in row[:n])
        real = None
        if p.n_odd >= 1:
            real = 2 ** int(row[n + REAL_EXP])
        out.append(Stratum(
            divisor=HiggsDivisor(D),
            deg=int(row[n + DEG]),
            dim=int(row[n + DIM]),
            prym_dim=prym,
            r1=int(row[n + R1]),
            r2=int(row[n + R2]),
            per_zero_fibre=[_zero_fibre(m, d) for m, d in zip(p.mults, D)],
            real_points=real,
            is_open=not any(D),
            is_lowest=D == dmax,
        ))
    return out


def closed_form_r2(p: QDProfile, D: HiggsDivisor) -> int:
    """2g - 2 - deg D - n_even - n_odd/2; only valid when no even zero is saturated."""
    return 2 * p.genus - 2 - D.deg() - p.n_even - p.n_odd // 2


def has_saturated_even(p: QDProfile, D: HiggsDivisor) -> bool:
    return any(m % 2 == 0 and 2 * d == m for m, d in zip(p.mults, D.coeffs))


def degeneration_poset(p: QDProfile) -> dict:
    """Nodes are divisors; edges are the covering relations D -> D + e_i."""
    nodes = [s.divisor.coeffs for s in enumerate_strata(p)]
    present = set(nodes)
    edges = []
    for D in nodes:
        for i in range(len(D)):
            E = D[:i] + (D[i] + 1,) + D[i + 1:]
            if E in present:
                edges.append((D, E))
    return {"nodes": nodes, "edges": edges}


def poset_dot(p: QDProfile) -> str:
    poset = degeneration_poset(p)
    name = lambda D: '"' + ",".join(map(str, D)) + '"'
    lines = ["digraph strata {"]
    lines += [f"  {name(D)};" for D in poset["nodes"]]
    lines += [f"  {name(a)} -> {name(b)};" for a, b in poset["edges"]]
    lines.append("}")
    return "\n".join(lines) + "\n"


def classify_components(p: QDProfile) -> dict:
    if not p.assume_no_global_sqrt:
        raise ProfileError("hypothesis not asserted: need a differential without global square root")
    if p.n_odd >= 1:
        return {"classification": "irreducible"}
    return {
        "classification": "connected, 4 irreducible components",
        "note": "pullback to the unbranched double cover is generically two-to-one",
    }


def count_real_points(p: QDProfile, D: HiggsDivisor) -> int:
    """2^(2g - 2 + n - n0), n0 the number of saturated even zeros."""
    if p.n_odd == 0:
        raise NotCovered("not covered: real-point count needs an odd zero")
    n0 = sum(1 for m, d in zip(p.mults, D.coeffs) if m % 2 == 0 and 2 * d == m)
    return 2 ** (2 * p.genus - 2 + p.n - n0)


def total_real_points(p: QDProfile) -> int:
    if p.n_odd == 0:
        raise NotCovered("not covered: real-point count needs an odd zero")
    return sum(s.real_points for s in enumerate_strata(p))


def all_odd_closed_form(p: QDProfile) -> int:
    return 2 ** (2 * p.genus - 2) * prod(m + 1 for m in p.mults)


def double_zero_formula(g: int, d: int) -> int:
    """d double zeros plus simple zeros: 2^(6g-6-2d) * sum_k C(d,k) 2^k."""
    return 2 ** (6 * g - 6 - 2 * d) * sum(comb(d, k) * 2 ** k for k in range(d + 1))


def single_even_printed(g: int, d: int) -> int:
    """One zero of order 2d plus simple zeros, as printed: (4d - 3) 2^(6g-6-2d)."""
    return (4 * d - 3) * 2 ** (6 * g - 6 - 2 * d)


def single_even_derived(g: int, d: int) -> int:
    """Stratum sum for the same profile: (2d + 1) 2^(6g-6-2d)."""
    return (2 * d + 1) * 2 ** (6 * g - 6 - 2 * d)


def global_fibre_description(p: QDProfile) -> dict:
    ms = set(p.mults)
    if p.n_even:
        return {
            "type": "no global fibreing",
            "detail": "surjection from a Hecke-parameter bundle over the Prym torsor, not injective",
            "normalisation": "P^1-bundle" if ms <= {1, 2} and p.mults.count(2) == 1 else None,
        }
    k = p.mults.count(3)
    l = p.mults.count(5)
    if ms <= {1, 3}:
        fibre = f"(P^1)^{k}"
    elif ms <= {1, 3, 5}:
        fibre = f"(P^1)^{k} x P(1,1,2)^{l} (up to normalisation)"
    else:
        fibre = "product of compactified Hecke-parameter quotients"
    return {"type": "fibre bundle over twisted Prym torsor", "fibre": fibre}


def single_even_shape(p: QDProfile) -> Optional[int]:
    """d if the profile is one zero of order 2d plus simple zeros, else None."""
    evens = [m for m in p.mults if m % 2 == 0]
    if len(evens) == 1 and all(m == 1 for m in p.mults if m % 2) and p.n_odd:
        return evens[0] // 2
    return None


def report(p: QDProfile) -> dict:
    strata = enumerate_strata(p)
    warnings = []
    for s in strata:
        if not has_saturated_even(p, s.divisor):
            cf = closed_form_r2(p, s.divisor)
            if cf != s.r2:
                warnings.append(f"closed-form r2 {cf} != per-zero r2 {s.r2} at D={s.divisor.coeffs}")
        elif closed_form_r2(p, s.divisor) != s.r2:
            warnings.append(
                f"saturated even zero at D={list(s.divisor.coeffs)}: closed-form r2 "
                f"{closed_form_r2(p, s.divisor)} not used, per-zero r2 {s.r2}"
            )
    total = None
    if p.n_odd:
        total = sum(s.real_points for s in strata)
        if p.n_even == 0 and total != all_odd_closed_form(p):
            warnings.append("real-point total disagrees with the all-odd closed form")
        d = single_even_shape(p)
        if d is not None and single_even_printed(p.genus, d) != total:
            warnings.append(
                f"single even zero of order {2 * d}: stratum sum {total} = (2d+1)2^(6g-6-2d), "
                f"printed closed form (4d-3)2^(6g-6-2d) gives {single_even_printed(p.genus, d)}"
            )
    try:
        cls = classify_components(p)
    except ProfileError as e:
        cls = {"classification": None, "error": str(e)}
    poset = degeneration_poset(p)
    return {
        "profile": {"genus": p.genus, "mults": list(p.mults),
                    "assume_no_global_sqrt": p.assume_no_global_sqrt},
        "numerology": spectral_numerology(p),
        "formulas": {
            "dim": "3g-3-deg(D) = prym_dim + r1 + r2",
            "prym_dim": "g-1+n_odd/2",
            "real_points": "2^(2g-2+n-n0) per stratum",
        },
        "strata": [s.to_json() for s in strata],
        "total_real_points": total,
        "poset_edges": [[list(a), list(b)] for a, b in poset["edges"]],
        "classification": cls,
        "global_fibre": global_fibre_description(p),
        "warnings": warnings,
    }


def partitions(total: int, max_part: Optional[int] = None):
    """Non-increasing tuples of positive integers summing to total."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def all_profiles(max_genus: int):
    for g in range(2, max_genus + 1):
        for mults in partitions(4 * g - 4):
            yield QDProfile.make(g, mults)
