"""Seeded randomized and exhaustive property suites.

Each suite returns a record {suite, seed, cases, checked, failures}; a
failure is a small JSON-able dict describing the offending input.
"""
from __future__ import annotations

import random
from fractions import Fraction as F

from .germ import Germ, order
from .hecke_moduli import (
    ChartId,
    EvenHeckeParam,
    GroupElement,
    HeckeError,
    HeckeParam,
    act,
    canonicalize,
    chart_image,
    chart_inverse_order5,
    chart_preimage,
    charts,
    even_degeneration_type,
    even_extension_datum,
    gluing_check,
    in_chart,
    same_orbit,
    u_coordinate,
)
from .local_higgs import (
    GermMatrix2,
    LocalHiggsData,
    companion_target,
    conjugate,
    default_trunc,
    eigen_twist_orders,
    even_hecke_higgs,
    hecke_higgs,
    normal_form,
    transition_oracle,
    vanishing_divisor,
)
from .strata import (
    HiggsDivisor,
    QDProfile,
    all_odd_closed_form,
    all_profiles,
    closed_form_r2,
    enumerate_strata,
    has_saturated_even,
)
from .wps import WPSPoint, is_orbifold_singular

# generators -----------------------------------------------------------------

def rand_q(rng: random.Random, nonzero: bool = False) -> F:
    while True:
        c = F(rng.randint(-4, 4), rng.choice((1, 1, 1, 2, 3)))
        if c or not nonzero:
            return c


def rand_germ(rng, trunc, parity=None, start=0, lead_nonzero=False) -> Germ:
    terms = {}
    for k in range(start, trunc):
        if parity is not None and k % 2 != parity:
            continue
        terms[k] = rand_q(rng, nonzero=lead_nonzero and not terms)
    return Germ.from_dict(terms, trunc)


def rand_even_unit(rng, trunc) -> Germ:
    g = rand_germ(rng, trunc, parity=0)
    return Germ.from_dict({**g.terms(), 0: rand_q(rng, nonzero=True)}, trunc)


def rand_hecke_pair(rng, d: int, trunc: int | None = None):
    """Parity-valid (a, b) with min order n uniform in 0..(d-1)/2."""
    T = trunc or 2 * d + 4
    n = rng.randint(0, (d - 1) // 2)
    lead = rand_germ(rng, T, parity=n % 2, start=n, lead_nonzero=True)
    if rng.random() < 0.15:
        other = Germ.zero(T)
    else:
        # the other side only matters mod z^(d-n); keep that representative
        other = Germ.from_dict(
            rand_germ(rng, d - n, parity=(n + 1) % 2, start=n + 1).terms(), T)
    return (other, lead) if n % 2 == 0 else (lead, other)


def rand_member(rng, d: int, chart: ChartId) -> HeckeParam:
    """Random parameter lying in ``chart``."""
    x = {}
    if chart.kind == "V":
        x[chart.n] = rand_q(rng, nonzero=True)
        for i in range(chart.n + 1, d):
            x[i] = rand_q(rng) if rng.random() < 0.7 else F(0)
        return HeckeParam.from_coeffs(d, x)
    K, n, l = chart.lead, chart.n, chart.l
    if chart.kind == "N":
        ot = n if rng.random() < 0.6 else rng.choice([i for i in range(l + 1, d + 2) if i % 2 == n % 2])
    else:
        # t of order l only keeps x_K inside the window when K < d - l
        ot = rng.choice((n, l)) if K < d - l else n
    for i in range(K, d):
        if i % 2 == K % 2:
            x[i] = rand_q(rng, nonzero=(i == K))
    for i in range(ot, d):
        if i % 2 == n % 2:
            x[i] = rand_q(rng, nonzero=(i == ot)) if rng.random() < 0.8 or i == ot else F(0)
    return HeckeParam.from_coeffs(d, x)


def rand_sl2(rng, trunc) -> GermMatrix2:
    """Product of unipotent germ matrices and a constant diagonal, det 1."""
    g = GermMatrix2.identity(trunc)
    for _ in range(2):
        x = rand_germ(rng, trunc)
        g = g * GermMatrix2.of(Germ.one(trunc), x, Germ.zero(trunc), Germ.one(trunc))
        y = rand_germ(rng, trunc)
        g = g * GermMatrix2.of(Germ.one(trunc), Germ.zero(trunc), y, Germ.one(trunc))
    c = rand_q(rng, nonzero=True)
    return g * GermMatrix2.constant(((c, 0), (0, 1 / c)), trunc)


def companion(D: int, lam: int, unit: Germ) -> GermMatrix2:
    t = unit.trunc
    return GermMatrix2.of(
        Germ.zero(t), Germ.monomial(D, t), unit.shift(2 * lam - D), Germ.zero(t)
    )


def _record(name, seed, cases, checked, failures):
    return {"suite": name, "seed": seed, "cases": cases, "checked": checked,
            "failures": failures, "pass": not failures}


# suites ---------------------------------------------------------------------

def suite_conjugation(seed=0, cases=500):
    rng = random.Random(seed)
    fails, checked = [], 0
    for i in range(cases):
        d = rng.choice((3, 5, 7, 9))
        a, b = rand_hecke_pair(rng, d)
        m = hecke_higgs(d, a, b)
        o = transition_oracle(d, a, b)
        checked += 1
        if not m.agrees(o):
            fails.append({"case": i, "d": d, "a": str(a), "b": str(b)})
    return _record("conjugation", seed, cases, checked, fails)


def suite_normal_form(seed=0, cases=100, max_lambda=6):
    rng = random.Random(seed)
    fails, checked = [], 0
    for lam in range(0, max_lambda + 1):
        for D in range(0, lam + 1):
            t = default_trunc(lam)
            for i in range(cases):
                unit = rand_even_unit(rng, t) if rng.random() < 0.5 else (
                    Germ.from_dict({**rand_germ(rng, t).terms(), 0: rand_q(rng, nonzero=True)}, t))
                phi = companion(D, lam, unit)
                g = rand_sl2(rng, t)
                scr = conjugate(phi, g)
                got_D, got_lam, gauge = normal_form(LocalHiggsData(scr, lam))
                nf = conjugate(scr, gauge)
                target = companion_target(scr, got_D)
                checked += 1
                ok = (got_D, got_lam) == (D, lam) and nf.agrees(target, min(nf.trunc, target.trunc))
                if not ok:
                    fails.append({"D": D, "lambda": lam, "case": i, "got": [got_D, got_lam]})
    return _record("normal-form", seed, cases, checked, fails)


def suite_landing(seed=0, cases=300):
    rng = random.Random(seed)
    fails, checked = [], 0
    for i in range(cases):
        d = rng.choice((3, 5, 7, 9))
        a, b = rand_hecke_pair(rng, d)
        n = int(min(order(a), order(b)))
        m = hecke_higgs(d, a, b)
        vd = vanishing_divisor(m)
        plus, minus = eigen_twist_orders(m, d)
        checked += 1
        if vd != 2 * n or plus != n:
            fails.append({"case": i, "d": d, "n": n, "vd": vd, "plus": plus, "minus": minus})
    return _record("landing", seed, cases, checked, fails)


def suite_orbit_invariance(seed=0, cases=200, max_d=9):
    rng = random.Random(seed)
    fails, checked = [], 0
    for d in range(3, max_d + 1, 2):
        for c in charts(d):
            for i in range(cases):
                p = rand_member(rng, d, c)
                g = GroupElement.make(rand_even_unit(rng, d), d)
                q = act(g, p)
                checked += 1
                if c.kind == "V" and 2 * c.n < d - 1:
                    if u_coordinate(p) != u_coordinate(q):
                        fails.append({"chart": c.label(), "case": i, "what": "u not invariant"})
                y = chart_image(c, p)
                if not in_chart(c, q) or chart_image(c, q) != y:
                    fails.append({"chart": c.label(), "case": i, "what": "image not invariant"})
                if is_orbifold_singular(y):
                    fails.append({"chart": c.label(), "case": i, "what": "orbifold singular image"})
    return _record("orbit-invariance", seed, cases, checked, fails)


def suite_separation(seed=0, cases=200, max_d=9):
    """Distinct orbits in one chart get distinct images (perturb one coefficient)."""
    rng = random.Random(seed)
    fails, checked = [], 0
    for d in range(3, max_d + 1, 2):
        for c in charts(d):
            if c.kind == "V" and 2 * c.n == d - 1:
                continue  # point stratum
            done = 0
            tries = 0
            while done < cases and tries < 20 * cases:
                tries += 1
                p = rand_member(rng, d, c)
                x = {i: p.x(i) for i in range(d)}
                j = rng.randrange(0, d)
                x[j] = x[j] + rand_q(rng, nonzero=True)
                try:
                    q = HeckeParam.from_coeffs(d, x)
                except HeckeError:
                    continue
                if not in_chart(c, q) or same_orbit(p, q):
                    continue
                done += 1
                checked += 1
                if chart_image(c, p) == chart_image(c, q):
                    fails.append({"chart": c.label(), "p": p.to_json(), "q": q.to_json()})
    return _record("separation", seed, cases, checked, fails)


def suite_glue_order5(seed=0, cases=200):
    rng = random.Random(seed)
    fails, checked = [], 0
    chart = ChartId("N", 0, 1)
    for i in range(cases):
        y = WPSPoint.make((1, 1, 2), (rand_q(rng), rand_q(rng, nonzero=True), rand_q(rng)))
        p = chart_inverse_order5(y)
        back = chart_image(chart, p)
        p2 = chart_preimage(chart, back, 5)
        checked += 1
        if back != y or p2 is None or not same_orbit(p, p2):
            fails.append({"case": i, "y": str(y)})
    bottom = chart_inverse_order5(WPSPoint.make((1, 1, 2), (0, 0, 1)))
    if bottom.n != 2:
        fails.append({"case": "bottom", "got": bottom.to_json()})
    return _record("glue-order5", seed, cases, checked + 1, fails)


def overlap_pairs(d: int):
    cs = charts(d)
    return [(a, b) for i, a in enumerate(cs) for b in cs[i + 1:]]


def suite_gluing(seed=0, cases=100, ds=(5, 7)):
    rng = random.Random(seed)
    fails, checked = [], 0
    empty = []
    for d in ds:
        for c1, c2 in overlap_pairs(d):
            found = 0
            for _ in range(40 * cases):
                if found >= cases:
                    break
                p = rand_member(rng, d, c1 if rng.random() < 0.5 else c2)
                if not (in_chart(c1, p) and in_chart(c2, p)):
                    continue
                found += 1
                checked += 1
                rep = gluing_check(c1, c2, p)
                if not rep["pass"]:
                    fails.append(rep)
            if not found:
                empty.append([d, c1.label(), c2.label()])
    rec = _record("gluing", seed, cases, checked, fails)
    rec["disjoint_pairs"] = empty
    return rec


def suite_counting(seed=0, cases=0, max_genus=5):
    fails, checked = [], 0
    for p in all_profiles(max_genus):
        strata = enumerate_strata(p)
        for s in strata:
            checked += 1
            if not (s.dim == 3 * p.genus - 3 - s.deg == s.prym_dim + s.r1 + s.r2 and s.r1 >= 0 and s.r2 >= 0):
                fails.append({"profile": list(p.mults), "D": list(s.divisor.coeffs)})
            if not has_saturated_even(p, s.divisor) and closed_form_r2(p, s.divisor) != s.r2:
                fails.append({"profile": list(p.mults), "D": list(s.divisor.coeffs), "what": "r2"})
        expected = 1
        for m in p.mults:
            expected *= m // 2 + 1
        if len(strata) != expected:
            fails.append({"profile": list(p.mults), "what": "stratum count"})
        if p.n_even == 0:
            total = sum(s.real_points for s in strata)
            if total != all_odd_closed_form(p):
                fails.append({"profile": list(p.mults), "what": "real points"})
    return _record("counting", seed, cases, checked, fails)


def suite_eigen_twist(seed=0, cases=100):
    """Order-2 zeros (m = 1 on the cover): a0 = b0 and a0 = -b0 twist opposite sides,
    and the twist orders match the degeneration type."""
    rng = random.Random(seed)
    fails, checked = [], 0
    T = 6
    for i in range(cases):
        b0 = rand_q(rng, nonzero=True)
        sign = rng.choice((1, -1))
        a = Germ.from_dict({**rand_germ(rng, T, start=1).terms(), 0: sign * b0}, T)
        b = Germ.from_dict({**rand_germ(rng, T, start=1).terms(), 0: b0}, T)
        m = even_hecke_higgs(1, a, b)
        plus, minus = eigen_twist_orders(m, 1)
        n, lp, lm = even_degeneration_type(EvenHeckeParam.make(1, a, b))
        checked += 1
        want = (0, 1) if sign == 1 else (1, 0)
        if (plus, minus) != want or (plus, minus) != (n + lm, n + lp):
            fails.append({"case": i, "sign": sign, "got": [plus, minus], "type": [n, lp, lm]})
    return _record("eigen-twist", seed, cases, checked, fails)


def suite_extension_datum(seed=0, cases=100, max_m=4):
    """Datum order (clamped at m) equals the Higgs-divisor coefficient when n = 0."""
    rng = random.Random(seed)
    fails, checked = [], 0
    while checked < cases:
        m = rng.randint(1, max_m)
        T = 2 * m + 4
        b = rand_germ(rng, T, lead_nonzero=True)
        b = Germ.from_dict({**b.terms(), 0: rand_q(rng, nonzero=True)}, T)
        if rng.random() < 0.5:
            # force a = -b mod z^l for a random l
            l = rng.randint(1, m)
            tail = rand_germ(rng, T, start=l)
            a = -b + tail
        else:
            a = rand_germ(rng, T)
        if order(b - a) > 0:
            continue
        p = EvenHeckeParam.make(m, a, b)
        datum = even_extension_datum(p)
        od = min(order(datum), m)
        D = vanishing_divisor(even_hecke_higgs(m, a, b))
        checked += 1
        if od != D:
            fails.append({"m": m, "a": str(a), "b": str(b), "datum_order": od, "D": D})
    return _record("extension-datum", seed, cases, checked, fails)


SUITES = {
    "conjugation": suite_conjugation,
    "normal-form": suite_normal_form,
    "landing": suite_landing,
    "orbit-invariance": suite_orbit_invariance,
    "separation": suite_separation,
    "glue-order5": suite_glue_order5,
    "gluing": suite_gluing,
    "counting": suite_counting,
    "eigen-twist": suite_eigen_twist,
    "extension-datum": suite_extension_datum,
}
