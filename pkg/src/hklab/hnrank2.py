"""Semistability and Harder-Narasimhan data of rank-2 syzygy bundles.

``S = Syz(f_1, f_2, f_3)(m0)`` on a smooth plane curve of degree delta has
rank 2 and degree ``D = (2 m0 - sum d_i) delta``.  A global section of
``S(m)`` is a syzygy of total degree ``m0 + m``; it spans a line subsheaf
whose saturation has degree ``-m delta + z`` with ``z`` the length of the
section's zero scheme.  S is unstable iff some saturation has degree > D/2,
and such a subbundle is unique, so the first one met is the HN piece.

Completeness: a line subbundle L of degree at least floor(D/2) + 1 has a
section after twisting by any m with deg L + m delta >= g (Riemann-Roch),
so scanning twists up to the least such m sees it.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curvering import PlaneCurve
from .linalg import rank
from .poly import HomogPoly
from .syz_hk import IdealGens, MultiplicationMap, _as_gens, syzygy_vectors

log = logging.getLogger(__name__)

ENUMERATION_CAP = 10_000


class UnsupportedError(ValueError):
    kind = "unsupported"


class VanishingWindowError(ArithmeticError):
    kind = "vanishing_window"


@dataclass(frozen=True)
class SyzBundle:
    curve: PlaneCurve
    gens: IdealGens
    twist: int

    def __init__(self, curve: PlaneCurve, gens, twist: int):
        gens = _as_gens(gens)
        if len(gens) != 3:
            raise UnsupportedError("only rank-2 syzygy bundles (three generators) are supported")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "twist", twist)

    @property
    def rank(self) -> int:
        return 2

    @property
    def degree(self) -> int:
        return (2 * self.twist - sum(self.gens.degrees)) * self.curve.delta

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, 2)

    def pullback(self, e: int) -> SyzBundle:
        p = self.curve.field.p
        return SyzBundle(self.curve, self.gens.bracket_power(e), self.twist * p**e)

    def completeness_twist(self) -> int:
        """Least m with floor(D/2) + 1 + m delta >= genus."""
        need = self.curve.genus - (self.degree // 2 + 1)
        return -((-need) // self.curve.delta)

    def first_twist(self) -> int:
        """No nonzero syzygy exists below the second-smallest generator degree."""
        return sorted(self.gens.degrees)[1] - self.twist


@dataclass
class HNData:
    verdict: str  # "semistable" | "destabilized" | "inconclusive"
    degree: int
    destabilizing_twist: int | None = None
    section: tuple[HomogPoly, ...] | None = None
    section_vector: list[int] | None = None
    vanishing_degree: int | None = None
    sub_degree: int | None = None
    scanned: dict[int, int] = field(default_factory=dict)  # twist -> h0
    partial_twists: tuple[int, ...] = ()

    @property
    def alpha(self) -> int | None:
        if self.sub_degree is None:
            return None
        a = Fraction(2 * self.sub_degree - self.degree, 2)
        return int(a) if a.denominator == 1 else a

    @property
    def quotient_degree(self) -> int | None:
        return None if self.sub_degree is None else self.degree - self.sub_degree

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree": self.degree,
            "destabilizing_twist": self.destabilizing_twist,
            "section": None if self.section is None else [repr(s) for s in self.section],
            "section_vector": self.section_vector,
            "vanishing_degree": self.vanishing_degree,
            "sub_degree": self.sub_degree,
            "quotient_degree": self.quotient_degree,
            "alpha": None if self.alpha is None else str(self.alpha),
            "h0": {str(k): v for k, v in sorted(self.scanned.items())},
            "partial_twists": list(self.partial_twists),
        }


def min_section_twist(bundle: SyzBundle, m_max: int, m_min: int | None = None) -> tuple[dict[int, int], int | None]:
    """h0(S(m)) for m in [m_min, m_max] and the least m with a section."""
    mm = MultiplicationMap(bundle.curve, bundle.gens)
    lo = bundle.first_twist() if m_min is None else m_min
    table: dict[int, int] = {}
    first = None
    for m in range(lo, m_max + 1):
        table[m] = len(syzygy_vectors(mm, bundle.twist + m))
        if first is None and table[m]:
            first = m
    return table, first


def _quotient_dims(curve: PlaneCurve, comps, lo: int, hi: int) -> list[int]:
    mm = MultiplicationMap(curve, comps)
    return [curve.hilbert_function(n) - rank(curve.field, mm.matrix(n)) for n in range(lo, hi + 1)]


def vanishing_degree(curve: PlaneCurve, section) -> int:
    """Length of the common zero scheme of the components of a section.

    Read off as the eventually constant value of dim (R/(a, b, c))_N,
    confirmed on delta + 1 consecutive degrees.
    """
    comps = [s for s in section if not s.is_zero()]
    if not comps:
        raise ValueError("zero section")
    delta = curve.delta
    start = max(s.degree for s in comps) + delta
    cap = start + 4 * max(s.degree for s in comps) + 4 * delta
    dims = _quotient_dims(curve, comps, start, start + delta)
    n = start + delta
    while len(set(dims[-(delta + 1) :])) != 1:
        n += 1
        if n > cap:
            raise VanishingWindowError(f"quotient dimensions not stable up to degree {cap}")
        dims += _quotient_dims(curve, comps, n, n)
    return dims[-1]


def _projective_reps(spec, h: int):
    """One representative per projective point of F_q^h (first nonzero = 1)."""
    q = spec.q
    for lead in range(h):
        for tail in itertools.product(range(q), repeat=h - lead - 1):
            yield (0,) * lead + (1,) + tail


def _combine(spec, coeffs, basis: np.ndarray) -> np.ndarray:
    out = np.zeros(basis.shape[1], dtype=np.int64)
    for c, row in zip(coeffs, basis):
        if c:
            out = spec.vadd(out, spec.vmul(np.full_like(row, c), row))
    return out


def semistable_rank2(bundle: SyzBundle, cap: int = ENUMERATION_CAP) -> HNData:
    curve = bundle.curve
    spec = curve.field
    delta = curve.delta
    D = bundle.degree
    mm = MultiplicationMap(curve, bundle.gens)
    data = HNData("semistable", D)
    partial = []
    top = bundle.completeness_twist()
    for m in range(bundle.first_twist(), top + 1):
        basis = syzygy_vectors(mm, bundle.twist + m)
        h = len(basis)
        data.scanned[m] = h
        if h == 0:
            continue
        n_proj = (spec.q**h - 1) // (spec.q - 1)
        if n_proj <= cap:
            candidates = (_combine(spec, c, basis) for c in _projective_reps(spec, h))
        else:
            partial.append(m)
            candidates = iter(basis)
        for vec in candidates:
            section = mm.split(vec, bundle.twist + m)
            z = vanishing_degree(curve, section)
            sub = -m * delta + z
            if 2 * sub > D:
                data.verdict = "destabilized"
                data.destabilizing_twist = m
                data.section = section
                data.section_vector = [int(x) for x in vec]
                data.vanishing_degree = z
                data.sub_degree = sub
                data.scanned = dict(data.scanned)
                data.partial_twists = tuple(partial)
                return data
    data.partial_twists = tuple(partial)
    if partial:
        data.verdict = "inconclusive"
    return data


@dataclass
class HNScan:
    p: int
    base_twist: int
    results: list[HNData]
    first_destabilizing: int | None
    compatible: bool
    total_powers: list[int | None]

    def to_json(self) -> dict:
        return {
            "first_destabilizing_e": self.first_destabilizing,
            "frobenius_compatible": self.compatible,
            "steps": [
                {"e": e, "p^e": self.p**e, "twist": self.base_twist * self.p**e, "bracket_power": tp, **r.to_json()}
                for e, (r, tp) in enumerate(zip(self.results, self.total_powers))
            ],
        }


def _pure_power(gens: IdealGens) -> int | None:
    """k when gens are (X^k, Y^k, Z^k) in some order, else None."""
    exps = []
    for g in gens.gens:
        if not g.is_monomial():
            return None
        (mono,) = g.terms
        nz = [i for i, x in enumerate(mono) if x]
        if len(nz) != 1:
            return None
        exps.append((nz[0], mono[nz[0]]))
    if sorted(v for v, _ in exps) != [0, 1, 2] or len({k for _, k in exps}) != 1:
        return None
    return exps[0][1]


def strong_hn_scan(curve: PlaneCurve, gens, e_max: int, twist: int | None = None, cap: int = ENUMERATION_CAP) -> HNScan:
    """Decide semistability of Syz(gens^[p^e])(twist * p^e) for e = 0..e_max.

    ``twist`` defaults to floor(sum(d_i)/2); verdicts and alpha do not depend on it.
    The ``bracket_power`` metadata gives the exponent on (X, Y, Z) reached at
    each step when the generators are pure powers, which is the q that
    ehk_from_hn expects.
    """
    if e_max < 0:
        raise ValueError("e_max must be >= 0")
    gens = _as_gens(gens)
    if twist is None:
        twist = sum(gens.degrees) // 2
    base = SyzBundle(curve, gens, twist)
    p = curve.field.p
    k = _pure_power(gens)
    results, powers = [], []
    first = None
    compatible = True
    for e in range(e_max + 1):
        res = semistable_rank2(base.pullback(e), cap)
        results.append(res)
        powers.append(None if k is None else k * p**e)
        if res.verdict == "destabilized" and first is None:
            first = e
        if e and results[e - 1].verdict == "destabilized":
            prev = results[e - 1]
            if res.verdict != "destabilized" or res.alpha != p * prev.alpha:
                compatible = False
        log.debug("e=%d verdict=%s alpha=%s", e, res.verdict, res.alpha)
    return HNScan(p, twist, results, first, compatible, powers)


def ehk_from_hn(delta: int, alpha, q: int) -> Fraction:
    """3 + (2 alpha / q)^2 / (4 delta) for quartics with (X, Y, Z)-type data."""
    if delta != 4:
        raise UnsupportedError("ehk_from_hn is implemented for quartics only")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if q < 1:
        raise ValueError("q must be positive")
    a = Fraction(alpha)
    return Fraction(3) + (2 * a / q) ** 2 / (4 * delta)
