"""Cech classes in H^1(C, O_C(m)) and the Frobenius action on them.

With the cover {X != 0, Y != 0} (legitimate because G is monic in Z, so the
curve misses (0:0:1)), H^1(O_C(m)) has the monomial basis X^i Y^j Z^a with
i, j <= -1, 0 <= a < delta and i + j + a = m.  Coboundaries are exactly the
monomials with i >= 0 or j >= 0, so a class is reduced by dropping those.

Frobenius raises a representative to the p-th power (coefficients included,
so it is p-linear), rewrites Z^{>= delta} with the curve equation and drops
coboundaries again.  On twist 0 this is encoded by the Hasse-Witt matrix M:
coordinates transform as v -> M v^(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .curvering import PlaneCurve
from .gf import FieldElement, FieldSpec, ParamPoly
from .linalg import matmul, nullspace, rank
from .poly import Monomial, format_poly, parse_laurent


class ClassError(ValueError):
    kind = "cech_class"


class TwistMismatchError(ValueError):
    kind = "twist_mismatch"


def h1_basis(curve: PlaneCurve, m: int) -> list[Monomial]:
    """Monomials X^i Y^j Z^a spanning H^1(O_C(m)), ordered by (a, i)."""
    out = []
    for a in range(curve.delta):
        s = m - a
        out.extend((i, s - i, a) for i in range(s + 1, 0))
    return out


def _canon(c):
    if isinstance(c, ParamPoly) and c.is_constant():
        return c.constant_term()
    return c


def _is_h1_monomial(mono: Monomial, delta: int) -> bool:
    i, j, a = mono
    return i <= -1 and j <= -1 and 0 <= a < delta


class CechClass:
    """A class sum c_k X^i Y^j Z^a in H^1(O_C(m)); coefficients in F_q or F_q[t]."""

    __slots__ = ("curve", "m", "terms")

    def __init__(self, curve: PlaneCurve, m: int, terms: Mapping[Monomial, object]):
        clean = {}
        for mono, c in terms.items():
            mono = tuple(int(x) for x in mono)
            if not _is_h1_monomial(mono, curve.delta):
                raise ClassError(f"{mono} is not an H^1 basis monomial")
            if sum(mono) != m:
                raise ClassError(f"{mono} has degree {sum(mono)}, class twist is {m}")
            if isinstance(c, int):
                c = curve.field.element(c)
            c = _canon(c)
            if c:
                clean[mono] = c
        self.curve = curve
        self.m = m
        self.terms = dict(sorted(clean.items(), key=lambda kv: (kv[0][2], kv[0][0])))

    @classmethod
    def zero(cls, curve: PlaneCurve, m: int) -> CechClass:
        return cls(curve, m, {})

    @classmethod
    def from_vector(cls, curve: PlaneCurve, m: int, vec: Sequence[int]) -> CechClass:
        basis = h1_basis(curve, m)
        if len(vec) != len(basis):
            raise ClassError(f"expected {len(basis)} coordinates")
        return cls(curve, m, {b: FieldElement(curve.field, int(c)) for b, c in zip(basis, vec)})

    def vector(self) -> np.ndarray:
        """Coordinates (codes) on h1_basis; constant coefficients only."""
        out = []
        for b in h1_basis(self.curve, self.m):
            c = self.terms.get(b)
            if c is None:
                out.append(0)
            elif isinstance(c, ParamPoly):
                raise ClassError("class has parameter coefficients")
            else:
                out.append(c.code)
        return np.array(out, dtype=np.int64)

    def has_param(self) -> bool:
        return any(isinstance(c, ParamPoly) for c in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: CechClass):
        if other.curve is not self.curve and other.curve.G != self.curve.G:
            raise ClassError("classes on different curves")
        if other.m != self.m:
            raise TwistMismatchError(f"twists {self.m} and {other.m} differ")

    def __add__(self, other: CechClass) -> CechClass:
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms[mono] + c if mono in terms else c
        return CechClass(self.curve, self.m, terms)

    def __neg__(self):
        return CechClass(self.curve, self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: CechClass) -> CechClass:
        return self + (-other)

    def scale(self, c) -> CechClass:
        return CechClass(self.curve, self.m, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, CechClass):
            return NotImplemented
        return self.m == other.m and self.curve.G == other.curve.G and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return format_poly(self.terms, self.curve.G.names)


def parse_class(text: str, curve: PlaneCurve, m: int | None = None) -> CechClass:
    """Parse e.g. ``a*Z^3/(X^2*Y) + 2*Z^2/(X*Y)``; ``a`` is the field generator."""
    terms, _ = parse_laurent(text, curve.field)
    if m is None:
        degs = {sum(mono) for mono in terms}
        if len(degs) > 1:
            raise ClassError("terms of different degrees")
        m = degs.pop() if degs else 0
    reduced = curve.reduce_terms(terms)
    kept = {k: v for k, v in reduced.items() if k[0] <= -1 and k[1] <= -1}
    return CechClass(curve, m, kept)


def frobenius_on_class(cls: CechClass, e: int = 1) -> CechClass:
    """Apply the absolute Frobenius e times; twist m becomes p^e m."""
    curve = cls.curve
    p = curve.field.p
    for _ in range(e):
        raised = {(p * i, p * j, p * a): c.frobenius(1) for (i, j, a), c in cls.terms.items()}
        reduced = curve.reduce_terms(raised)
        kept = {k: v for k, v in reduced.items() if k[0] <= -1 and k[1] <= -1}
        cls = CechClass(curve, p * cls.m, kept)
    return cls


@dataclass(frozen=True)
class HasseWitt:
    field: FieldSpec
    matrix: np.ndarray  # g x g codes; column k = F(basis_k)
    p_rank: int
    iterate: np.ndarray  # M M^(p) ... M^(p^{g-1})

    @property
    def semisimple_dim(self) -> int:
        return self.p_rank

    @property
    def genus(self) -> int:
        return self.matrix.shape[0]

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Coordinates of F(v) from coordinates of v."""
        if self.genus == 0:
            return np.zeros(0, dtype=np.int64)
        return matmul(self.field, self.matrix, self.field.vfrob(np.asarray(vec, dtype=np.int64))[:, None])[:, 0]

    def to_json(self) -> dict:
        return {
            "matrix": [[list(self.field.decode(int(c))) for c in row] for row in self.matrix],
            "p_rank": self.p_rank,
            "semisimple_dim": self.semisimple_dim,
        }


def frobenius_matrix(curve: PlaneCurve, m: int = 0) -> np.ndarray:
    """Matrix of Frobenius from H^1(O(m)) to H^1(O(pm)) on the monomial bases."""
    src = h1_basis(curve, m)
    p = curve.field.p
    dst = h1_basis(curve, p * m)
    index = {b: k for k, b in enumerate(dst)}
    mat = np.zeros((len(dst), len(src)), dtype=np.int64)
    one = curve.field.one()
    for k, b in enumerate(src):
        img = frobenius_on_class(CechClass(curve, m, {b: one}))
        for mono, c in img.terms.items():
            mat[index[mono], k] = c.code
    return mat


def twisted_iterate(spec: FieldSpec, mat: np.ndarray, n: int) -> np.ndarray:
    """M M^(p) ... M^(p^{n-1}), the matrix of F^n up to v -> v^(p^n)."""
    g = mat.shape[0]
    out = np.eye(g, dtype=np.int64)
    for k in range(n):
        out = matmul(spec, out, spec.vfrob(mat, k))
    return out


def hasse_witt(curve: PlaneCurve) -> HasseWitt:
    spec = curve.field
    mat = frobenius_matrix(curve, 0)
    g = mat.shape[0]
    if g == 0:
        return HasseWitt(spec, mat, 0, mat)
    it = twisted_iterate(spec, mat, g)
    return HasseWitt(spec, mat, rank(spec, it), it)


def p_rank(curve: PlaneCurve) -> int:
    return hasse_witt(curve).p_rank


def fixed_classes(curve: PlaneCurve) -> list[CechClass]:
    """F_p-basis of {v in H^1(O_C) : F v = v}.

    v -> M v^(p) - v is F_p-linear on H^1(O_C) viewed as F_p^{d g}; its
    kernel is computed over F_p and every returned class is re-checked.
    """
    hw = hasse_witt(curve)
    spec = curve.field
    g, d, p = hw.genus, spec.d, spec.p
    if g == 0:
        return []
    prime = FieldSpec.prime(p)
    cols = []
    for k in range(g):
        for l in range(d):
            v = np.zeros(g, dtype=np.int64)
            v[k] = p**l
            img = spec.vsub(hw.apply(v), v)
            cols.append([x for code in img for x in spec.decode(int(code))])
    lin = np.array(cols, dtype=np.int64).T
    out = []
    for sol in nullspace(prime, lin):
        vec = [spec.encode(sol[k * d : (k + 1) * d]) for k in range(g)]
        cls = CechClass.from_vector(curve, 0, vec)
        if frobenius_on_class(cls) != cls:
            raise ArithmeticError("fixed-point solution is not fixed")
        out.append(cls)
    return out


def _independent(v: CechClass, w: CechClass) -> bool:
    spec = v.curve.field
    return rank(spec, np.stack([v.vector(), w.vector()])) == 2


def flat_class(v: CechClass, w: CechClass) -> CechClass:
    """c = v + t w for Frobenius-fixed, independent v and w."""
    if v.has_param() or w.has_param():
        raise ClassError("v and w must have constant coefficients")
    v._check(w)
    for name, x in (("v", v), ("w", w)):
        if frobenius_on_class(x) != x:
            raise ClassError(f"{name} is not fixed by Frobenius")
    if not _independent(v, w):
        raise ClassError("v and w are linearly dependent")
    return v + w.scale(ParamPoly.t(v.curve.field))


def param_class(v: CechClass, w: CechClass, k: int) -> CechClass:
    """v + t^k w."""
    return v + w.scale(ParamPoly.t(v.curve.field, k))


def orbit(cls: CechClass, steps: int) -> list[CechClass]:
    """[c, F c, ..., F^steps c]."""
    out = [cls]
    for _ in range(steps):
        out.append(frobenius_on_class(out[-1]))
    return out


def descends(v: CechClass, w: CechClass, k: int) -> bool:
    """Frobenius takes v + t^k w to v + t^(kp) w.

    This is the exponent re-indexing that stands in for t^(1/p^n): the class
    with exponent k is the pull-back of the one with exponent k/p.
    """
    p = v.curve.field.p
    return frobenius_on_class(param_class(v, w, k)) == param_class(v, w, k * p)


def _ratio(a, b):
    """Constant lam with a = lam * b, or None."""
    if isinstance(a, ParamPoly) or isinstance(b, ParamPoly):
        base = (a if isinstance(a, ParamPoly) else b).base
        pa = a if isinstance(a, ParamPoly) else ParamPoly.constant(a)
        pb = b if isinstance(b, ParamPoly) else ParamPoly.constant(b)
        ka, ca = pa.leading()
        kb, cb = pb.leading()
        if ka != kb:
            return None
        lam = ca / cb
        return lam if pa == pb * lam else None
    return a / b


def projectively_equal(c1: CechClass, c2: CechClass):
    """Nonzero constant lam with c1 = lam c2, or None."""
    c1._check(c2)
    if c1.terms.keys() != c2.terms.keys():
        return None
    if not c1.terms:
        return c1.curve.field.one()
    first = next(iter(c1.terms))
    lam = _ratio(c1.terms[first], c2.terms[first])
    if lam is None or not lam:
        return None
    return lam if c1 == c2.scale(lam) else None


def detect_repetition(classes: Sequence[CechClass]) -> tuple[int, int] | None:
    """First pair (s, t), s < t, of projectively equal classes (in t-major order)."""
    if classes:
        ms = {c.m for c in classes}
        if len(ms) > 1:
            raise TwistMismatchError(
                f"classes live in twists {sorted(ms)}; repetition is only decided for equal twists"
            )
    for t in range(1, len(classes)):
        for s in range(t):
            if projectively_equal(classes[t], classes[s]) is not None:
                return s, t
    return None


def extension_splits(curve: PlaneCurve, m: int, cls: CechClass | None = None) -> bool:
    """Whether an extension with class in H^1(O_C(m)) is split."""
    if curve.h1(m) == 0:
        return True
    return cls is not None and cls.is_zero()
