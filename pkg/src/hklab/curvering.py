"""Homogeneous coordinate rings R = k[X,Y,Z]/(G) of plane curves.

G is required to be monic in Z, so R is a free k[X,Y]-module with basis
1, Z, ..., Z^{delta-1}.  Every graded piece R_m then has the monomial basis
``X^i Y^j Z^a`` with ``a < delta``, and normal forms are computed by
rewriting ``Z^delta`` with the curve equation.  The same rewriting works for
Laurent monomials in X and Y, which the Cech module relies on.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .gf import FieldElement, FieldSpec, ParamPoly, embedding
from .linalg import rank
from .poly import HomogPoly, Monomial, monomials_of_degree

CodePoly = dict  # {(i, j, a): int code}


class CurveError(ValueError):
    kind = "curve"


class NotMonicError(CurveError):
    kind = "not_monic"


class SingularCurveError(CurveError):
    kind = "singular_curve"


@dataclass(frozen=True)
class GradedPiece:
    m: int
    basis: tuple[Monomial, ...]


@dataclass(frozen=True)
class SmoothnessResult:
    status: str  # "smooth" | "singular" | "inconclusive"
    witness: tuple[FieldElement, FieldElement, FieldElement] | None = None
    detail: str = ""


class PlaneCurve:
    """A plane curve G = 0 with G monic in Z (after scaling)."""

    def __init__(self, G: HomogPoly, name: str | None = None):
        if G.has_param():
            raise CurveError("curve equation still contains t; specialise the parameter first")
        delta = G.degree
        if delta < 1:
            raise CurveError("curve degree must be at least 1")
        lead = G.coefficient((0, 0, delta))
        if not lead:
            raise NotMonicError(
                f"coefficient of Z^{delta} vanishes; apply a linear change of coordinates "
                "so that (0:0:1) is not on the curve"
            )
        G = G.scalar_mul(lead.inverse())
        self.field: FieldSpec = G.field
        self.G = G
        self.delta = delta
        self.name = name or repr(G)
        spec = self.field
        # Z^delta = -(G - Z^delta)
        self._rel: CodePoly = {
            m: spec.neg(c.code) for m, c in G.terms.items() if m != (0, 0, delta)
        }
        self._zpow: list[CodePoly] = [{(0, 0, a): 1} for a in range(delta)]
        self._lock = threading.Lock()

    @property
    def genus(self) -> int:
        return (self.delta - 1) * (self.delta - 2) // 2

    def __repr__(self):
        return f"PlaneCurve({self.G!r} over {self.field})"

    # -- normal forms ------------------------------------------------------
    def zpow(self, k: int) -> CodePoly:
        """Normal form of Z^k as a code polynomial."""
        if k < len(self._zpow):
            return self._zpow[k]
        with self._lock:
            spec = self.field
            delta = self.delta
            while len(self._zpow) <= k:
                prev = self._zpow[-1]
                nxt: CodePoly = {}
                for (i, j, a), c in prev.items():
                    if a + 1 < delta:
                        key = (i, j, a + 1)
                        nxt[key] = spec.add(nxt.get(key, 0), c)
                    else:
                        for (ri, rj, ra), rc in self._rel.items():
                            key = (i + ri, j + rj, ra)
                            nxt[key] = spec.add(nxt.get(key, 0), spec.mul(c, rc))
                self._zpow.append({m: c for m, c in nxt.items() if c})
        return self._zpow[k]

    def reduce_codes(self, terms: Mapping[Monomial, int]) -> CodePoly:
        """Normal form of a code (Laurent) polynomial."""
        spec = self.field
        out: CodePoly = {}
        for (i, j, a), c in terms.items():
            if not c:
                continue
            if a < self.delta:
                out[(i, j, a)] = spec.add(out.get((i, j, a), 0), c)
                continue
            for (zi, zj, za), zc in self.zpow(a).items():
                key = (i + zi, j + zj, za)
                out[key] = spec.add(out.get(key, 0), spec.mul(c, zc))
        return {m: c for m, c in out.items() if c}

    def reduce_terms(self, terms: Mapping[Monomial, FieldElement | ParamPoly]) -> dict:
        """Normal form of object-coefficient (Laurent) terms."""
        out: dict = {}
        for (i, j, a), c in terms.items():
            if not c:
                continue
            if a < self.delta:
                key = (i, j, a)
                out[key] = out[key] + c if key in out else c
                continue
            for (zi, zj, za), zc in self.zpow(a).items():
                key = (i + zi, j + zj, za)
                val = c * FieldElement(self.field, zc)
                out[key] = out[key] + val if key in out else val
        return {m: c for m, c in out.items() if c}

    def normal_form(self, f: HomogPoly) -> HomogPoly:
        return HomogPoly(f.field, self.reduce_terms(f.terms), f.degree, f.names)

    def to_codes(self, f: HomogPoly) -> CodePoly:
        if f.field != self.field:
            raise ValueError(f"polynomial over {f.field}, curve over {self.field}")
        if f.has_param():
            raise ValueError("parameter coefficients are not allowed here")
        return self.reduce_codes({m: c.code for m, c in f.terms.items()})

    def from_codes(self, terms: CodePoly, degree: int) -> HomogPoly:
        return HomogPoly(self.field, {m: FieldElement(self.field, c) for m, c in terms.items()}, degree, self.G.names)

    # -- graded pieces ------------------------------------------------------
    def hilbert_function(self, m: int) -> int:
        if m < 0:
            return 0
        return sum(m - a + 1 for a in range(min(self.delta - 1, m) + 1))

    def graded_piece(self, m: int) -> GradedPiece:
        if m < 0:
            return GradedPiece(m, ())
        basis = tuple(
            (m - a - j, j, a) for a in range(min(self.delta - 1, m) + 1) for j in range(m - a + 1)
        )
        return GradedPiece(m, basis)

    def basis_offsets(self, m: int) -> np.ndarray:
        """offsets[a] = index of the first basis monomial with Z-exponent a."""
        sizes = [max(m - a + 1, 0) for a in range(self.delta)]
        return np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)

    def basis_index(self, m: int, j: np.ndarray, a: np.ndarray) -> np.ndarray:
        return self.basis_offsets(m)[a] + j

    def h0(self, m: int) -> int:
        return self.hilbert_function(m) if m >= 0 else 0

    def h1(self, m: int) -> int:
        # Serre duality with canonical bundle O(delta - 3)
        return self.h0(self.delta - 3 - m)


# ----------------------------------------------------------------------
# smoothness
# ----------------------------------------------------------------------

def hilbert_function(curve: PlaneCurve, m: int) -> int:
    return curve.hilbert_function(m)


def normal_form(f: HomogPoly, curve: PlaneCurve) -> HomogPoly:
    return curve.normal_form(f)


def h0(curve: PlaneCurve, m: int) -> int:
    return curve.h0(m)


def h1(curve: PlaneCurve, m: int) -> int:
    return curve.h1(m)


def _polyring_quotient_dim(spec: FieldSpec, gens: list[HomogPoly], n: int) -> int:
    """dim of (k[X,Y,Z]/(gens))_n."""
    rows = monomials_of_degree(n)
    index = {m: k for k, m in enumerate(rows)}
    cols = []
    for g in gens:
        if g.is_zero() or g.degree > n:
            continue
        for mu in monomials_of_degree(n - g.degree):
            col = np.zeros(len(rows), dtype=np.int64)
            for (i, j, a), c in g.terms.items():
                col[index[(i + mu[0], j + mu[1], a + mu[2])]] = c.code
            cols.append(col)
    if not cols:
        return len(rows)
    return len(rows) - rank(spec, np.array(cols).T)


def _projective_points(spec: FieldSpec) -> np.ndarray:
    q = spec.q
    ys, zs = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    aff = np.stack([np.ones(q * q, dtype=np.int64), ys.ravel(), zs.ravel()], axis=1)
    line = np.stack([np.zeros(q, dtype=np.int64), np.ones(q, dtype=np.int64), np.arange(q)], axis=1)
    return np.concatenate([aff, line, np.array([[0, 0, 1]])]).astype(np.int64)


def _evaluate(spec: FieldSpec, f: HomogPoly, pts: np.ndarray, coef_map: np.ndarray | None) -> np.ndarray:
    out = np.zeros(len(pts), dtype=np.int64)
    for (i, j, a), c in f.terms.items():
        code = c.code if coef_map is None else int(coef_map[c.code])
        val = np.full(len(pts), code, dtype=np.int64)
        for k, e in enumerate((i, j, a)):
            if e:
                val = spec.vmul(val, spec.vpow(pts[:, k], e))
        out = spec.vadd(out, val)
    return out


def is_smooth_probe(curve: PlaneCurve, max_points: int = 200_000) -> SmoothnessResult:
    """Decide smoothness: Jacobian-ideal test first, then a rational-point search.

    ``smooth`` when (G, dG/dX, dG/dY, dG/dZ) contains every form of degree
    3(delta - 1); ``singular`` with a witness point over F_q or F_{q^2};
    ``inconclusive`` otherwise.
    """
    spec = curve.field
    G = curve.G
    gens = [G] + [G.derivative(k) for k in range(3)]
    bound = 3 * (curve.delta - 1)
    if _polyring_quotient_dim(spec, gens, bound) == 0:
        return SmoothnessResult("smooth", None, f"Jacobian quotient vanishes in degree {bound}")
    for ext in (1, 2):
        big = spec if ext == 1 else FieldSpec.extension(spec.p, spec.d * ext)
        npts = big.q**2 + big.q + 1
        if npts > max_points:
            break
        coef_map = None if ext == 1 else embedding(spec, big)
        pts = _projective_points(big)
        zero = np.ones(len(pts), dtype=bool)
        for g in gens:
            zero &= _evaluate(big, g, pts, coef_map) == 0
        hits = np.nonzero(zero)[0]
        if hits.size:
            pt = tuple(FieldElement(big, int(c)) for c in pts[hits[0]])
            return SmoothnessResult("singular", pt, f"singular point over {big}")
    return SmoothnessResult("inconclusive", None, f"Jacobian quotient nonzero in degree {bound}, no singular point found")
