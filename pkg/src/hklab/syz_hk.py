"""Syzygy spaces and Hilbert-Kunz functions of plane-curve rings.

For homogeneous f_1..f_n in R = k[X,Y,Z]/(G) the degree-m multiplication map
``(a_i) -> sum a_i f_i`` from ``+R_{m - d_i}`` to ``R_m`` is assembled as a
dense matrix over F_q.  Its kernel is H^0(Syz(f)(m)) and its cokernel is the
degree-m piece of R/(f).  Summing cokernel dimensions for the bracket powers
f_i^q gives the Hilbert-Kunz function phi(q).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .curvering import CodePoly, PlaneCurve
from .linalg import matmul, nullspace, rank
from .poly import HomogPoly

log = logging.getLogger(__name__)


class NonPrimaryIdealError(ValueError):
    kind = "non_primary_ideal"


class DegenerateFitError(ValueError):
    kind = "degenerate_fit"


@dataclass(frozen=True)
class IdealGens:
    gens: tuple[HomogPoly, ...]

    def __init__(self, gens: Sequence[HomogPoly]):
        gens = tuple(gens)
        if not gens:
            raise ValueError("need at least one generator")
        if any(g.is_zero() for g in gens):
            raise ValueError("zero generator")
        object.__setattr__(self, "gens", gens)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.gens)

    def bracket_power(self, e: int) -> IdealGens:
        return IdealGens([g.p_power(e) for g in self.gens])

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return "(" + ", ".join(repr(g) for g in self.gens) + ")"


def _as_gens(gens) -> IdealGens:
    return gens if isinstance(gens, IdealGens) else IdealGens(gens)


class MultiplicationMap:
    """Degree-wise matrices of ``(a_i) -> sum a_i f_i`` on a curve ring."""

    def __init__(self, curve: PlaneCurve, gens):
        self.curve = curve
        self.gens = _as_gens(gens)
        self.degrees = self.gens.degrees
        self._codes = [curve.to_codes(g) for g in self.gens.gens]
        # normal forms of Z^c * f_k, c < delta, as (j, a, coef) arrays
        self._shifted: list[list[tuple[np.ndarray, np.ndarray, np.ndarray]]] = []
        for f in self._codes:
            per_c = []
            for c in range(curve.delta):
                nf = curve.reduce_codes({(i, j, a + c): v for (i, j, a), v in f.items()})
                keys = list(nf)
                per_c.append(
                    (
                        np.array([k[1] for k in keys], dtype=np.int64),
                        np.array([k[2] for k in keys], dtype=np.int64),
                        np.array([nf[k] for k in keys], dtype=np.int64),
                    )
                )
            self._shifted.append(per_c)

    def source_sizes(self, m: int) -> list[int]:
        return [self.curve.hilbert_function(m - d) for d in self.degrees]

    def matrix(self, m: int) -> np.ndarray:
        curve = self.curve
        nrows = curve.hilbert_function(m)
        sizes = self.source_sizes(m)
        mat = np.zeros((nrows, sum(sizes)), dtype=np.int64)
        if nrows == 0:
            return mat
        offsets_m = curve.basis_offsets(m)
        col0 = 0
        for k, d in enumerate(self.degrees):
            src = m - d
            if src < 0:
                continue
            for c in range(min(curve.delta - 1, src) + 1):
                js, as_, coefs = self._shifted[k][c]
                jprime = np.arange(src - c + 1, dtype=np.int64)
                cols = col0 + curve.basis_offsets(src)[c] + jprime
                rows = offsets_m[as_][:, None] + js[:, None] + jprime[None, :]
                mat[rows, np.broadcast_to(cols, rows.shape)] = coefs[:, None]
            col0 += sizes[k]
        return mat

    def split(self, vec: np.ndarray, m: int) -> tuple[HomogPoly, ...]:
        """Cut a source vector into components a_k in R_{m - d_k}."""
        out = []
        pos = 0
        for d, size in zip(self.degrees, self.source_sizes(m)):
            basis = self.curve.graded_piece(m - d).basis
            terms = {mono: int(c) for mono, c in zip(basis, vec[pos : pos + size]) if c}
            out.append(self.curve.from_codes(terms, max(m - d, 0)) if m - d >= 0 else self.curve.from_codes({}, 0))
            pos += size
        return tuple(out)


def syzygy_space(curve: PlaneCurve, gens, m: int) -> list[tuple[HomogPoly, ...]]:
    """Basis of {(a_i) : a_i in R_{m - d_i}, sum a_i f_i = 0}, verified by multiplication."""
    mm = gens if isinstance(gens, MultiplicationMap) else MultiplicationMap(curve, gens)
    vectors = syzygy_vectors(mm, m)
    return [mm.split(v, m) for v in vectors]


def syzygy_vectors(mm: MultiplicationMap, m: int) -> np.ndarray:
    mat = mm.matrix(m)
    if mat.shape[1] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    basis = nullspace(mm.curve.field, mat)
    if basis.size and np.any(matmul(mm.curve.field, mat, basis.T)):
        raise ArithmeticError("kernel vector is not a syzygy")
    return basis


def syzygy_dimension(curve: PlaneCurve, gens, m: int) -> int:
    mm = gens if isinstance(gens, MultiplicationMap) else MultiplicationMap(curve, gens)
    return len(syzygy_vectors(mm, m))


def _check_power(p: int, q: int) -> int:
    e, r = 0, q
    while r > 1 and r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q = {q} is not a power of p = {p}")
    return e


def colength_piece(curve: PlaneCurve, gens, q: int, m: int) -> int:
    """dim (R/(f_1^q, ..., f_n^q))_m."""
    e = _check_power(curve.field.p, q)
    mm = MultiplicationMap(curve, _as_gens(gens).bracket_power(e))
    return curve.hilbert_function(m) - rank(curve.field, mm.matrix(m))


@dataclass(frozen=True)
class HKRow:
    e: int
    q: int
    phi: int


@dataclass(frozen=True)
class DegreePiece:
    m: int
    hf: int
    rank: int
    source_h0: tuple[int, ...]
    syz_dim: int | None

    @property
    def length(self) -> int:
        return self.hf - self.rank


@dataclass
class HKTable:
    rows: list[HKRow]
    pieces: dict[int, list[DegreePiece]] = field(default_factory=dict)

    def phi(self, q: int) -> int:
        for row in self.rows:
            if row.q == q:
                return row.phi
        raise KeyError(q)

    def to_json(self) -> list[dict]:
        return [{"e": r.e, "q": r.q, "phi": r.phi} for r in self.rows]


def hk_pieces(curve: PlaneCurve, gens, q: int, check_identity: bool = True) -> list[DegreePiece]:
    """Per-degree colengths of the bracket power, stopping at the first zero piece.

    R is generated in degree one, so a vanishing piece stays zero in all
    higher degrees.  With ``check_identity`` the length is also computed as
    h0(m) - sum h0(m - q d_i) + h0(Syz(m)) from an independent kernel basis.
    """
    e = _check_power(curve.field.p, q)
    gens = _as_gens(gens)
    mm = MultiplicationMap(curve, gens.bracket_power(e))
    cap = 3 * q * max(gens.degrees) + 3 * curve.delta
    pieces: list[DegreePiece] = []
    for m in range(cap + 1):
        hf = curve.hilbert_function(m)
        src = tuple(curve.h0(m - d) for d in mm.degrees)
        if sum(src) == 0:
            r, syz = 0, (0 if check_identity else None)
        else:
            mat = mm.matrix(m)
            r = rank(curve.field, mat)
            syz = len(syzygy_vectors(mm, m)) if check_identity else None
        piece = DegreePiece(m, hf, r, src, syz)
        if syz is not None and piece.length != hf - sum(src) + syz:
            raise ArithmeticError(f"alternating-sum identity fails in degree {m}")
        pieces.append(piece)
        if piece.length == 0:
            return pieces
    raise NonPrimaryIdealError(
        f"quotient by the bracket power q={q} is nonzero up to degree {cap}; ideal is not R_+-primary"
    )


def hk_function(curve: PlaneCurve, gens, e_max: int, check_identity: bool = True) -> HKTable:
    if e_max < 0:
        raise ValueError("e_max must be >= 0")
    p = curve.field.p
    table = HKTable([])
    for e in range(e_max + 1):
        q = p**e
        pieces = hk_pieces(curve, gens, q, check_identity)
        phi = sum(pc.length for pc in pieces)
        log.debug("phi(%d) = %d over %d degrees", q, phi, len(pieces))
        table.rows.append(HKRow(e, q, phi))
        table.pieces[e] = pieces
    return table


@dataclass(frozen=True)
class EHKEstimate:
    value: Fraction
    method: str  # "exact_fit" | "extrapolation"
    linear: Fraction
    constant: Fraction
    error_bound: Fraction
    stable: bool
    residuals: tuple[tuple[int, Fraction], ...]

    def to_json(self) -> dict:
        return {
            "num": self.value.numerator,
            "den": self.value.denominator,
            "method": self.method,
            "stable": self.stable,
        }


def ehk_estimate(table: HKTable) -> EHKEstimate:
    """Fit phi(q) = e q^2 + b q + c through the last three rows.

    ``exact_fit`` when the row before them lies on the same quadratic,
    ``extrapolation`` otherwise.  Earlier rows whose residual exceeds the
    fitted linear term |b q| mark the estimate unstable.
    """
    rows = table.rows
    if len(rows) < 3:
        raise DegenerateFitError("need at least three rows")
    pts = [(Fraction(r.q), Fraction(r.phi)) for r in rows[-3:]]
    qs = [q for q, _ in pts]
    if len(set(qs)) < 3:
        raise DegenerateFitError("repeated q values")
    coef = _solve3([[q * q, q, Fraction(1)] for q in qs], [v for _, v in pts])
    e, b, c = coef
    residuals = []
    stable = True
    for r in rows[:-3]:
        res = r.phi - (e * r.q * r.q + b * r.q + c)
        residuals.append((r.q, res))
        if abs(res) > abs(b * r.q):
            stable = False
    exact = len(rows) >= 4 and residuals[-1][1] == 0
    q_last, phi_last = pts[-1]
    err = abs(phi_last / (q_last * q_last) - e)
    return EHKEstimate(e, "exact_fit" if exact else "extrapolation", b, c, err, stable, tuple(residuals))


def _solve3(a: list[list[Fraction]], y: list[Fraction]) -> list[Fraction]:
    m = [row[:] + [v] for row, v in zip(a, y)]
    n = 3
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DegenerateFitError("singular fit")
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * yv for x, yv in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]
