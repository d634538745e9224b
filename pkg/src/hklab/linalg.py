"""Gaussian elimination over F_q on integer-coded numpy matrices.

Pivoting is deterministic (first nonzero row at or below the current one,
columns left to right) so reduced forms and kernel bases are reproducible.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def _as_matrix(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return a


def rref(spec: FieldSpec, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = _as_matrix(a)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = spec.vmul(a[r], spec.inv(lead))
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = a[others, c][:, None]
            a[others] = spec.vsub(a[others], spec.vmul(factors, a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(spec: FieldSpec, a) -> int:
    """Rank via forward elimination, after peeling off unit columns."""
    a, rank_units = _strip_unit_columns(_as_matrix(a))
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        below = r + 1 + np.nonzero(a[r + 1 :, c])[0]
        if below.size:
            lead_inv = spec.inv(int(a[r, c]))
            factors = spec.vmul(a[below, c], lead_inv)[:, None]
            a[below, c:] = spec.vsub(a[below, c:], spec.vmul(factors, a[r, c:][None, :]))
        r += 1
    return r + rank_units


def _strip_unit_columns(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Remove columns with a single nonzero entry together with their rows.

    Each such column spans a coordinate vector, so the rank of ``a`` is the
    number of distinct rows hit plus the rank of the projection of the
    remaining columns onto the other rows.  Repeated until stable.
    """
    removed = 0
    while a.size:
        nnz = np.count_nonzero(a, axis=0)
        unit = np.nonzero(nnz == 1)[0]
        if unit.size == 0:
            break
        rows = np.unique(np.nonzero(a[:, unit])[0])
        keep_rows = np.setdiff1d(np.arange(a.shape[0]), rows)
        keep_cols = np.nonzero(nnz > 1)[0]
        a = a[np.ix_(keep_rows, keep_cols)]
        removed += rows.size
    return a, removed


def nullspace(spec: FieldSpec, a) -> np.ndarray:
    """Basis of {x : a x = 0} as rows, one per free column, in column order."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("nullspace needs a 2-d matrix")
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots = rref(spec, a)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = spec.vneg(red[: len(pivots)][:, free].T)
    return basis


def matmul(spec: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if spec.d == 1:
        return (a @ b) % spec.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = spec.vadd(out, spec.vmul(a[:, k : k + 1], b[k : k + 1, :]))
    return out
