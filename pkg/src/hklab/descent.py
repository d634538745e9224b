"""Explicit bounds behind Frobenius descent of bundles on curves.

All quantities are exact integers or fractions; the only float is the
convenience value of log2(r b), which is always accompanied by its exact
integer floor and ceiling.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import log2
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Threshold:
    """t = log2(rb): value, exact floor/ceiling, and the least integer e > t."""

    rb: int
    value: float
    floor: int
    ceil: int

    @property
    def least_exponent(self) -> int:
        return self.floor + 1


@dataclass(frozen=True)
class BoundContext:
    r: int
    g: int
    ell: int
    s: int
    k: int
    m: int
    n: int
    c: int
    deg_E: int | None = None
    m_gg: int | None = None
    deg_O1: int | None = None
    b: int | None = None
    t_threshold: Threshold | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        if self.t_threshold is not None:
            out["t_threshold"] = {**asdict(self.t_threshold), "least_exponent": self.t_threshold.least_exponent}
        return out


@dataclass
class DescentSequence:
    entries: list[tuple[int, int]] = field(default_factory=list)  # (q_n, e_n)

    def __post_init__(self):
        for q, e in self.entries:
            if q < 2 or not _is_prime_power(q):
                raise ValueError(f"{q} is not a prime power")
            if e < 0:
                raise ValueError("descent depth must be >= 0")

    @classmethod
    def parse(cls, text: str) -> DescentSequence:
        """``"4:1,4:2,8:3"`` -> [(4, 1), (4, 2), (8, 3)]."""
        entries = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            q, _, e = part.partition(":")
            entries.append((int(q), int(e)))
        return cls(entries)


def _is_prime_power(q: int) -> bool:
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return q > 1


def mu_max_bound(deg_E: int, r: int, m_gg: int, deg_O1: int) -> int:
    """b = max(0, deg E) + r m deg O(1)."""
    if r < 1 or m_gg < 0 or deg_O1 < 1:
        raise ValueError("need r >= 1, m_gg >= 0, deg_O1 >= 1")
    return max(0, deg_E) + r * m_gg * deg_O1


def descent_threshold(r: int, b: int) -> Threshold:
    rb = r * b
    if rb < 1:
        raise ValueError("r*b must be >= 1")
    fl = rb.bit_length() - 1
    ce = (rb - 1).bit_length()
    return Threshold(rb, log2(rb), fl, ce)


def count_constant(r: int, g: int, ell: int | None = None) -> BoundContext:
    """Intermediates of the bundle-count exponent c = n m s.

    ell defaults to 2g, the least integer above 2g - 1.
    """
    if g < 2:
        raise ValueError("count_constant needs genus >= 2")
    if r < 1:
        raise ValueError("rank must be >= 1")
    ell = 2 * g if ell is None else ell
    if ell <= 2 * g - 1:
        raise ValueError("ell must exceed 2g - 1")
    s = r * ell + r * (1 - g)
    k = ell * (s + 1)
    m = -ell * s + (s - r) * k + (s - r) * (1 - g)
    n = ell * s + 1 - g
    return BoundContext(r, g, ell, s, k, m, n, n * m * s)


def bound_context(r: int, g: int, deg_E: int, m_gg: int, deg_O1: int) -> BoundContext:
    base = count_constant(r, g)
    b = mu_max_bound(deg_E, r, m_gg, deg_O1)
    return BoundContext(
        **{k: getattr(base, k) for k in ("r", "g", "ell", "s", "k", "m", "n", "c")},
        deg_E=deg_E,
        m_gg=m_gg,
        deg_O1=deg_O1,
        b=b,
        t_threshold=descent_threshold(r, b),
    )


def bundle_count_bound(field_size: int, c: int) -> tuple[int, int]:
    """(|K|^c, its bit length)."""
    if field_size < 2:
        raise ValueError("field size must be >= 2")
    if c < 0:
        raise ValueError("c must be >= 0")
    value = field_size**c
    return value, value.bit_length()


@dataclass(frozen=True)
class MarginReport:
    margins: tuple[int, ...]
    trigger: int | None


def theorem_margin(seq: DescentSequence | Sequence[tuple[int, int]], c: int, t) -> MarginReport:
    """Margins e_n - q_n^c and the first index with margin >= t.

    ``t`` may be a Threshold (compared exactly via its ceiling) or a number.
    """
    entries = seq.entries if isinstance(seq, DescentSequence) else list(seq)
    need = t.ceil if isinstance(t, Threshold) else t
    margins = []
    trigger = None
    for idx, (q, e) in enumerate(entries):
        margin = e - q**c
        margins.append(margin)
        if trigger is None and margin >= need:
            trigger = idx
    return MarginReport(tuple(margins), trigger)


@dataclass(frozen=True)
class Window:
    size: int
    forced: bool


def pigeonhole_window(e_n: int, t, count_bound: int) -> Window:
    """Repetition among pull-backs is forced iff e_n - t >= count_bound."""
    size = e_n - t
    return Window(size, size >= count_bound)


def constant_point_sequence(q: int, length: int) -> DescentSequence:
    """(q, n) for n = 0..length-1: one closed point with growing depth."""
    return DescentSequence([(q, n) for n in range(length)])


def example_shape_sequence(p: int, exponents: Iterable[int]) -> DescentSequence:
    """e_n = n with residue fields of size p^{a_n}."""
    return DescentSequence([(p**a, n) for n, a in enumerate(exponents)])
