"""Finite fields F_p and F_{p^d}, and the parameter ring F_q[t].

Elements of F_{p^d} = F_p[a]/(modulus) are encoded as integers
``sum(c_i * p**i)`` where ``c_i`` are the coordinates in the power basis
``1, a, ..., a^{d-1}``.  The encoding is what the linear-algebra kernels work
on; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

# log/exp tables are built for fields up to this size
TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    kind = "field"


class MixedFieldError(FieldError):
    kind = "mixed_fields"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# dense polynomials over F_p, little-endian coefficient lists
# ----------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _padd(a, [(-c) % p for c in b], p)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    _trim(a)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        quo[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(quo), a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: Sequence[int], n: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while n:
        if n & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        n >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Ben-Or certificate: gcd(f, X^{p^i} - X) = 1 for 1 <= i <= deg/2."""
    f = _trim([c % p for c in modulus])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, d // 2 + 1):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, x, p), p)) > 1:
            return False
    return True


def find_irreducible(p: int, d: int, dividing: Sequence[int] | None = None) -> tuple[int, ...]:
    """First monic irreducible of degree ``d`` over F_p in lexicographic order.

    Candidates ``X^d + c_{d-1} X^{d-1} + ... + c_0`` are ordered by the
    integer ``sum c_i p^i``.  With ``dividing`` set, only divisors of that
    polynomial are accepted (e.g. ``[-2, 0, 0, 0, 1]`` for a fourth root of 2).
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if d < 1:
        raise FieldError("degree must be >= 1")
    target = None if dividing is None else _trim([c % p for c in dividing])
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        cand = low + [1]
        if target is not None and _pdivmod(target, cand, p)[1]:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no monic irreducible of degree {d} over F_{p} divides {dividing}")


# ----------------------------------------------------------------------
# field specification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """F_{p^d} presented as F_p[a]/(modulus); ``modulus`` is little-endian and monic."""

    p: int
    modulus: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) < 2 or mod[-1] != 1:
            raise FieldError(f"modulus {mod} is not monic of degree >= 1")
        if not is_irreducible(mod, self.p):
            raise FieldError(f"modulus {mod} is reducible over F_{self.p}")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p, (0, 1))

    @classmethod
    def extension(cls, p: int, d: int, modulus: Sequence[int] | None = None) -> FieldSpec:
        if d == 1 and modulus is None:
            return cls.prime(p)
        return cls(p, tuple(modulus) if modulus is not None else find_irreducible(p, d))

    @property
    def d(self) -> int:
        return len(self.modulus) - 1

    @property
    def q(self) -> int:
        return self.p**self.d

    @property
    def is_prime_field(self) -> bool:
        return self.d == 1

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        spec = cls(int(obj["p"]), tuple(obj.get("modulus", (0, 1))))
        if "d" in obj and int(obj["d"]) != spec.d:
            raise FieldError("degree does not match modulus")
        return spec

    def __repr__(self) -> str:
        if self.d == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.d}[{self.modulus}]"

    # -- elements ------------------------------------------------------
    def __call__(self, x) -> FieldElement:
        return self.element(x)

    def element(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise MixedFieldError(f"element of {x.spec} used in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, int(x) % self.p)
        return FieldElement(self, self.encode(x))

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def gen(self) -> FieldElement:
        """Class of the indeterminate a; for a prime field this is 0 (modulus X - 0)."""
        if self.d == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> Iterator[FieldElement]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def encode(self, coords: Iterable[int]) -> int:
        coords = [int(c) % self.p for c in coords]
        if len(coords) > self.d:
            raise FieldError(f"{len(coords)} coordinates for degree {self.d}")
        return sum(c * self.p**i for i, c in enumerate(coords))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.p**i) % self.p for i in range(self.d))

    # -- scalar arithmetic on codes -------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= TABLE_LIMIT:
            log, exp = self._tables
            return int(exp[(log[a] + log[b]) % (self.q - 1)])
        prod = _pdivmod(_pmul(self.decode(a), self.decode(b), self.p), self.modulus, self.p)[1]
        return self.encode(prod)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= TABLE_LIMIT:
            log, exp = self._tables
            return int(exp[(-log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.d == 1:
            return pow(a, n, self.p)
        if self.q <= TABLE_LIMIT:
            log, exp = self._tables
            return int(exp[(int(log[a]) * n) % (self.q - 1)])
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def frob(self, a: int, e: int = 1) -> int:
        """a^{p^e}; exponent reduced modulo d since x^{p^d} = x."""
        e %= self.d
        return self.pow(a, self.p**e) if e else a

    # -- tables ----------------------------------------------------------
    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        primitive = self._primitive_code()
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = [1]
        g = self.decode(primitive)
        for k in range(q - 1):
            code = self.encode(x) if x else 0
            exp[k] = code
            log[code] = k
            x = _pdivmod(_pmul(x, g, self.p), self.modulus, self.p)[1]
        return log, exp

    def _primitive_code(self) -> int:
        q = self.q
        factors = _prime_factors(q - 1)
        for code in range(2, q):
            g = self.decode(code)
            if all(
                _ppowmod(g, (q - 1) // r, self.modulus, self.p) != [1] for r in factors
            ):
                return code
        return 1  # q == 2

    @cached_property
    def _reduction(self) -> np.ndarray:
        """(2d-1, d) matrix sending a^k to its power-basis coordinates."""
        d = self.d
        rows = []
        for k in range(2 * d - 1):
            rem = _pdivmod([0] * k + [1], self.modulus, self.p)[1]
            rows.append(rem + [0] * (d - len(rem)))
        return np.array(rows, dtype=np.int64)

    # -- vectorised arithmetic on code arrays -----------------------------
    def _digits(self, a: np.ndarray) -> np.ndarray:
        pw = self.p ** np.arange(self.d, dtype=np.int64)
        return (np.asarray(a, dtype=np.int64)[..., None] // pw) % self.p

    def _undigits(self, dg: np.ndarray) -> np.ndarray:
        pw = self.p ** np.arange(self.d, dtype=np.int64)
        return (dg % self.p) @ pw

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits(self._digits(a) + self._digits(b))

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.d == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._undigits(-self._digits(a))

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            return (a * b) % self.p
        if self.q <= TABLE_LIMIT:
            log, exp = self._tables
            a, b = np.broadcast_arrays(a, b)
            out = exp[(log[a] + log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        da, db = self._digits(a), self._digits(b)
        d = self.d
        conv = np.zeros(np.broadcast_shapes(da.shape[:-1], db.shape[:-1]) + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            conv[..., i : i + d] += da[..., i : i + 1] * db
        return self._undigits((conv % self.p) @ self._reduction)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.d == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        if self.q <= TABLE_LIMIT:
            log, exp = self._tables
            return exp[(-log[a]) % (self.q - 1)]
        return np.array([self.inv(int(x)) for x in a.ravel()], dtype=np.int64).reshape(a.shape)

    def vpow(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.d > 1 and self.q <= TABLE_LIMIT and n > 0:
            log, exp = self._tables
            out = exp[(log[a] * n) % (self.q - 1)]
            return np.where(a == 0, 0, out)
        result = np.ones_like(a)
        base = a
        while n:
            if n & 1:
                result = self.vmul(result, base)
            base = self.vmul(base, base)
            n >>= 1
        return result

    def vfrob(self, a, e: int = 1) -> np.ndarray:
        e %= self.d
        return self.vpow(a, self.p**e) if e else np.asarray(a, dtype=np.int64)


# ----------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------

class FieldElement:
    """An element of a :class:`FieldSpec`; immutable."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coords(self) -> tuple[int, ...]:
        return self.spec.decode(self.code)

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise MixedFieldError(f"cannot combine {self.spec} and {other.spec}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.spec.p
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.code, c))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(c)))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(c, self.spec.inv(self.code)))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.code, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.code))

    def frobenius(self, e: int = 1) -> FieldElement:
        return FieldElement(self.spec, self.spec.frob(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __repr__(self):
        return format_element(self)


def format_element(x: FieldElement, gen: str = "a") -> str:
    coords = x.coords
    if x.spec.d == 1:
        return str(coords[0])
    parts = []
    for i in reversed(range(len(coords))):
        c = coords[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = gen if i == 1 else f"{gen}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch ``op`` in {add, mul, inv, neg}; unary ops ignore ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(x: FieldElement, e: int = 1) -> FieldElement:
    if e < 0:
        raise ValueError("Frobenius exponent must be non-negative")
    return x.frobenius(e)


def embedding(small: FieldSpec, big: FieldSpec) -> np.ndarray:
    """Code table of a field embedding small -> big (requires d_small | d_big)."""
    if small.p != big.p or big.d % small.d:
        raise FieldError(f"{small} does not embed in {big}")
    if small.d == 1:
        return np.arange(small.p, dtype=np.int64)
    # find a root of small.modulus in big by evaluating it on every element
    xs = np.arange(big.q, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(small.modulus):
        acc = big.vadd(big.vmul(acc, xs), np.full_like(xs, c))
    roots = np.nonzero(acc == 0)[0]
    root = int(roots[0])
    table = np.zeros(small.q, dtype=np.int64)
    powers = [1]
    for _ in range(1, small.d):
        powers.append(big.mul(powers[-1], root))
    for code in range(small.q):
        val = 0
        for c, pw in zip(small.decode(code), powers):
            if c:
                val = big.add(val, big.mul(c, pw))
        table[code] = val
    return table


# ----------------------------------------------------------------------
# the parameter ring F_q[t]
# ----------------------------------------------------------------------

class ParamPoly:
    """Sparse polynomial in a free variable t over a finite field."""

    __slots__ = ("base", "_c")

    def __init__(self, base: FieldSpec, coeffs: dict[int, FieldElement | int] | None = None):
        self.base = base
        c: dict[int, int] = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise ValueError("t is never inverted; negative exponent")
            code = base.element(v).code
            if code:
                c[int(k)] = code
        self._c = c

    @classmethod
    def _raw(cls, base: FieldSpec, c: dict[int, int]) -> ParamPoly:
        obj = cls.__new__(cls)
        obj.base = base
        obj._c = {k: v for k, v in c.items() if v}
        return obj

    @classmethod
    def t(cls, base: FieldSpec, k: int = 1) -> ParamPoly:
        return cls._raw(base, {k: 1})

    @classmethod
    def constant(cls, x: FieldElement) -> ParamPoly:
        return cls._raw(x.spec, {0: x.code})

    @property
    def coeffs(self) -> dict[int, FieldElement]:
        return {k: FieldElement(self.base, v) for k, v in sorted(self._c.items())}

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._c)

    def constant_term(self) -> FieldElement:
        return FieldElement(self.base, self._c.get(0, 0))

    def leading(self) -> tuple[int, FieldElement]:
        k = self.degree
        return k, FieldElement(self.base, self._c.get(k, 0))

    def _lift(self, other) -> ParamPoly | None:
        if isinstance(other, ParamPoly):
            if other.base != self.base:
                raise MixedFieldError(f"cannot combine {self.base} and {other.base}")
            return other
        if isinstance(other, (FieldElement, int, np.integer)):
            return ParamPoly._raw(self.base, {0: self.base.element(other).code})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = self.base.add(c.get(k, 0), v)
        return ParamPoly._raw(self.base, c)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw(self.base, {k: self.base.neg(v) for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c: dict[int, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                k = k1 + k2
                c[k] = self.base.add(c.get(k, 0), self.base.mul(v1, v2))
        return ParamPoly._raw(self.base, c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = ParamPoly._raw(self.base, {0: 1})
        for _ in range(n):
            result = result * self
        return result

    def frobenius(self, e: int = 1) -> ParamPoly:
        """Absolute Frobenius: a t^k -> a^{p^e} t^{k p^e}."""
        pe = self.base.p**e
        return ParamPoly._raw(self.base, {k * pe: self.base.frob(v, e) for k, v in self._c.items()})

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, ParamPoly) else other
        if o is None:
            return NotImplemented
        return self.base == o.base and self._c == o._c

    def __hash__(self):
        return hash((self.base, tuple(sorted(self._c.items()))))

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            coef = format_element(FieldElement(self.base, self._c[k]))
            if " + " in coef:
                coef = f"({coef})"
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(coef)
            elif coef == "1":
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)


def absolute_frobenius_param(f: ParamPoly, e: int = 1) -> ParamPoly:
    return f.frobenius(e)

