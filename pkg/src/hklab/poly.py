"""Homogeneous polynomials in three variables over F_q or F_q[t].

Terms are stored sparsely as ``{(i, j, a): coefficient}`` for the monomial
``X^i Y^j Z^a``.  Coefficients are :class:`FieldElement` or :class:`ParamPoly`.
"""

from __future__ import annotations

import ast
from typing import Iterable, Mapping, Union

from .gf import FieldElement, FieldSpec, ParamPoly, format_element

Monomial = tuple[int, int, int]
Coef = Union[FieldElement, ParamPoly]

XYZ = ("X", "Y", "Z")
UVW = ("U", "V", "W")


class DegreeError(ValueError):
    kind = "degree_mismatch"


class ParseError(ValueError):
    kind = "parse"


def monomials_of_degree(m: int) -> list[Monomial]:
    """All exponent triples of total degree m, graded-lex descending (X > Y > Z)."""
    if m < 0:
        return []
    return [(i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1)]


def _is_zero(c) -> bool:
    return not bool(c)


class HomogPoly:
    """A homogeneous polynomial of fixed degree; immutable by convention."""

    __slots__ = ("field", "degree", "terms", "names")

    def __init__(
        self,
        field: FieldSpec,
        terms: Mapping[Monomial, Coef | int],
        degree: int | None = None,
        names: tuple[str, str, str] = XYZ,
    ):
        clean: dict[Monomial, Coef] = {}
        for mono, c in terms.items():
            if isinstance(c, int):
                c = field.element(c)
            if _is_zero(c):
                continue
            mono = tuple(int(e) for e in mono)
            if any(e < 0 for e in mono):
                raise DegreeError(f"negative exponent in {mono}")
            clean[mono] = c
        degrees = {sum(mono) for mono in clean}
        if len(degrees) > 1:
            raise DegreeError(f"not homogeneous: degrees {sorted(degrees)}")
        if degrees:
            (deg,) = degrees
            if degree is not None and degree != deg:
                raise DegreeError(f"declared degree {degree} but terms have degree {deg}")
            degree = deg
        elif degree is None:
            raise DegreeError("zero polynomial needs an explicit degree")
        self.field = field
        self.degree = degree
        self.terms = clean
        self.names = names

    # -- construction helpers ------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec, degree: int, names=XYZ) -> HomogPoly:
        return cls(field, {}, degree, names)

    @classmethod
    def monomial(cls, field: FieldSpec, mono: Monomial, coef: Coef | int = 1, names=XYZ) -> HomogPoly:
        return cls(field, {mono: coef}, sum(mono), names)

    @classmethod
    def variable(cls, field: FieldSpec, k: int, names=XYZ) -> HomogPoly:
        mono = [0, 0, 0]
        mono[k] = 1
        return cls.monomial(field, tuple(mono), 1, names)

    def with_names(self, names) -> HomogPoly:
        return HomogPoly(self.field, self.terms, self.degree, names)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Coef:
        return self.terms.get(tuple(mono), self.field.zero())

    def sorted_terms(self) -> list[tuple[Monomial, Coef]]:
        return sorted(self.terms.items(), reverse=True)

    def has_param(self) -> bool:
        return any(isinstance(c, ParamPoly) for c in self.terms.values())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: HomogPoly):
        if other.field != self.field:
            raise ValueError(f"polynomials over {self.field} and {other.field}")

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise DegreeError(f"cannot add degrees {self.degree} and {other.degree}")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms[mono] + c if mono in terms else c
        return HomogPoly(self.field, terms, self.degree, self.names)

    def __neg__(self):
        return HomogPoly(self.field, {m: -c for m, c in self.terms.items()}, self.degree, self.names)

    def __sub__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, c) -> HomogPoly:
        return HomogPoly(self.field, {m: v * c for m, v in self.terms.items()}, self.degree, self.names)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, ParamPoly, int)):
            return self.scalar_mul(other)
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Coef] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                prod = c1 * c2
                terms[mono] = terms[mono] + prod if mono in terms else prod
        return HomogPoly(self.field, terms, self.degree + other.degree, self.names)

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, ParamPoly, int)):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, n: int) -> HomogPoly:
        if n < 0:
            raise ValueError("negative power")
        result = HomogPoly.monomial(self.field, (0, 0, 0), 1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def p_power(self, e: int = 1) -> HomogPoly:
        """f^{p^e}, computed termwise (Frobenius is additive in characteristic p)."""
        pe = self.field.p**e
        terms = {
            (m[0] * pe, m[1] * pe, m[2] * pe): c.frobenius(e) for m, c in self.terms.items()
        }
        return HomogPoly(self.field, terms, self.degree * pe, self.names)

    def derivative(self, k: int) -> HomogPoly:
        terms = {}
        for mono, c in self.terms.items():
            if mono[k] == 0:
                continue
            new = list(mono)
            new[k] -= 1
            terms[tuple(new)] = c * (mono[k] % self.field.p)
        return HomogPoly(self.field, terms, max(self.degree - 1, 0), self.names)

    def substitute(self, images: Mapping[int, HomogPoly] | Iterable[HomogPoly]) -> HomogPoly:
        return substitute(self, images)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero() and other.is_zero():
            return self.degree == other.degree
        if self.degree != other.degree or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash((self.field, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return format_poly(self.terms, self.names)


def format_monomial(mono: Iterable[int], names=XYZ) -> str:
    num, den = [], []
    for name, e in zip(names, mono):
        if e > 0:
            num.append(name if e == 1 else f"{name}^{e}")
        elif e < 0:
            den.append(name if e == -1 else f"{name}^{-e}")
    s = "*".join(num) if num else "1"
    if den:
        s += "/(" + "*".join(den) + ")" if len(den) > 1 else "/" + den[0]
    return s


def format_coef(c) -> str:
    s = format_element(c) if isinstance(c, FieldElement) else repr(c)
    return f"({s})" if " + " in s else s


def format_poly(terms: Mapping, names=XYZ) -> str:
    if not terms:
        return "0"
    parts = []
    for mono, c in sorted(terms.items(), reverse=True):
        mono_s = format_monomial(mono, names)
        coef_s = format_coef(c)
        if mono_s == "1":
            parts.append(coef_s)
        elif coef_s == "1":
            parts.append(mono_s)
        else:
            parts.append(f"{coef_s}*{mono_s}")
    return " + ".join(parts)


def substitute(f: HomogPoly, images) -> HomogPoly:
    """Replace variable k by ``images[k]`` (missing keys keep the variable).

    All images must share one degree k; the result has degree k * deg f.
    """
    if not isinstance(images, Mapping):
        images = dict(enumerate(images))
    imgs = []
    names = None
    for k in range(3):
        g = images.get(k)
        if g is None:
            g = HomogPoly.variable(f.field, k, f.names)
        imgs.append(g)
        if k in images:
            names = g.names
    degs = {g.degree for g in imgs}
    if len(degs) != 1:
        raise DegreeError(f"substitution images have unequal degrees {sorted(degs)}")
    (ratio,) = degs
    names = names or f.names
    powers: list[dict[int, HomogPoly]] = [{0: HomogPoly.monomial(f.field, (0, 0, 0), 1, names)} for _ in range(3)]

    def power(k: int, e: int) -> HomogPoly:
        cache = powers[k]
        if e not in cache:
            cache[e] = power(k, e - 1) * imgs[k]
        return cache[e]

    result = HomogPoly.zero(f.field, ratio * f.degree, names)
    for mono, c in f.sorted_terms():
        term = power(0, mono[0]) * power(1, mono[1]) * power(2, mono[2])
        result = result + term.scalar_mul(c)
    return result.with_names(names)


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

_VARS = {"X": 0, "Y": 1, "Z": 2, "U": 0, "V": 1, "W": 2}


class _Laurent(dict):
    """Scratch Laurent polynomial used while parsing: {exponent triple: coef}."""


def _lmul(a: _Laurent, b: _Laurent) -> _Laurent:
    out = _Laurent()
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            prod = c1 * c2
            out[mono] = out[mono] + prod if mono in out else prod
    return _Laurent({m: c for m, c in out.items() if c})


def _ladd(a: _Laurent, b: _Laurent, sign: int = 1) -> _Laurent:
    out = _Laurent(a)
    for m, c in b.items():
        c = c if sign > 0 else -c
        out[m] = out[m] + c if m in out else c
    return _Laurent({m: c for m, c in out.items() if c})


def parse_laurent(
    text: str,
    field: FieldSpec,
    t: FieldElement | None = None,
) -> tuple[dict[Monomial, Coef], tuple[str, str, str]]:
    """Parse an expression with ``+ - * ^ /`` into Laurent terms.

    Symbols: X, Y, Z (or U, V, W), integer literals, ``a`` for the field
    generator and ``t`` for the parameter.  Division is allowed only by a
    single term.  Returns the terms and the variable names used.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    used: set[str] = set()
    one = (0, 0, 0)

    def const(c) -> _Laurent:
        return _Laurent({one: c}) if c else _Laurent()

    def ev(node) -> _Laurent:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return const(field.element(node.value))
        if isinstance(node, ast.Name):
            name = node.id
            if name in _VARS:
                used.add(name)
                mono = [0, 0, 0]
                mono[_VARS[name]] = 1
                return _Laurent({tuple(mono): field.one()})
            if name == "a":
                return const(field.gen())
            if name == "t":
                return const(t if t is not None else ParamPoly.t(field))
            raise ParseError(f"unknown symbol {name!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return val if isinstance(node.op, ast.UAdd) else _Laurent({m: -c for m, c in val.items()})
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_literal(node.right)
                base = ev(node.left)
                if exp < 0:
                    base = _invert(base)
                    exp = -exp
                result = const(field.one())
                for _ in range(exp):
                    result = _lmul(result, base)
                return result
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return _ladd(left, right)
            if isinstance(node.op, ast.Sub):
                return _ladd(left, right, -1)
            if isinstance(node.op, ast.Mult):
                return _lmul(left, right)
            if isinstance(node.op, ast.Div):
                return _lmul(left, _invert(right))
        raise ParseError(f"unsupported syntax in {text!r}")

    def _invert(val: _Laurent) -> _Laurent:
        if len(val) != 1:
            raise ParseError("division only by a single term")
        ((mono, c),) = val.items()
        if isinstance(c, ParamPoly):
            if not c.is_constant():
                raise ParseError("cannot divide by t")
            c = c.constant_term()
        return _Laurent({(-mono[0], -mono[1], -mono[2]): c.inverse()})

    terms = ev(tree)
    if used & set(XYZ) and used & set(UVW):
        raise ParseError("mixes X,Y,Z with U,V,W")
    names = UVW if used & set(UVW) else XYZ
    return dict(terms), names


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise ParseError("exponents must be integer literals")


def parse_poly(
    text: str,
    field: FieldSpec,
    t: FieldElement | None = None,
    degree: int | None = None,
) -> HomogPoly:
    terms, names = parse_laurent(text, field, t)
    if any(e < 0 for mono in terms for e in mono):
        raise ParseError(f"negative exponent in polynomial {text!r}")
    try:
        return HomogPoly(field, terms, degree, names)
    except DegreeError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def parse_ideal(text: str, field: FieldSpec, t: FieldElement | None = None) -> list[HomogPoly]:
    return [parse_poly(part, field, t) for part in text.split(",") if part.strip()]
