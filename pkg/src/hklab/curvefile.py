"""Plain key-value curve files.

::

    # Fermat quartic over F_625 with a^4 = 2
    p = 5
    ext_degree = 4
    modulus = 3, 0, 0, 0, 1
    equation = X^4 + Y^4 - Z^4
    param_value = a

``modulus`` is little-endian over F_p and defaults to the first irreducible
polynomial found.  ``param_value`` is an expression in the field generator
``a`` and specialises every ``t`` in the equation.  Lines starting with
``#`` are comments; an optional ``name`` key labels the curve.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curvering import PlaneCurve
from .gf import FieldElement, FieldSpec
from .poly import ParseError, parse_laurent, parse_poly

KEYS = ("p", "ext_degree", "modulus", "equation", "param_value", "name")


class CurveFileError(ValueError):
    kind = "curve_file"


@dataclass(frozen=True)
class CurveFile:
    field: FieldSpec
    equation: str
    param_value: FieldElement | None
    name: str | None

    def curve(self) -> PlaneCurve:
        G = parse_poly(self.equation, self.field, self.param_value)
        return PlaneCurve(G, self.name)

    def to_json(self) -> dict:
        curve = self.curve()
        return {
            "name": self.name,
            "p": self.field.p,
            "ext_degree": self.field.d,
            "modulus": list(self.field.modulus),
            "equation": self.equation,
            "param_value": None if self.param_value is None else list(self.param_value.coords),
            "normalized": repr(curve.G),
            "degree": curve.delta,
            "genus": curve.genus,
        }

    def dump(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def parse_curve_text(text: str) -> CurveFile:
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise CurveFileError(f"line {lineno}: expected key = value")
        if key not in KEYS:
            raise CurveFileError(f"line {lineno}: unknown key {key!r}")
        if key in data:
            raise CurveFileError(f"line {lineno}: duplicate key {key!r}")
        data[key] = value.strip()
    for key in ("p", "equation"):
        if key not in data:
            raise CurveFileError(f"missing key {key!r}")
    try:
        p = int(data["p"])
        d = int(data.get("ext_degree", "1"))
        modulus = None
        if "modulus" in data:
            modulus = tuple(int(x) for x in data["modulus"].replace(",", " ").split())
        field = FieldSpec.extension(p, d, modulus) if d > 1 else FieldSpec.prime(p)
    except ValueError as exc:
        raise CurveFileError(str(exc)) from None
    if d == 1 and "modulus" in data and modulus not in (None, (0, 1)):
        raise CurveFileError("modulus given for a prime field")
    param = None
    if "param_value" in data:
        try:
            terms, _ = parse_laurent(data["param_value"], field)
        except ParseError as exc:
            raise CurveFileError(f"param_value: {exc}") from None
        if any(m != (0, 0, 0) for m in terms):
            raise CurveFileError("param_value must be a field constant")
        param = terms.get((0, 0, 0), field.zero())
        if not isinstance(param, FieldElement):
            raise CurveFileError("param_value may not contain t")
    return CurveFile(field, data["equation"], param, data.get("name"))


def load_curve_file(path: str | Path) -> CurveFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CurveFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_curve_text(text)


def load_curve(path: str | Path) -> PlaneCurve:
    return load_curve_file(path).curve()


def builtin_names() -> list[str]:
    files = resources.files("hklab") / "curves"
    return sorted(f.name[: -len(".curve")] for f in files.iterdir() if f.name.endswith(".curve"))


def builtin_text(name: str) -> str:
    path = resources.files("hklab") / "curves" / f"{name}.curve"
    if not path.is_file():
        raise CurveFileError(f"no built-in curve {name!r}")
    return path.read_text()


def builtin_curve(name: str) -> PlaneCurve:
    return parse_curve_text(builtin_text(name)).curve()
