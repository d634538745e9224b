"""Command-line front end: ``hklab <subcommand> ...``.

Exit codes: 0 success, 1 domain error (singular curve, non-primary ideal,
bad class, ...), 2 usage error.  Domain errors are reported on stderr as
``{"error": {"kind": ..., "message": ...}}``.

Results are cached by the sha256 of the canonical job description plus the
package version, in ``--cache-dir`` or ``$HKLAB_CACHE`` when set.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cech import frobenius_on_class, hasse_witt, orbit, detect_repetition, fixed_classes, parse_class
from .curvefile import CurveFile, builtin_text, load_curve_file, parse_curve_text
from .curvering import SingularCurveError, is_smooth_probe
from .descent import (
    DescentSequence,
    bound_context,
    bundle_count_bound,
    pigeonhole_window,
    theorem_margin,
)
from .hnrank2 import strong_hn_scan
from .poly import parse_ideal
from .syz_hk import DegenerateFitError, ehk_estimate, hk_function

log = logging.getLogger("hklab")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    subcommand: str
    params: dict
    curve: CurveFile | None
    fmt: str
    cache_dir: Path | None

    def canonical(self) -> str:
        obj = {
            "version": __version__,
            "subcommand": self.subcommand,
            "params": self.params,
            "curve": None if self.curve is None else self.curve.to_json(),
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


@dataclass(frozen=True)
class ResultRecord:
    job_hash: str
    payload: dict
    created: float
    cached: bool


def _read_curve(arg: str | None) -> CurveFile | None:
    if arg is None:
        return None
    if arg.startswith("builtin:"):
        return parse_curve_text(builtin_text(arg.split(":", 1)[1]))
    return load_curve_file(arg)


def _smooth_curve(job: JobSpec):
    if job.curve is None:
        raise UsageError("--curve is required")
    curve = job.curve.curve()
    probe = is_smooth_probe(curve)
    if probe.status == "singular":
        pt = ":".join(repr(x) for x in probe.witness)
        raise SingularCurveError(f"curve is singular at ({pt})")
    if probe.status == "inconclusive":
        log.warning("smoothness undecided: %s", probe.detail)
    return curve


# ----------------------------------------------------------------------
# subcommands; each returns a JSON-able payload
# ----------------------------------------------------------------------

def _hk(job: JobSpec) -> dict:
    curve = _smooth_curve(job)
    gens = parse_ideal(job.params["ideal"], curve.field)
    table = hk_function(curve, gens, job.params["e_max"], check_identity=job.params["check"])
    out = {"rows": table.to_json()}
    try:
        out["ehk"] = ehk_estimate(table).to_json()
    except DegenerateFitError:
        out["ehk"] = None
    return out


def _hn(job: JobSpec) -> dict:
    curve = _smooth_curve(job)
    gens = parse_ideal(job.params["gens"], curve.field)
    scan = strong_hn_scan(curve, gens, job.params["e_max"], job.params["twist"])
    return scan.to_json()


def _cech(job: JobSpec) -> dict:
    curve = _smooth_curve(job)
    action = job.params["action"]
    spec = curve.field
    if action == "matrix":
        if job.params["twist"] != 0:
            raise UsageError("--action matrix works on twist 0")
        return hasse_witt(curve).to_json()
    if action == "fixed":
        return {"fixed": [repr(c) for c in fixed_classes(curve)]}
    if not job.params["cls"]:
        raise UsageError(f"--action {action} needs --class")
    cls = parse_class(job.params["cls"], curve, job.params["twist"])
    if action == "apply":
        return {"class": repr(cls), "image": repr(frobenius_on_class(cls)), "image_twist": spec.p * cls.m}
    orb = orbit(cls, job.params["steps"])
    rep = detect_repetition(orb) if cls.m == 0 else None
    return {
        "orbit": [repr(c) for c in orb],
        "repetition": None if rep is None else list(rep),
        "repetition_checked": cls.m == 0,
    }


def _prank(job: JobSpec) -> dict:
    curve = _smooth_curve(job)
    hw = hasse_witt(curve)
    return {"genus": curve.genus, "p_rank": hw.p_rank, "semisimple_dim": hw.semisimple_dim}


def _big(n: int):
    """Integers past 62 bits are reported by sign and bit length."""
    if n.bit_length() <= 62:
        return n
    return {"sign": -1 if n < 0 else 1, "bit_length": n.bit_length()}


def _descent(job: JobSpec) -> dict:
    p = job.params
    ctx = bound_context(p["r"], p["g"], p["deg"], p["m_gg"], p["deg_o1"])
    out = ctx.to_json()
    out["count_bound_bits"] = bundle_count_bound(p["field_size"], ctx.c)[1] if p["field_size"] else None
    if p["seq"]:
        seq = DescentSequence.parse(p["seq"])
        rep = theorem_margin(seq, ctx.c, ctx.t_threshold)
        out["margins"] = [_big(m) for m in rep.margins]
        out["trigger"] = rep.trigger
        if rep.trigger is not None and p["field_size"]:
            e_n = seq.entries[rep.trigger][1]
            win = pigeonhole_window(e_n, ctx.t_threshold.ceil, bundle_count_bound(p["field_size"], ctx.c)[0])
            out["window"] = {"size": win.size, "forced": win.forced}
    return out


def _paper_suite(job: JobSpec) -> dict:
    from .suite import run_suite

    overrides = {}
    for item in job.params["override"]:
        name, _, path = item.partition("=")
        overrides[name] = load_curve_file(path).curve()
    results = run_suite(overrides)
    return {"checks": [r.to_json() for r in results], "all_passed": all(r.passed for r in results), "_lines": [r.line() for r in results]}


HANDLERS = {"hk": _hk, "hn": _hn, "cech": _cech, "prank": _prank, "descent": _descent, "paper-suite": _paper_suite}


def run(job: JobSpec) -> ResultRecord:
    digest = job.digest()
    cacheable = job.subcommand != "paper-suite"
    path = None if job.cache_dir is None or not cacheable else job.cache_dir / f"{digest}.json"
    if path is not None and path.exists():
        return ResultRecord(digest, json.loads(path.read_text()), path.stat().st_mtime, True)
    payload = HANDLERS[job.subcommand](job)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        os.replace(tmp, path)
    return ResultRecord(digest, payload, time.time(), False)


# ----------------------------------------------------------------------
# formatting
# ----------------------------------------------------------------------

def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    if os.environ.get("FORCE_COLOR"):
        return True
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(line: str, color: bool) -> str:
    if not color:
        return line
    if line.startswith("[PASS]"):
        return "\x1b[32m" + line + "\x1b[0m"
    if line.startswith("[FAIL]"):
        return "\x1b[31m" + line + "\x1b[0m"
    return line


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, obj if not isinstance(obj, list) else json.dumps(obj)))


def render(subcommand: str, payload: dict, fmt: str, color: bool = False) -> str:
    public = {k: v for k, v in payload.items() if not k.startswith("_")}
    if fmt == "json":
        return json.dumps(public, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if subcommand == "hk":
            writer.writerow(["e", "q", "phi"])
            for row in payload["rows"]:
                writer.writerow([row["e"], row["q"], row["phi"]])
        else:
            pairs: list = []
            _flatten("", public, pairs)
            writer.writerow(["key", "value"])
            writer.writerows(pairs)
        return buf.getvalue().rstrip("\n")
    if subcommand == "paper-suite":
        return "\n".join(_paint(line, color) for line in payload["_lines"])
    pairs = []
    _flatten("", public, pairs)
    return "\n".join(f"{k}: {v}" for k, v in pairs)


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None, help="default: json, text for paper-suite")
    common.add_argument("--cache-dir", default=None, help="result cache (default: $HKLAB_CACHE)")
    common.add_argument("--dump", action="store_true", help="echo the parsed curve file and exit")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="hklab", description="Exact computations on plane curves over finite fields.")
    parser.add_argument("--version", action="version", version=f"hklab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def curve_arg(p):
        p.add_argument("--curve", help="curve file, or builtin:NAME")

    p = sub.add_parser("hk", parents=[common], help="Hilbert-Kunz function and multiplicity fit")
    curve_arg(p)
    p.add_argument("--ideal", default="X,Y,Z")
    p.add_argument("--e-max", type=int, default=3)
    p.add_argument("--no-check", action="store_true", help="skip the per-degree kernel cross-check")

    p = sub.add_parser("hn", parents=[common], help="strong Harder-Narasimhan scan of a rank-2 syzygy bundle")
    curve_arg(p)
    p.add_argument("--gens", default="X,Y,Z")
    p.add_argument("--twist", type=int, default=None)
    p.add_argument("--e-max", type=int, default=2)

    p = sub.add_parser("cech", parents=[common], help="Frobenius on H^1 classes")
    curve_arg(p)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--action", choices=("matrix", "apply", "orbit", "fixed"), default="matrix")
    p.add_argument("--class", dest="cls", default=None)
    p.add_argument("--steps", type=int, default=8)

    p = sub.add_parser("prank", parents=[common], help="p-rank via the Hasse-Witt matrix")
    curve_arg(p)

    p = sub.add_parser("descent", parents=[common], help="descent bound arithmetic")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--deg", type=int, default=0)
    p.add_argument("--m-gg", type=int, default=0)
    p.add_argument("--deg-o1", type=int, default=1)
    p.add_argument("--field-size", type=int, default=None)
    p.add_argument("--seq", default="")

    p = sub.add_parser("paper-suite", parents=[common], help="run every acceptance check")
    p.add_argument("--override", action="append", default=[], metavar="NAME=FILE", help="replace a suite curve")
    return parser


_PARAMS = {
    "hk": lambda a: {"ideal": a.ideal, "e_max": a.e_max, "check": not a.no_check},
    "hn": lambda a: {"gens": a.gens, "twist": a.twist, "e_max": a.e_max},
    "cech": lambda a: {"twist": a.twist, "action": a.action, "cls": a.cls, "steps": a.steps},
    "prank": lambda a: {},
    "descent": lambda a: {
        "r": a.r, "g": a.g, "deg": a.deg, "m_gg": a.m_gg, "deg_o1": a.deg_o1,
        "field_size": a.field_size, "seq": a.seq,
    },
    "paper-suite": lambda a: {"override": list(a.override)},
}


def _error(kind: str, message: str) -> str:
    return json.dumps({"error": {"kind": kind, "message": message}}, sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(_error("usage", str(exc)), file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.format is None:
        args.format = "text" if args.subcommand == "paper-suite" else "json"
    cache = args.cache_dir or os.environ.get("HKLAB_CACHE")
    try:
        curve = _read_curve(getattr(args, "curve", None))
        if args.dump:
            if curve is None:
                raise UsageError("--dump needs --curve")
            print(curve.dump())
            return 0
        job = JobSpec(args.subcommand, _PARAMS[args.subcommand](args), curve, args.format, Path(cache) if cache else None)
        record = run(job)
    except UsageError as exc:
        print(_error("usage", str(exc)), file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(_error(getattr(exc, "kind", type(exc).__name__), str(exc)), file=sys.stderr)
        return 1
    print(render(args.subcommand, record.payload, args.format, _use_color(sys.stdout)))
    if args.subcommand == "paper-suite" and not record.payload["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
