"""Batch front end: descriptor parsing, command dispatch and report emission.

Exit codes: 0 when a verdict was computed (whatever it is), 1 on validation errors,
2 when the numerics could not decide.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import hodge, sinh_gordon, stokes_ade, terp
from ._linalg import DEFAULT_TOL
from .verdict import Verdict

EXIT_OK, EXIT_INVALID, EXIT_INDETERMINATE = 0, 1, 2
KINDS = ("terp", "stokes", "ade", "sinh_gordon")


class DescriptorError(ValueError):
    def __init__(self, message: str, path: tuple = (), line: int | None = None, source: str = "<descriptor>"):
        self.path, self.line, self.source = path, line, source
        where = _format_path(path)
        loc = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(f"{loc}{where + ': ' if where else ''}{message}")


def _format_path(path: tuple) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


# ---------------------------------------------------------------------------
# line map: JSON path -> line where its value starts


def _line_map(text: str) -> dict[tuple, int]:
    lines: dict[tuple, int] = {}
    pos, line = 0, 1
    n = len(text)

    def skip():
        nonlocal pos, line
        while pos < n and text[pos] in " \t\r\n":
            if text[pos] == "\n":
                line += 1
            pos += 1

    def string() -> str:
        nonlocal pos
        end = pos + 1
        while end < n and text[end] != '"':
            end += 2 if text[end] == "\\" else 1
        s = json.loads(text[pos:end + 1])
        pos = end + 1
        return s

    def value(path: tuple):
        nonlocal pos
        skip()
        lines.setdefault(path, line)
        if pos >= n:
            return
        ch = text[pos]
        if ch == "{":
            pos += 1
            skip()
            if pos < n and text[pos] == "}":
                pos += 1
                return
            while pos < n:
                skip()
                key = string()
                skip()
                pos += 1  # colon
                value(path + (key,))
                skip()
                if pos < n and text[pos] == ",":
                    pos += 1
                    continue
                pos += 1
                return
        elif ch == "[":
            pos += 1
            skip()
            if pos < n and text[pos] == "]":
                pos += 1
                return
            i = 0
            while pos < n:
                value(path + (i,))
                i += 1
                skip()
                if pos < n and text[pos] == ",":
                    pos += 1
                    continue
                pos += 1
                return
        elif ch == '"':
            string()
        else:
            while pos < n and text[pos] not in ",]}" and text[pos] not in " \t\r\n":
                pos += 1

    try:
        value(())
    except (ValueError, IndexError):
        pass
    return lines


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Descriptor:
    kind: str
    payload: dict

    def __eq__(self, other):
        return isinstance(other, Descriptor) and self.kind == other.kind and _plain(self.payload) == _plain(other.payload)


def _plain(x):
    """JSON-ready form: complex numbers become [re, im] pairs."""
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


def dump_descriptor(desc: Descriptor) -> str:
    return json.dumps({"kind": desc.kind, "payload": _plain(desc.payload)}, indent=2, sort_keys=True) + "\n"


class _Reader:
    def __init__(self, lines: dict[tuple, int], source: str):
        self.lines, self.source = lines, source

    def error(self, message: str, path: tuple) -> DescriptorError:
        probe = path
        while probe and probe not in self.lines:
            probe = probe[:-1]
        return DescriptorError(message, path, self.lines.get(probe), self.source)

    def number(self, v, path, real: bool = False):
        if isinstance(v, bool):
            raise self.error("expected a number", path)
        if isinstance(v, (int, float)):
            return float(v) if isinstance(v, float) or real else v
        if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            if real:
                raise self.error("expected a real number", path)
            return complex(float(v[0]), float(v[1]))
        raise self.error("expected a number or an [re, im] pair", path)

    def integer(self, v, path) -> int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.error("expected an integer", path)
        return v

    def vector(self, v, path, length: int | None = None, real: bool = False) -> list:
        if not isinstance(v, list):
            raise self.error("expected a list", path)
        if length is not None and len(v) != length:
            raise self.error(f"has length {len(v)}, expected {length}", path)
        return [self.number(x, path + (i,), real) for i, x in enumerate(v)]

    def matrix(self, v, path, rows: int | None = None, real: bool = False) -> list:
        if not isinstance(v, list) or not v:
            raise self.error("expected a non-empty list of rows", path)
        if rows is not None and len(v) != rows:
            raise self.error(f"has {len(v)} rows, expected {rows}", path)
        width = len(v[0]) if isinstance(v[0], list) else None
        out = []
        for i, row in enumerate(v):
            if not isinstance(row, list):
                raise self.error("expected a row (list)", path + (i,))
            if len(row) != width:
                raise self.error(f"row has length {len(row)}, expected {width}", path + (i,))
            out.append(self.vector(row, path + (i,), real=real))
        return out

    def field(self, obj: dict, key: str, path: tuple, required: bool = True):
        if key not in obj:
            if required:
                raise self.error(f"missing field {key!r}", path)
            return None
        return obj[key]


def parse_descriptor(text: str, source: str = "<descriptor>") -> Descriptor:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"invalid JSON: {exc.msg} (column {exc.colno})", (), exc.lineno, source) from None
    rd = _Reader(_line_map(text), source)
    if not isinstance(raw, dict):
        raise rd.error("descriptor must be a JSON object", ())
    kind = rd.field(raw, "kind", ())
    if kind not in KINDS:
        raise rd.error(f"kind must be one of {', '.join(KINDS)}", ("kind",))
    payload = rd.field(raw, "payload", ())
    if not isinstance(payload, dict):
        raise rd.error("payload must be an object", ("payload",))
    norm = {"terp": _norm_terp, "stokes": _norm_stokes, "ade": _norm_ade, "sinh_gordon": _norm_sinh}[kind]
    desc = Descriptor(kind, norm(rd, payload, ("payload",)))
    # module-level invariants, re-checked on every load
    try:
        if kind == "terp":
            build_terp(desc)
        elif kind == "stokes":
            build_stokes(desc)
    except (terp.TerpError, hodge.HodgeError, stokes_ade.StokesError) as exc:
        raise rd.error(str(exc), ("payload",)) from None
    return desc


def load_descriptor(path: str) -> Descriptor:
    with open(path, encoding="utf-8") as fh:
        return parse_descriptor(fh.read(), path)


def _norm_terp(rd: _Reader, p: dict, path: tuple) -> dict:
    w = rd.integer(rd.field(p, "w", path), path + ("w",))
    ms = rd.matrix(rd.field(p, "Ms", path), path + ("Ms",), real=True)
    n = len(ms)
    if any(len(r) != n for r in ms):
        raise rd.error("Ms must be square", path + ("Ms",))
    out = {"w": w, "Ms": ms}
    nmat = rd.field(p, "N", path, required=False)
    out["N"] = rd.matrix(nmat, path + ("N",), rows=n, real=True) if nmat is not None else [[0.0] * n for _ in range(n)]
    out["S"] = rd.matrix(rd.field(p, "S", path), path + ("S",), rows=n, real=True)
    for key in ("N", "S"):
        if any(len(r) != n for r in out[key]):
            raise rd.error(f"row length must be {n}", path + (key,))
    f = rd.field(p, "F", path)
    if not isinstance(f, dict) or not f:
        raise rd.error("F must be a non-empty object {level: [vectors]}", path + ("F",))
    levels = {}
    for key, vecs in f.items():
        try:
            level = int(key)
        except ValueError:
            raise rd.error(f"level {key!r} is not an integer", path + ("F", key)) from None
        if not isinstance(vecs, list):
            raise rd.error("expected a list of vectors", path + ("F", key))
        levels[str(level)] = [rd.vector(v, path + ("F", key, i), n) for i, v in enumerate(vecs)]
    out["F"] = dict(sorted(levels.items(), key=lambda kv: int(kv[0])))
    return out


def _norm_stokes(rd: _Reader, p: dict, path: tuple) -> dict:
    w = rd.integer(rd.field(p, "w", path), path + ("w",))
    u = rd.vector(rd.field(p, "u", path), path + ("u",))
    xi = rd.number(rd.field(p, "xi", path), path + ("xi",))
    t = rd.matrix(rd.field(p, "T", path), path + ("T",), rows=len(u))
    if any(len(r) != len(u) for r in t):
        raise rd.error(f"row length must be {len(u)}", path + ("T",))
    return {"w": w, "u": u, "xi": xi, "T": t}


def _norm_ade(rd: _Reader, p: dict, path: tuple) -> dict:
    typ = rd.field(p, "type", path)
    if typ not in ("A", "D", "E"):
        raise rd.error("type must be A, D or E", path + ("type",))
    rank = rd.integer(rd.field(p, "rank", path), path + ("rank",))
    out = {"type": typ, "rank": rank}
    try:
        stokes_ade._parse_kind(f"{typ}{rank}")
    except stokes_ade.StokesError as exc:
        raise rd.error(str(exc), path + ("rank",)) from None
    return out


_SINH_FIELDS = ("r_max", "r_min", "rel_tol", "abs_tol", "blowup_threshold")


def _norm_sinh(rd: _Reader, p: dict, path: tuple) -> dict:
    out: dict[str, Any] = {"amplitude": rd.number(rd.field(p, "amplitude", path), path + ("amplitude",), real=True)}
    for key in _SINH_FIELDS:
        if key in p:
            out[key] = rd.number(p[key], path + (key,), real=True)
    if "direction" in p:
        if p["direction"] not in ("inward", "outward"):
            raise rd.error("direction must be inward or outward", path + ("direction",))
        out["direction"] = p["direction"]
    try:
        _sinh_config(out)
    except ValueError as exc:
        raise rd.error(str(exc), path) from None
    return out


def _sinh_config(payload: dict) -> sinh_gordon.SolverConfig:
    kwargs = {k: float(payload[k]) for k in _SINH_FIELDS if k in payload}
    if "direction" in payload:
        kwargs["direction"] = payload["direction"]
    return sinh_gordon.SolverConfig(**kwargs)


def build_terp(desc: Descriptor, tol: float = DEFAULT_TOL) -> terp.TerpData:
    p = desc.payload
    n = len(p["Ms"])
    f = {int(k): np.array(v, dtype=complex).T.reshape(n, -1) for k, v in p["F"].items()}
    return terp.TerpData.build(p["w"], np.array(p["Ms"]), np.array(p["N"]), np.array(p["S"]), f, tol)


def build_stokes(desc: Descriptor) -> stokes_ade.StokesData:
    p = desc.payload
    t = np.array(p["T"])
    if np.iscomplexobj(t) and not np.any(t.imag):
        t = t.real
    if np.isrealobj(t) and np.all(t == np.round(t)):
        t = t.astype(np.int64)
    return stokes_ade.StokesData(p["w"], p["u"], p["xi"], t)


# ---------------------------------------------------------------------------
# report formatting


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return f"{x.real!r}{'+' if x.imag >= 0 else '-'}{abs(x.imag)!r}j"
    if x is None:
        return "none"
    if isinstance(x, np.ndarray):
        return json.dumps(_jsonable(x))
    return str(x)


def _jsonable(x):
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit_text(obj, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_emit_text(val, indent + 1).rstrip("\n"))
        elif isinstance(val, (list, tuple)):
            lines.append(f"{pad}{key}: [{', '.join(_fmt(v) for v in val)}]")
        else:
            lines.append(f"{pad}{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _check_terp(desc: Descriptor, tol: float) -> tuple[dict, int]:
    t = build_terp(desc, tol)
    ortho = terp.check_orthogonality(t)
    rep: dict[str, Any] = {"kind": "terp", "tolerance": tol, "n": t.n, "w": t.w, "orthogonality": ortho}
    mixed = terp.mixed_terp_report(t)
    rep["mixed"] = {name: {"verdict": r.verdict, "failed_axiom": r.failed_axiom, "details": list(r.details)}
                    for name, r in mixed.items()}
    rep["regular-singular-pmhs"] = terp.mixed_terp_regular_singular(t)
    code = EXIT_OK
    if not ortho:
        rep["polarized-pure"] = Verdict.FALSE
        rep["reason"] = "orthogonality condition violated"
        return rep, code
    rep["pure"] = terp.is_pure(t)
    rep["spectrum"] = terp.spectrum(t)
    st = terp.splitting_type(t)
    rep["splitting"] = {"degrees": list(st.degrees), "total": st.total, "certified": st.certified}
    try:
        pol = terp.polarization_report(t)
    except terp.DualPathDisagreement as exc:
        rep["polarized-pure"] = Verdict.INDETERMINATE
        rep["reason"] = str(exc)
        return rep, EXIT_INDETERMINATE
    rep["polarized-pure"] = pol.verdict
    rep["paths"] = {"hermitian": pol.hermitian, "classifying": pol.classifying}
    rep["min_eig_h"] = pol.min_eig_h
    if pol.verdict is Verdict.INDETERMINATE or rep["regular-singular-pmhs"] is Verdict.INDETERMINATE:
        code = EXIT_INDETERMINATE
    return rep, code


def _check_stokes(desc: Descriptor, tol: float) -> tuple[dict, int]:
    data = build_stokes(desc)
    ordered = stokes_ade.validate_order(data)
    hyp = stokes_ade.conjecture_hypothesis(data.t, data.w)
    rep = {
        "kind": "stokes",
        "tolerance": stokes_ade.UNIT_MODULUS_TOL,
        "order-valid": ordered,
        "stokes-directions": stokes_ade.stokes_directions(data.u),
        "monodromy": stokes_ade.monodromy(data.t, data.w),
        "hypothesis": hyp.holds,
        "positive-definite": hyp.positive_definite,
        "pairing-eigenvalues": list(hyp.pairing_eigenvalues),
        "unit-modulus": hyp.unit_modulus,
        "forbidden-eigenvalue-absent": hyp.forbidden_eigenvalue_absent,
        "max-modulus-defect": hyp.max_modulus_defect,
    }
    return rep, EXIT_OK


def _check_ade(desc: Descriptor, tol: float) -> tuple[dict, int]:
    kind = f"{desc.payload['type']}{desc.payload['rank']}"
    system = stokes_ade.root_system(kind)
    c = stokes_ade.coxeter_element(system)
    fact = stokes_ade.simple_factorization(system)
    t = stokes_ade.stokes_from_factorization(fact)
    hyp = stokes_ade.conjecture_hypothesis(t, 0)
    rep = {
        "kind": "ade",
        "type": kind,
        "roots": int(len(system.roots)),
        "coxeter-order": stokes_ade.element_order(c),
        "simple-stokes-matrix": t,
        "hypothesis": hyp.holds,
        "documented-count": stokes_ade.documented_count(kind),
    }
    return rep, EXIT_OK


def _check_sinh(desc: Descriptor, tol: float) -> tuple[dict, int]:
    sol = sinh_gordon.integrate(desc.payload["amplitude"], _sinh_config(desc.payload))
    rep = {"kind": "sinh_gordon", **sol.summary()}
    return rep, EXIT_OK


_CHECKS = {"terp": _check_terp, "stokes": _check_stokes, "ade": _check_ade, "sinh_gordon": _check_sinh}


def cmd_check(args) -> tuple[str, int]:
    desc = load_descriptor(args.descriptor)
    rep, code = _CHECKS[desc.kind](desc, args.tol)
    return (_emit_json(rep) if args.json else _emit_text(rep)), code


def cmd_orbit_scan(args) -> tuple[str, int]:
    desc = load_descriptor(args.descriptor)
    if desc.kind != "terp":
        raise DescriptorError("orbit-scan needs a terp descriptor", ("kind",), None, args.descriptor)
    t = build_terp(desc, args.tol)
    grid = np.geomspace(args.rmin, args.rmax, args.points)
    orbit = terp.induces_orbit(t, args.direction, grid)
    mixed = terp.mixed_terp_regular_singular(t)
    rows = sorted(orbit.rows, key=lambda row: row.r)
    code = EXIT_INDETERMINATE if any(r.polarized is Verdict.INDETERMINATE for r in rows) else EXIT_OK
    if args.json:
        return _emit_json({
            "direction": args.direction,
            "rows": [{"r": r.r, "pure": r.pure, "polarized": r.polarized, "min_eig_h": r.min_eig_h,
                      "spectrum_unchanged": r.spectrum_unchanged} for r in rows],
            "detected": orbit.detected, "threshold": orbit.threshold, "regular-singular-pmhs": mixed,
        }), code
    body = _csv(["r", "pure", "polarized", "min_eig_h", "spectrum_unchanged"],
                [[r.r, r.pure, r.polarized, r.min_eig_h, r.spectrum_unchanged] for r in rows])
    body += (f"# direction={args.direction} detected={_fmt(orbit.detected)} "
             f"threshold={_fmt(orbit.threshold)} regular-singular-pmhs={_fmt(mixed)}\n")
    return body, code


def cmd_ade(args) -> tuple[str, int]:
    kind = f"{args.type}{args.rank}"
    system = stokes_ade.root_system(kind)
    if args.count:
        count = stokes_ade.count_classes(kind, budget=args.budget)
        rep = {"type": kind, "count": count, "documented": stokes_ade.documented_count(kind)}
        return (_emit_json(rep) if args.json else f"{count}\n"), EXIT_OK
    c = stokes_ade.coxeter_element(system)
    rows = []
    for betas in stokes_ade.enumerate_factorizations(system, c, budget=args.budget):
        fact = stokes_ade.CoxeterFactorization(betas, c, system)
        t = stokes_ade.stokes_from_factorization(fact)
        canon = stokes_ade.sign_normalize(t)
        eig = np.linalg.eigvalsh((t + t.T).astype(float))
        hyp = stokes_ade.conjecture_hypothesis(t, 0)
        rows.append({"betas": [list(b) for b in stokes_ade._canonical_signs(betas, system)],
                     "T": t, "T_normalized": canon, "pairing_eigenvalues": eig, "hypothesis": hyp.holds})
    # one row per sign class of root tuples
    seen, unique = set(), []
    for row in rows:
        key = json.dumps(row["betas"])
        if key not in seen:
            seen.add(key)
            unique.append(row)
    if args.json:
        return _emit_json({"type": kind, "classes": unique}), EXIT_OK
    out = _csv(["index", "betas", "T", "T_normalized", "pairing_eigenvalues", "hypothesis"],
               [[i, json.dumps(r["betas"]), json.dumps(r["T"].tolist()), json.dumps(r["T_normalized"].tolist()),
                 " ".join(repr(float(e)) for e in r["pairing_eigenvalues"]), r["hypothesis"]]
                for i, r in enumerate(unique)])
    return out, EXIT_OK


def _parse_sweep(text: str) -> np.ndarray:
    try:
        lo, hi, num = text.split(":")
        return np.linspace(float(lo), float(hi), int(num))
    except ValueError:
        raise DescriptorError("--sweep expects lo:hi:count", ("--sweep",), None, "<command line>") from None


def cmd_sinh(args) -> tuple[str, int]:
    kwargs = {"r_max": args.rmax, "r_min": args.rmin, "rel_tol": args.rel_tol, "direction": args.direction}
    cfg = sinh_gordon.SolverConfig(**kwargs)
    if args.sweep:
        rows = []
        for a in _parse_sweep(args.sweep):
            sol = sinh_gordon.integrate(float(a), cfg)
            first = sol.singularities[0].r if sol.singularities else None
            rows.append([float(a), sol.status, len(sol.singularities), first])
        if args.json:
            return _emit_json({"sweep": [dict(zip(["amplitude", "status", "singularities", "first_r"], r))
                                         for r in rows]}), EXIT_OK
        return _csv(["amplitude", "status", "singularities", "first_r"], rows), EXIT_OK
    sol = sinh_gordon.integrate(args.amplitude, cfg)
    if args.spacing:
        rep = sinh_gordon.singularity_spacing(sol)
        data = {"amplitude": args.amplitude, "radii": list(rep.radii), "gaps": list(rep.gaps),
                "slope": rep.slope, "log_coefficient": rep.log_coefficient, "intercept": rep.intercept,
                "pi": math.pi}
        if args.json:
            return _emit_json(data), EXIT_OK
        body = _csv(["k", "r_k", "gap_to_next"],
                    [[k + 1, r, rep.gaps[k] if k < len(rep.gaps) else None] for k, r in enumerate(rep.radii)])
        return body + f"# slope={rep.slope!r} log_coefficient={rep.log_coefficient!r} pi={math.pi!r}\n", EXIT_OK
    if args.json:
        return _emit_json(sol.summary()), EXIT_OK
    body = _csv(["r", "u", "du"], [[float(r), float(u), float(d)] for r, u, d in zip(sol.grid, sol.u, sol.du)])
    return body + f"# status={sol.status} singularities={len(sol.singularities)}\n", EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="numerical tolerance")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")

    ap = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=DEFAULT_TOL)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--out")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verify a descriptor")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("orbit-scan", parents=[common], help="rescaling scan of a terp descriptor")
    p.add_argument("descriptor")
    p.add_argument("--direction", choices=["to_zero", "to_infinity"], default="to_zero")
    p.add_argument("--rmin", type=float, default=1e-4)
    p.add_argument("--rmax", type=float, default=1.0)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=cmd_orbit_scan)

    p = sub.add_parser("ade", parents=[common], help="Coxeter factorizations of ADE types")
    p.add_argument("--type", choices=["A", "D", "E"], required=True)
    p.add_argument("--rank", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--emit-stokes", action="store_true")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(func=cmd_ade)

    p = sub.add_parser("sinh", parents=[common], help="radial sinh-Gordon runs")
    p.add_argument("--amplitude", type=float, default=0.0)
    p.add_argument("--sweep", help="lo:hi:count amplitude sweep")
    p.add_argument("--spacing", action="store_true", help="blow-up spacing analysis")
    p.add_argument("--direction", choices=["inward", "outward"], default="inward")
    p.add_argument("--rmin", type=float, default=1e-3)
    p.add_argument("--rmax", type=float, default=20.0)
    p.add_argument("--rel-tol", type=float, default=1e-11)
    p.set_defaults(func=cmd_sinh)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except (DescriptorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (terp.TerpError, hodge.HodgeError, stokes_ade.StokesError, stokes_ade.BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (terp.DualPathDisagreement, sinh_gordon.SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
