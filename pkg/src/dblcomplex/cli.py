"""Command-line interface: ``dblcomplex <command> ...``.

Exit codes: 0 success, 1 a requested check failed (report printed), 2 bad input.
Machine output (``--json``) is one JSON document per invocation carrying a
``schema`` field.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .audits import (
    AuditReport,
    CheckResult,
    MissingStructure,
    ddbar_audit,
    duality_audit,
    inequality_audit,
    parse_charnumbers,
    relations_audit,
    signature_from_pontryagin,
    stong_check,
)
from .bicomplex import (
    Bicomplex,
    FormatError,
    InvalidBicomplex,
    RandomProfile,
    direct_sum,
    random_bicomplex,
    read_bicomplex,
    write_bicomplex,
)
from .ce import (
    CdgaParseError,
    PreconditionError,
    check_integrability,
    check_jacobi,
    de_rham_model,
    invariant_bicomplex,
    parse_cdga,
)
from .cohomology import FUNCTORS, bott_chern, cohomology_report, de_rham
from .massey import MasseyError, abc_massey, triple_massey
from .scalars import ZERO, format_scalar, parse_scalar
from .shapes import MultiplicityTable
from .zigzag import BookkeepingError, functor_dims, multiplicities, reconstruct, render_checkerboard

SCHEMA = "dblcomplex/1"


class InputError(Exception):
    """Reported on stderr with exit code 2."""


@dataclass
class Outcome:
    text: str
    doc: dict
    code: int = 0


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load_bicomplex(path: str) -> Bicomplex:
    try:
        return read_bicomplex(_read(path))
    except FormatError as e:
        raise InputError(f"{path}: {e}") from None
    except InvalidBicomplex as e:
        raise InputError(f"{path}: invalid bicomplex\n{e}") from None



# -- commands ---------------------------------------------------------------------


def cmd_ingest(args) -> Outcome:
    try:
        P = parse_cdga(_read(args.cdga))
    except CdgaParseError as e:
        raise InputError(f"{args.cdga}: {e}") from None
    jac = check_jacobi(P)
    lines = [str(jac)]
    if not jac.ok:
        raise InputError("Jacobi identity fails\n" + "\n".join(lines))
    if args.model == "total":
        B = de_rham_model(P)
    else:
        try:
            integ = check_integrability(P)
        except PreconditionError as e:
            raise InputError(str(e)) from None
        lines.append(str(integ))
        if not integ.ok:
            raise InputError("no integrable complex structure\n" + "\n".join(lines))
        B = invariant_bicomplex(P)
    text = write_bicomplex(B)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    lines.append(f"wrote {args.out}: {B.total_dim} dimensions in {len(B.cells)} cells")
    return Outcome("\n".join(lines) + "\n", {"jacobi": jac.ok, "total_dim": B.total_dim, "cells": len(B.cells)})


def cmd_report(args) -> Outcome:
    A = _load_bicomplex(args.file)
    rep = cohomology_report(A, reps=args.reps, check=False)
    return Outcome(rep.to_text(), rep.to_json())


def cmd_zigzag(args) -> Outcome:
    if args.orbit and args.dim is None:
        raise InputError("--orbit needs --dim")
    A = _load_bicomplex(args.file)
    try:
        T = multiplicities(A, check=False)
    except BookkeepingError as e:  # pragma: no cover - would be an internal bug
        raise RuntimeError(str(e)) from e
    text = T.to_text()
    doc = {"table": T.to_json()}
    if args.render or args.orbit:
        n = args.dim if args.dim is not None else _box(A)
        try:
            board = render_checkerboard(T, n, "orbit" if args.orbit else "plain")
        except ValueError as e:
            raise InputError(str(e)) from None
        text = T.to_text() + "\n" + board if args.orbit else board
        doc["board"] = board
    if args.check_reconstruction:
        bad = [f for f in FUNCTORS if reconstruct(T, f) != {k: v for k, v in functor_dims(A, f).items() if v}]
        doc["reconstruction_mismatch"] = bad
        text += "functor reconstruction: " + ("ok" if not bad else "MISMATCH " + ", ".join(bad)) + "\n"
        return Outcome(text, doc, 1 if bad else 0)
    return Outcome(text, doc)


def _box(A: Bicomplex) -> int:
    if A.amb_dim is not None:
        return A.amb_dim
    p0, p1, q0, q1 = A.support_box
    return max(p1, q1, 0)


def cmd_render(args) -> Outcome:
    try:
        T = MultiplicityTable.from_text(_read(args.table))
        board = render_checkerboard(T, args.dim, "orbit" if args.orbit else "plain")
    except ValueError as e:
        raise InputError(f"{args.table}: {e}") from None
    return Outcome(board, {"board": board, "table": T.to_json()})


BICOMPLEX_CHECKS = ("ddbar", "relations", "R1", "R2", "R3", "R4", "R5", "inequalities", "duality")
CHARNUMBER_CHECKS = ("stong", "signature")


def _is_charnumbers(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0] == "dim"
    return False


def cmd_audit(args) -> Outcome:
    text = _read(args.file)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not checks:
        raise InputError("no checks requested")
    reports: list[AuditReport] = []
    extra = {}
    if _is_charnumbers(text):
        bad = [c for c in checks if c not in CHARNUMBER_CHECKS]
        if bad:
            raise InputError(f"checks {', '.join(bad)} do not apply to characteristic numbers")
        try:
            cn = parse_charnumbers(text)
        except ValueError as e:
            raise InputError(f"{args.file}: {e}") from None
        try:
            if "stong" in checks:
                reports.append(stong_check(cn))
            if "signature" in checks:
                sig = signature_from_pontryagin(cn)
                extra["signature"] = {"value": str(sig.value), "integral": sig.integral}
                reports.append(AuditReport("signature", [CheckResult("integral signature", sig.integral, f"L = {sig.value}")]))
        except (ValueError, MissingStructure) as e:
            raise InputError(str(e)) from None
    else:
        bad = [c for c in checks if c not in BICOMPLEX_CHECKS]
        if bad:
            raise InputError(f"unknown or inapplicable checks for a bicomplex: {', '.join(bad)}")
        A = _load_bicomplex(args.file)
        n = args.dim if args.dim is not None else A.amb_dim
        rel = [c for c in checks if c == "relations" or c.startswith("R")]
        if (rel or "duality" in checks) and n is None:
            raise InputError("relations and duality checks need --dim (or an ambient dimension in the file)")
        if n is not None and any(c in ("R4", "R5") for c in checks) and n != 2:
            raise InputError("R4 and R5 apply only in dimension 2")
        if "ddbar" in checks:
            reports.append(ddbar_audit(A, check=False))
        if rel:
            try:
                r = relations_audit(multiplicities(A, check=False), n)
            except ValueError as e:
                raise InputError(str(e)) from None
            if "relations" not in checks:
                r = AuditReport(r.title, [c for c in r.checks if c.name in rel])
            reports.append(r)
        if "inequalities" in checks:
            reports.append(inequality_audit(cohomology_report(A, check=False)))
        if "duality" in checks:
            try:
                reports.append(duality_audit(A, n))
            except MissingStructure as e:
                raise InputError(str(e)) from None
    ok = all(r.ok for r in reports)
    out = "".join(r.to_text() for r in reports)
    if "signature" in extra:
        out += f"signature from Pontryagin numbers: {extra['signature']['value']}\n"
    doc = {"ok": ok, "reports": [r.to_json() for r in reports], **extra}
    return Outcome(out, doc, 0 if ok else 1)


def _parse_class(A: Bicomplex, text: str, kind: str, bases: dict) -> dict:
    """``DEG:c1,c2,..`` (coordinates in the canonical representative basis) or ``label=coef,...``."""
    if ":" in text:
        deg, coords = text.split(":", 1)
        try:
            key = tuple(int(x) for x in deg.split(",")) if kind == "abc" else int(deg)
            cs = [parse_scalar(c) for c in coords.split(",")]
        except ValueError:
            raise InputError(f"bad class {text!r}") from None
        if kind == "abc" and len(key) != 2:
            raise InputError(f"ABC classes are given as 'p,q:coords', got {text!r}")
        basis = bases.get(key, [])
        if len(cs) != len(basis):
            raise InputError(f"{text!r}: {len(basis)} basis classes in degree {deg}, {len(cs)} coordinates given")
        out: dict = {}
        for c, v in zip(cs, basis):
            sv = A.embed_cell(key, v) if kind == "abc" else A.embed(key, v)
            for i, x in sv.items():
                out[i] = out.get(i, ZERO) + c * x
        return {i: x for i, x in out.items() if x}
    idx = {lab: i for i, lab in enumerate(A.labels)}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise InputError(f"bad element term {part!r}; use label=coefficient")
        lab, c = part.split("=", 1)
        if lab.strip() not in idx:
            raise InputError(f"unknown basis label {lab.strip()!r}")
        try:
            out[idx[lab.strip()]] = parse_scalar(c.strip())
        except ValueError:
            raise InputError(f"bad coefficient {c!r}") from None
    return {i: x for i, x in out.items() if x}


def cmd_massey(args) -> Outcome:
    A = _load_bicomplex(args.file)
    if A.mult is None:
        raise InputError("the bicomplex carries no multiplication")
    if len(args.classes) != 3:
        raise InputError("give exactly three classes")
    tab = (bott_chern if args.kind == "abc" else de_rham)(A, reps=True, check=False)
    elems = [_parse_class(A, s, args.kind, tab.reps or {}) for s in args.classes]
    try:
        res = (abc_massey if args.kind == "abc" else triple_massey)(A, *elems)
    except MasseyError as e:
        msg = str(e)
        w = getattr(e, "witness", None)
        if w:
            msg += ": " + " + ".join(f"({format_scalar(c)})*{A.labels[i]}" for i, c in sorted(w.items()))
        return Outcome(msg + "\n", {"defined": False, "error": msg}, 1)
    rep = " + ".join(f"({format_scalar(c)})*{A.labels[i]}" for i, c in sorted(res.representative.items())) or "0"
    doc = {
        "defined": True,
        "kind": res.kind,
        "degree": list(res.degree) if isinstance(res.degree, tuple) else res.degree,
        "representative": rep,
        "class": [format_scalar(c) for c in res.coords],
        "indeterminacy": [[format_scalar(c) for c in v] for v in res.indeterminacy],
        "is_trivial": res.is_trivial,
    }
    return Outcome(res.summary() + f"\nrepresentative: {rep}\n", doc)


PROPERTIES = ("roundtrip", "additivity", "ddbar-equivalence", "reconstruction")


def _sweep_one(prop: str, seed, profile: RandomProfile) -> bool:
    A, T = random_bicomplex(seed, profile)
    if prop == "roundtrip":
        return multiplicities(A, check=False) == T
    if prop == "reconstruction":
        got = multiplicities(A, check=False)
        return all(reconstruct(got, f) == {k: v for k, v in functor_dims(A, f).items() if v} for f in FUNCTORS)
    if prop == "additivity":
        B, U = random_bicomplex(f"{seed}/partner", profile)
        return multiplicities(direct_sum(A, B), check=False) == multiplicities(A, check=False) + multiplicities(B, check=False)
    if prop == "ddbar-equivalence":
        ddbar_audit(A, check=False)  # raises on disagreement
        return True
    raise ValueError(prop)


def cmd_sweep(args) -> Outcome:
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    bad = [p for p in props if p not in PROPERTIES]
    if bad:
        raise InputError(f"unknown properties: {', '.join(bad)} (choose from {', '.join(PROPERTIES)})")
    try:
        profile = RandomProfile.named(args.profile)
    except (KeyError, ValueError):
        raise InputError(f"unknown profile {args.profile!r}") from None
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    summary = {}
    for prop in props:
        passed, first = 0, None
        for i in range(args.count):
            seed = f"{args.seed}:{i}"
            try:
                ok = _sweep_one(prop, seed, profile)
            except Exception as e:  # a crash counts as a failure with its seed
                ok = False
                if first is None:
                    first = f"{seed} ({type(e).__name__}: {e})"
            if ok:
                passed += 1
            elif first is None:
                first = seed
        summary[prop] = {"passed": passed, "count": args.count, "first_failure": first}
    lines = [f"sweep seed={args.seed} count={args.count} profile={args.profile}"]
    for prop, s in summary.items():
        line = f"  {prop}: {s['passed']}/{s['count']}"
        if s["first_failure"] is not None:
            line += f" (first failure: seed {s['first_failure']})"
        lines.append(line)
    ok = all(s["passed"] == s["count"] for s in summary.values())
    return Outcome("\n".join(lines) + "\n", {"seed": args.seed, "count": args.count, "profile": args.profile, "properties": summary}, 0 if ok else 1)


# -- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dblcomplex", description="Exact invariants of double complexes.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="structure equations -> bicomplex file")
    p.add_argument("cdga")
    p.add_argument("out", help="output path, '-' for stdout")
    p.add_argument("--model", choices=("invariant", "total"), default="invariant",
                   help="bicomplex of invariant forms (needs a complex structure) or the plain CE complex at (k,0)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("report", help="all cohomological invariants")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--reps", action="store_true", help="include canonical representatives")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("zigzag", help="multiplicity table")
    p.add_argument("file")
    p.add_argument("--render", action="store_true")
    p.add_argument("--orbit", action="store_true", help="one board per <σ,τ>-orbit (needs --dim)")
    p.add_argument("--dim", type=int)
    p.add_argument("--check-reconstruction", action="store_true",
                   help="also compare every functor with the sum over the table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("render", help="checkerboard of a multiplicity table file")
    p.add_argument("table")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--orbit", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("audit", help="run audits on a bicomplex or characteristic-number file")
    p.add_argument("file")
    p.add_argument("--checks", required=True,
                   help="comma list from: " + ", ".join(BICOMPLEX_CHECKS + CHARNUMBER_CHECKS))
    p.add_argument("--dim", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("massey", help="triple Massey product")
    p.add_argument("file")
    p.add_argument("classes", nargs="+",
                   help="three classes: 'DEG:c1,c2,...' in the canonical representative basis "
                        "(DEG = k for classical, p,q for abc) or 'label=coef,...'")
    p.add_argument("--kind", choices=("classical", "abc"), default="classical")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("sweep", help="property sweep over random bicomplexes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--profile", default="mixed")
    p.add_argument("--properties", default="roundtrip", help="comma list from: " + ", ".join(PROPERTIES))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        out = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if getattr(args, "json", False):
        doc = {"schema": SCHEMA, "command": args.command, **out.doc}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(out.text)
    return out.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
