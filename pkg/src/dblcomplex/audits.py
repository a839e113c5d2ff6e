"""Decision procedures: ∂∂̄-property, universal relations, inequalities, duality,
and congruences for characteristic numbers.

Every audit returns an ``AuditReport``: a list of named checks, each passed,
failed or not applicable, with witnesses for failures.  Audits never modify
their inputs.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .bicomplex import Bicomplex, InvalidBicomplex, validate
from .cohomology import Report, _stack, aeppli, bott_chern, cohomology_report, column_cohomology
from .linalg import Matrix, intersect, kernel_basis, rank, span_rank
from .scalars import ONE, ZERO, format_scalar
from .shapes import MultiplicityTable, ZigzagShape, mirror_sigma, mirror_tau, shapes_in_box
from .zigzag import multiplicities

__all__ = [
    "CheckResult",
    "AuditReport",
    "AuditDisagreement",
    "MissingStructure",
    "DdbarReport",
    "ddbar_audit",
    "relations_audit",
    "R5_SHAPE",
    "single_count_mutations",
    "curve_model_table",
    "surface_model_table",
    "inequality_audit",
    "duality_audit",
    "CharNumbers",
    "parse_charnumbers",
    "format_charnumbers",
    "stong_check",
    "SignatureResult",
    "signature_from_pontryagin",
]


class AuditDisagreement(RuntimeError):
    """Conditions that must be equivalent disagree: an implementation bug."""


class MissingStructure(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool | None  # None: not applicable
    detail: str = ""
    witnesses: tuple = ()

    @property
    def status(self) -> str:
        return {True: "pass", False: "FAIL", None: "n/a"}[self.passed]

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "witnesses": list(self.witnesses)}


@dataclass
class AuditReport:
    title: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.passed is False]

    def to_text(self) -> str:
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            lines.extend(f"      witness: {w}" for w in c.witnesses)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"audit": self.title, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


# -- ∂∂̄-property -------------------------------------------------------------------


DDBAR_CONDITIONS = ("ddbar_property", "dots_and_squares", "maps_isomorphic", "opposed_filtrations")


@dataclass
class DdbarReport(AuditReport):
    @property
    def conditions(self) -> dict:
        return {c.name: c.passed for c in self.checks}

    @property
    def holds(self) -> bool:
        return all(self.conditions.values())


def _unit(n: int) -> list[tuple]:
    return [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]


def _vec_text(A: Bicomplex, k: int, v: tuple) -> str:
    sparse = A.embed(k, v)
    labels = A.labels
    return " + ".join(f"({format_scalar(c)})*{labels[i]}" for i, c in sorted(sparse.items())) or "0"


def _ddbar_condition(A: Bicomplex) -> CheckResult:
    """Closed for ∂ and ∂̄ and d-exact implies ∂∂̄-exact, degree by degree."""
    witnesses = []
    for k in sorted(set(A.degrees)):
        n = A.degree_dim(k)
        m1 = A.degree_dim(k - 1)
        if not n or not m1:
            continue
        Dk = A.total_del(k)
        closed = kernel_basis(_stack(Dk, A.total_delbar(k))) if Dk.nrows else _unit(n)
        exact = A.total_d(k - 1).columns()
        meet = intersect(closed, exact, n) if closed and exact else []
        if not meet:
            continue
        dd = []
        if A.degree_dim(k - 2):
            dd = (A.total_del(k - 1) @ A.total_delbar(k - 2)).columns()
        base = span_rank(dd, n) if dd else 0
        for v in meet:
            if (span_rank(dd + [v], n) if dd else span_rank([v], n)) > base:
                witnesses.append(f"degree {k}: {_vec_text(A, k, v)}")
                break
    return CheckResult(
        "ddbar_property",
        not witnesses,
        "d-exact ∂,∂̄-closed elements are ∂∂̄-exact" if not witnesses else "d-exact ∂,∂̄-closed element not ∂∂̄-exact",
        tuple(witnesses),
    )


def _maps_condition(A: Bicomplex, rep: Report) -> CheckResult:
    maps = rep.maps
    bad = []
    pairs = (
        ("bc_delbar", rep.h_bc.dims, rep.h_delbar.dims),
        ("bc_del", rep.h_bc.dims, rep.h_del.dims),
        ("delbar_a", rep.h_delbar.dims, rep.h_a.dims),
        ("del_a", rep.h_del.dims, rep.h_a.dims),
    )
    by_deg = lambda t: {k: sum(v for (p, q), v in t.items() if p + q == k) for k in {p + q for p, q in t}}
    pairs += (
        ("bc_dr", by_deg(rep.h_bc.dims), rep.b.dims),
        ("dr_a", rep.b.dims, by_deg(rep.h_a.dims)),
    )
    for name, src, tgt in pairs:
        for key in sorted(set(src) | set(tgt)):
            r = maps[name].get(key, 0)
            s, t = src.get(key, 0), tgt.get(key, 0)
            if not (r == s == t):
                bad.append(f"{name} at {key}: rank {r}, source {s}, target {t}")
    return CheckResult("maps_isomorphic", not bad, "all six comparison maps" if not bad else "", tuple(bad))


def _filtration_condition(rep: Report) -> CheckResult:
    bad = []
    for ss in (rep.column_ss, rep.row_ss):
        if ss.degenerates_at() != 1:
            bad.append(f"{ss.orientation} spectral sequence degenerates only at page {ss.degenerates_at()}")
    for (k, p, q), m in sorted(rep.b_refined.items()):
        if k != p + q:
            bad.append(f"b_{k}^{{{p},{q}}} = {m}")
    return CheckResult("opposed_filtrations", not bad, "E_1-degeneration and pure refined Betti numbers" if not bad else "", tuple(bad))


def ddbar_audit(A: Bicomplex, check: bool = True) -> DdbarReport:
    """Evaluate the four equivalent forms of the ∂∂̄-property independently."""
    if check:
        bad = validate(A, check_mult=False)
        if bad:
            raise InvalidBicomplex(bad)
    rep = cohomology_report(A, check=False)
    T = multiplicities(A, check=False)
    odd = [z for z in T.zig if z.kind != "dot"]
    c2 = CheckResult(
        "dots_and_squares",
        not odd,
        "only dots and squares" if not odd else "zigzags of length >= 2 present",
        tuple(f"{z} x {T[z]}" for z in sorted(odd, key=str)),
    )
    report = DdbarReport("ddbar", [_ddbar_condition(A), c2, _maps_condition(A, rep), _filtration_condition(rep)])
    vals = set(report.conditions.values())
    if len(vals) > 1:
        raise AuditDisagreement("∂∂̄ conditions disagree: " + ", ".join(f"{k}={v}" for k, v in report.conditions.items()))
    return report


# -- universal relations on multiplicity tables ------------------------------------


def _r5_shape() -> ZigzagShape:
    cells = {(0, 1), (1, 1), (1, 0)}
    found = [z for z in shapes_in_box(2, 3) if set(z.cells()) == cells and z.length == 3]
    assert len(found) == 1
    return found[0]


R5_SHAPE = _r5_shape()


def _in_box(z: ZigzagShape, n: int) -> bool:
    return all(0 <= p <= n and 0 <= q <= n for p, q in z.cells())


def relations_audit(T: MultiplicityTable, n: int) -> AuditReport:
    """Check the universal relations on the zigzag counts of a table of complex dimension n.

    R1: σ-symmetry.  R2: τ-symmetry.  R3: no zigzag of length >= 2 touches a
    corner.  R4 (n = 2): no zigzag of length 2.  R5 (n = 2): the length-3 zigzag
    through (0,1), (1,1), (1,0) occurs at most once.  Squares are ignored.
    """
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    for z in T.zig:
        if not _in_box(z, n):
            raise ValueError(f"{z} leaves the box [0,{n}]^2")
    zig = T.zig
    checks = []
    bad = [f"{z}: {m} vs {mirror_sigma(z)}: {zig.get(mirror_sigma(z), 0)}" for z, m in sorted(zig.items(), key=lambda t: str(t[0])) if zig.get(mirror_sigma(z), 0) != m]
    checks.append(CheckResult("R1", not bad, "invariant under the diagonal mirror", tuple(bad)))
    bad = [f"{z}: {m} vs {mirror_tau(z, n)}: {zig.get(mirror_tau(z, n), 0)}" for z, m in sorted(zig.items(), key=lambda t: str(t[0])) if zig.get(mirror_tau(z, n), 0) != m]
    checks.append(CheckResult("R2", not bad, "invariant under the antidiagonal mirror", tuple(bad)))
    corners = {(0, 0), (n, n), (n, 0), (0, n)}
    bad = [f"{z}: {m}" for z, m in sorted(zig.items(), key=lambda t: str(t[0])) if z.length >= 2 and corners & set(z.cells())]
    checks.append(CheckResult("R3", not bad, "only dots in the corners", tuple(bad)))
    if n == 2:
        bad = [f"{z}: {m}" for z, m in sorted(zig.items(), key=lambda t: str(t[0])) if z.length == 2]
        checks.append(CheckResult("R4", not bad, "no zigzags of length 2", tuple(bad)))
        m = zig.get(R5_SHAPE, 0)
        checks.append(CheckResult("R5", m in (0, 1), f"{R5_SHAPE} occurs {m} times", () if m in (0, 1) else (f"{R5_SHAPE}: {m}",)))
    else:
        checks.append(CheckResult("R4", None, "only for n = 2"))
        checks.append(CheckResult("R5", None, "only for n = 2"))
    return AuditReport(f"relations (n={n})", checks)


def single_count_mutations(T: MultiplicityTable, n: int):
    """Yield (description, table) for every +1 / -1 change of one zigzag count in [0,n]^2."""
    for z in shapes_in_box(n):
        m = T[z]
        for delta in (1, -1):
            if m + delta < 0:
                continue
            zig = dict(T.zig)
            zig[z] = m + delta
            yield f"{z} {m} -> {m + delta}", MultiplicityTable(zig, dict(T.squares))


def curve_model_table(g: int) -> MultiplicityTable:
    """Zigzag counts of a compact curve of genus g."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    D = ZigzagShape.dot
    return MultiplicityTable({D(0, 0): 1, D(1, 1): 1, D(1, 0): g, D(0, 1): g})


def surface_model_table(b1: int, b2_plus: int, b2_minus: int) -> MultiplicityTable:
    """Zigzag counts of a compact complex surface from b_1 and the signs of the intersection form.

    ε = b_1 mod 2.  Counts: the corner dots once, the orbit of dot(1,0) (b_1-ε)/2
    times, the R5 zigzag and its τ-mirror ε times, dot(2,0) and dot(0,2)
    h^{2,0} = (b_2^+ - 1 + ε)/2 times and dot(1,1) b_2^- + 1 - ε times.
    """
    eps = b1 % 2
    if min(b1, b2_plus, b2_minus) < 0:
        raise ValueError("Betti numbers must be nonnegative")
    if (b2_plus - 1 + eps) % 2 or b2_plus - 1 + eps < 0:
        raise ValueError("b_2^+ - 1 + ε must be even and nonnegative")
    if b2_minus + 1 - eps < 0:
        raise ValueError("b_2^- + 1 - ε must be nonnegative")
    D = ZigzagShape.dot
    h10 = (b1 - eps) // 2
    h20 = (b2_plus - 1 + eps) // 2
    zig = {D(0, 0): 1, D(2, 2): 1, D(1, 1): b2_minus + 1 - eps, D(2, 0): h20, D(0, 2): h20}
    for pq in ((1, 0), (0, 1), (2, 1), (1, 2)):
        zig[D(*pq)] = h10
    zig[R5_SHAPE] = eps
    zig[mirror_tau(R5_SHAPE, 2)] = eps
    return MultiplicityTable(zig)


# -- inequalities ----------------------------------------------------------------------


def inequality_audit(report: Report) -> AuditReport:
    """h_BC >= h_kerdc >= h_delbar >= b and h_BC >= Σ_{i<=r} e_i - (r-1) b for every page r.

    Slack is recorded in each detail; ``equalities`` lists the checks with slack 0.
    """
    t = report.totals
    checks = []
    chain = (("h_bc", "h_kerdc"), ("h_kerdc", "h_delbar"), ("h_delbar", "b"))
    for lhs, rhs in chain:
        slack = t[lhs] - t[rhs]
        checks.append(CheckResult(f"{lhs} >= {rhs}", slack >= 0, f"{t[lhs]} >= {t[rhs]}, slack {slack}"))
    b = t["b"]
    ss = report.column_ss
    last = max(len(ss.pages), 1)
    acc = 0
    for r in range(1, last + 1):
        acc += ss.e(r)
        bound = acc - (r - 1) * b
        slack = t["h_bc"] - bound
        checks.append(CheckResult(f"h_bc >= sum e_i - {r - 1} b (r={r})", slack >= 0, f"{t['h_bc']} >= {bound}, slack {slack}"))
    return InequalityReport("inequalities", checks)


@dataclass
class InequalityReport(AuditReport):
    @property
    def equalities(self) -> list[str]:
        return [c.name for c in self.checks if c.passed and c.detail.endswith("slack 0")]

    def to_json(self) -> dict:
        doc = super().to_json()
        doc["equalities"] = self.equalities
        return doc


# -- duality and real structure --------------------------------------------------------


def _pairing_rank(A: Bicomplex, vol, left: dict, right: dict, n: int, name: str) -> CheckResult:
    bad = []
    for pq in sorted(set(left) | {(n - p, n - q) for p, q in right}):
        dual = (n - pq[0], n - pq[1])
        L = [A.embed_cell(pq, v) for v in left.get(pq, [])]
        R = [A.embed_cell(dual, v) for v in right.get(dual, [])]
        if len(L) != len(R):
            bad.append(f"{pq} x {dual}: dimensions {len(L)} and {len(R)}")
            continue
        if not L:
            continue
        M = Matrix([[vol(A.product_sparse(a, b)) for b in R] for a in L])
        if rank(M) != len(L):
            bad.append(f"{pq} x {dual}: rank {rank(M)} < {len(L)}")
    return CheckResult(name, not bad, "perfect pairing" if not bad else "degenerate pairing", tuple(bad))


def duality_audit(A: Bicomplex, n: int, pairings: bool | None = None) -> AuditReport:
    """Symmetries of the invariants under σ (real structure) and τ (duality in dimension n).

    With ``pairings`` True (or None and the structure available) also checks that
    the Bott-Chern x Aeppli and Serre pairings, integrated against the top
    cell of an invariant-form model, are perfect.
    """
    if A.real is None:
        raise MissingStructure("duality audit needs a real structure")
    rep = cohomology_report(A)
    bc, ae = rep.h_bc.dims, rep.h_a.dims
    checks = []
    bad = [f"h_BC^{pq} = {v} vs h_BC^{pq[::-1]} = {bc.get(pq[::-1], 0)}" for pq, v in sorted(bc.items()) if bc.get(pq[::-1], 0) != v]
    checks.append(CheckResult("bc_conjugation", not bad, "h_BC^{p,q} = h_BC^{q,p}", tuple(bad)))
    keys = set(bc) | {(n - p, n - q) for p, q in ae}
    bad = [f"h_BC^{pq} = {bc.get(pq, 0)} vs h_A^{(n - pq[0], n - pq[1])} = {ae.get((n - pq[0], n - pq[1]), 0)}" for pq in sorted(keys) if bc.get(pq, 0) != ae.get((n - pq[0], n - pq[1]), 0)]
    checks.append(CheckResult("bc_aeppli_duality", not bad, "h_BC^{p,q} = h_A^{n-p,n-q}", tuple(bad)))
    db, dd = rep.h_delbar.dims, rep.h_del.dims
    bad = [f"h_delbar^{pq} = {db.get(pq, 0)} vs h_del^{pq[::-1]} = {dd.get(pq[::-1], 0)}" for pq in sorted(set(db) | {x[::-1] for x in dd}) if db.get(pq, 0) != dd.get(pq[::-1], 0)]
    checks.append(CheckResult("dolbeault_conjugation", not bad, "h_delbar^{p,q} = h_del^{q,p}", tuple(bad)))
    bad = [f"h_delbar^{pq} = {db.get(pq, 0)} vs {(n - pq[0], n - pq[1])}" for pq in sorted(set(db) | {(n - p, n - q) for p, q in db}) if db.get(pq, 0) != db.get((n - pq[0], n - pq[1]), 0)]
    checks.append(CheckResult("serre_duality", not bad, "h_delbar^{p,q} = h_delbar^{n-p,n-q}", tuple(bad)))
    rb = rep.b_refined
    bad = [f"b_{k}^{{{p},{q}}} = {m} vs b_{k}^{{{q},{p}}} = {rb.get((k, q, p), 0)}" for (k, p, q), m in sorted(rb.items()) if rb.get((k, q, p), 0) != m]
    checks.append(CheckResult("refined_betti_conjugation", not bad, "b_k^{p,q} = b_k^{q,p}", tuple(bad)))
    keys = set(rb) | {(2 * n - k, n - p, n - q) for k, p, q in rb}
    bad = [f"b_{k}^{{{p},{q}}} = {rb.get((k, p, q), 0)} vs b_{2 * n - k}^{{{n - p},{n - q}}} = {rb.get((2 * n - k, n - p, n - q), 0)}" for k, p, q in sorted(keys) if rb.get((k, p, q), 0) != rb.get((2 * n - k, n - p, n - q), 0)]
    checks.append(CheckResult("refined_betti_duality", not bad, "b_k^{p,q} = b_{2n-k}^{n-p,n-q}", tuple(bad)))
    T = multiplicities(A, check=False).zig_only()
    for name, img in (("table_sigma", T.sigma()), ("table_tau", T.tau(n))):
        diff = sorted({str(z) for z in set(T.zig) | set(img.zig) if T[z] != img[z]})
        checks.append(CheckResult(name, not diff, "multiplicity table symmetric", tuple(diff)))
    vol = None
    if pairings is not False:
        from .ce import volume_functional

        have = A.mult is not None
        if have:
            try:
                vol = volume_functional(A)
            except ValueError:
                vol = None
        if vol is None and pairings:
            raise MissingStructure("pairing checks need multiplication and a one-dimensional top cell of invariant forms")
    if vol is not None:
        if vol.cell != (n, n):
            raise MissingStructure(f"top cell is {vol.cell}, expected ({n},{n})")
        checks.append(
            _pairing_rank(A, vol, bott_chern(A, reps=True, check=False).reps, aeppli(A, reps=True, check=False).reps, n, "bc_aeppli_pairing")
        )
        cc = column_cohomology(A, reps=True, check=False).reps
        checks.append(_pairing_rank(A, vol, cc, cc, n, "serre_pairing"))
    else:
        checks.append(CheckResult("bc_aeppli_pairing", None, "no multiplication/volume"))
        checks.append(CheckResult("serre_pairing", None, "no multiplication/volume"))
    return AuditReport(f"duality (n={n})", checks)


# -- characteristic numbers ----------------------------------------------------------


def _is_partition(t: tuple, total: int) -> bool:
    return all(x >= 1 for x in t) and list(t) == sorted(t, reverse=True) and sum(t) == total


@dataclass(frozen=True)
class CharNumbers:
    """Chern numbers c_τ keyed by partitions of n = dim_real/2 (parts in decreasing order),
    optional Pontryagin numbers p_τ keyed by partitions of dim_real/4.  Missing entries are 0."""

    dim_real: int
    chern: dict = field(default_factory=dict)
    pontryagin: dict | None = None

    def __post_init__(self):
        if self.dim_real < 0 or self.dim_real % 2:
            raise ValueError("real dimension must be even and nonnegative")
        n = self.dim_real // 2
        chern = {}
        for k, v in self.chern.items():
            k = tuple(sorted(k, reverse=True))
            if not _is_partition(k, n):
                raise ValueError(f"c {k} is not a partition of {n}")
            chern[k] = int(v)
        object.__setattr__(self, "chern", chern)
        if self.pontryagin is not None:
            if self.dim_real % 4:
                raise ValueError("Pontryagin numbers need real dimension divisible by 4")
            pont = {}
            for k, v in self.pontryagin.items():
                k = tuple(sorted(k, reverse=True))
                if not _is_partition(k, self.dim_real // 4):
                    raise ValueError(f"p {k} is not a partition of {self.dim_real // 4}")
                pont[k] = Fraction(v)
            object.__setattr__(self, "pontryagin", pont)

    def c(self, *parts: int) -> int:
        return self.chern.get(tuple(sorted(parts, reverse=True)), 0)

    def p(self, *parts: int) -> Fraction:
        return (self.pontryagin or {}).get(tuple(sorted(parts, reverse=True)), Fraction(0))


_CN_LINE = re.compile(r"^([cp])\s+([0-9,\s]+?)\s*=\s*(\S+)$")


def parse_charnumbers(text: str) -> CharNumbers:
    """Lines ``dim 8``, ``c 2,1,1 = -4``, ``p 1,1 = 7``; '#' starts a comment."""
    dim = None
    chern: dict = {}
    pont: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            try:
                dim = int(line.split()[1])
            except (IndexError, ValueError):
                raise ValueError(f"line {lineno}: expected 'dim <integer>'") from None
            continue
        m = _CN_LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'c|p <partition> = <value>'")
        kind, part, val = m.groups()
        try:
            key = tuple(int(x) for x in part.replace(" ", "").split(",") if x)
            value = int(val) if kind == "c" else Fraction(val)
        except ValueError:
            raise ValueError(f"line {lineno}: bad number") from None
        target = chern if kind == "c" else pont
        key = tuple(sorted(key, reverse=True))
        if key in target:
            raise ValueError(f"line {lineno}: duplicate entry {kind} {part}")
        target[key] = value
    if dim is None:
        raise ValueError("missing 'dim' line")
    return CharNumbers(dim, chern, pont or None)


def format_charnumbers(cn: CharNumbers) -> str:
    lines = [f"dim {cn.dim_real}"]
    lines += [f"c {','.join(map(str, k))} = {v}" for k, v in sorted(cn.chern.items(), reverse=True)]
    for k, v in sorted((cn.pontryagin or {}).items(), reverse=True):
        lines.append(f"p {','.join(map(str, k))} = {v}")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"([+-]?)(\d*)((?:[cp]\d+(?:\^\d+)?)+)")
_FACTOR = re.compile(r"([cp])(\d+)(?:\^(\d+))?")


def _parse_poly(expr: str) -> list[tuple[int, tuple]]:
    """'-8c4c1+12c2^2c1' -> [(-8, (4, 1)), (12, (2, 2, 1))]."""
    out = []
    pos = 0
    s = expr.replace(" ", "")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r} at {pos}")
        sign, coef, mono = m.groups()
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        parts = []
        for f in _FACTOR.finditer(mono):
            parts += [int(f.group(2))] * int(f.group(3) or 1)
        out.append((c, tuple(sorted(parts, reverse=True))))
        pos = m.end()
    return out


def _load(name: str) -> dict:
    return json.loads(resources.files("dblcomplex.data").joinpath(name).read_text())


def stong_check(cn: CharNumbers) -> AuditReport:
    """Evaluate the tabulated low-dimensional congruences on Chern numbers."""
    rows = _load("stong.json")
    key = str(cn.dim_real)
    if key not in rows:
        raise ValueError(f"congruences tabulated only for real dimensions {', '.join(rows)}")
    checks = []
    for row in rows[key]:
        value = sum(c * cn.c(*parts) for c, parts in _parse_poly(row["expr"]))
        res = value % row["mod"]
        checks.append(CheckResult(f"{row['expr']} = 0 mod {row['mod']}", res == 0, f"value {value}, residue {res}"))
    return AuditReport(f"congruences (dim {cn.dim_real})", checks)


@dataclass(frozen=True)
class SignatureResult:
    value: Fraction
    integral: bool

    def __str__(self) -> str:
        return f"{self.value}" + ("" if self.integral else " (not an integer)")


def signature_from_pontryagin(cn: CharNumbers) -> SignatureResult:
    """Hirzebruch L-polynomial evaluated on the Pontryagin numbers."""
    table = _load("lpoly.json")
    key = str(cn.dim_real)
    if key not in table:
        raise ValueError(f"L-polynomial tabulated only for real dimensions {', '.join(table)}")
    if cn.pontryagin is None:
        raise MissingStructure("Pontryagin numbers required")
    row = table[key]
    value = sum(c * cn.p(*parts) for c, parts in _parse_poly(row["expr"])) / row["den"]
    value = Fraction(value)
    return SignatureResult(value, value.denominator == 1)
