"""Chevalley-Eilenberg presentations and their bicomplexes of invariant forms.

A presentation lists degree-one generators and their differentials as
quadratic expressions.  In the real flavor an almost complex structure J on
the generator span is supplied; the (1,0)-coframe is the +i eigenspace of J.
In the complex flavor the generators are a (1,0)-coframe already and the
conjugate of ``phi`` is written ``cphi``.

Exterior algebra elements are dicts from sorted index tuples to Scalars.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .bicomplex import Bicomplex, InvalidBicomplex, validate
from .linalg import Matrix, inverse, kernel_basis
from .scalars import ONE, ZERO, I, Scalar, format_scalar, parse_scalar

__all__ = [
    "CdgaPresentation",
    "CdgaParseError",
    "IntegrabilityReport",
    "JacobiReport",
    "PreconditionError",
    "parse_cdga",
    "check_jacobi",
    "check_integrability",
    "invariant_bicomplex",
    "de_rham_model",
    "volume_functional",
    "to_real",
    "format_cdga",
    "ORIGIN",
]

ORIGIN = "invariant-model"

Form = dict  # sorted index tuple -> Scalar


# -- exterior algebra -------------------------------------------------------------


def _sort_sign(idx: tuple) -> tuple[int, tuple] | None:
    """Sign of the permutation sorting ``idx`` and the sorted tuple; None if a repeat."""
    if len(set(idx)) != len(idx):
        return None
    arr = list(idx)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(arr)


def _add_into(out: Form, mono: tuple, c) -> None:
    x = out.get(mono, ZERO) + c
    if x:
        out[mono] = x
    else:
        out.pop(mono, None)


def wedge(a: Form, b: Form) -> Form:
    out: Form = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s = _sort_sign(ma + mb)
            if s is None:
                continue
            _add_into(out, s[1], ca * cb * s[0])
    return out


def exterior_d(x: Form, dgen: list[Form]) -> Form:
    """Extend the generator differentials to all forms by the graded Leibniz rule."""
    out: Form = {}
    for mono, c in x.items():
        for pos, g in enumerate(mono):
            dg = dgen[g]
            if not dg:
                continue
            sign = -1 if pos % 2 else 1
            left, right = mono[:pos], mono[pos + 1 :]
            for m2, c2 in dg.items():
                s = _sort_sign(left + m2 + right)
                if s is None:
                    continue
                _add_into(out, s[1], c * c2 * sign * s[0])
    return out


def _fmt_form(x: Form, names: list[str]) -> str:
    if not x:
        return "0"
    parts = []
    for mono, c in sorted(x.items()):
        body = "*".join(names[i] for i in mono) if mono else "1"
        cs = format_scalar(c)
        if cs == "1":
            parts.append(body)
        elif cs == "-1":
            parts.append("-" + body)
        else:
            parts.append(f"({cs})*{body}")
    return " + ".join(parts).replace("+ -", "- ")


# -- presentation and parser --------------------------------------------------------


class CdgaParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str, expected: str | None = None):
        self.line, self.col, self.expected = line, col, expected
        tail = f" (expected {expected})" if expected else ""
        super().__init__(f"line {line}, column {col}: {msg}{tail}")


class PreconditionError(ValueError):
    """Jacobi or integrability failed; carries the witness text."""


@dataclass(frozen=True)
class CdgaPresentation:
    """Degree-one generators with quadratic differentials.

    ``d[name]`` maps sorted index pairs into the extended generator list
    (real: the generators; complex: generators followed by their conjugates)
    to coefficients.  ``J`` is the matrix of J on the real generator span,
    column j holding the image of generator j.
    """

    flavor: str
    generators: tuple[str, ...]
    d: dict
    J: Matrix | None = None

    @property
    def names(self) -> list[str]:
        if self.flavor == "complex":
            return list(self.generators) + ["c" + g for g in self.generators]
        return list(self.generators)

    def dgen(self) -> list[Form]:
        """Differentials of all extended generators as forms."""
        n = len(self.generators)
        base = [dict(self.d.get(g, {})) for g in self.generators]
        if self.flavor != "complex":
            return base
        conj_idx = lambda i: i + n if i < n else i - n
        conj = []
        for f in base:
            c: Form = {}
            for (a, b), x in f.items():
                s = _sort_sign((conj_idx(a), conj_idx(b)))
                _add_into(c, s[1], x.conj() * s[0])
            conj.append(c)
        return base + conj


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _split_terms(text: str, line: int, col0: int) -> list[tuple[int, str, int]]:
    """Split at top-level + and - into (sign, term, column)."""
    out = []
    depth = 0
    cur = ""
    sign = 1
    start = col0
    leading = True
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise CdgaParseError(line, col0 + i, "unbalanced ')'")
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur.strip(), start))
            elif not leading:
                raise CdgaParseError(line, col0 + i, "empty term", "a term")
            leading = False
            sign = -1 if ch == "-" else 1
            cur = ""
            start = col0 + i + 1
        else:
            cur += ch
    if depth:
        raise CdgaParseError(line, col0 + len(text), "unbalanced '('")
    if cur.strip():
        out.append((sign, cur.strip(), start))
    elif text.strip():
        raise CdgaParseError(line, col0 + len(text), "expression ends with an operator", "a term")
    return out


def _parse_expr(text: str, index: dict, arity: int, line: int, col0: int) -> dict:
    """Sum of coefficient * generator products with exactly ``arity`` generators per term."""
    out: dict = {}
    if text.strip() == "0":
        return out
    terms = _split_terms(text, line, col0)
    if not terms:
        raise CdgaParseError(line, col0, "empty right-hand side", "an expression or 0")
    for sign, term, col in terms:
        coef = Scalar(sign)
        gens = []
        for factor in _split_factors(term, line, col):
            f = factor.strip()
            if f in index:
                gens.append(index[f])
                continue
            if f.startswith("(") and f.endswith(")"):
                f = f[1:-1]
            try:
                coef = coef * parse_scalar(f)
            except ValueError:
                if _NAME.match(f):
                    raise CdgaParseError(line, col, f"unknown generator {f!r}", "a declared generator") from None
                raise CdgaParseError(line, col, f"bad factor {factor.strip()!r}", "a scalar or generator") from None
        if len(gens) != arity:
            want = "a product of two generators" if arity == 2 else "a single generator"
            raise CdgaParseError(line, col, f"term {term!r} has {len(gens)} generator factors", want)
        s = _sort_sign(tuple(gens))
        if s is None:
            continue
        key = s[1] if arity == 2 else s[1][0]
        out[key] = out.get(key, ZERO) + coef * s[0]
    return {k: v for k, v in out.items() if v}


def _split_factors(term: str, line: int, col: int) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in term:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            # '3/4*i' style literals keep their '*i'
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    merged = []
    for f in out:
        if f.strip() == "i" and merged and _is_number(merged[-1]):
            merged[-1] = merged[-1] + "*i"
        else:
            merged.append(f)
    if any(not f.strip() for f in merged):
        raise CdgaParseError(line, col, f"empty factor in {term!r}", "a scalar or generator")
    return merged


def _is_number(s: str) -> bool:
    return bool(re.fullmatch(r"\s*\d+(/\d+)?\s*", s))


def parse_cdga(text: str) -> CdgaPresentation:
    flavor = None
    gens: list[str] | None = None
    index: dict = {}
    d_lines: dict = {}
    j_lines: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        toks = line.split()
        head = toks[0]
        col = indent + 1
        if flavor is None:
            if head != "cdga" or len(toks) != 2 or toks[1] not in ("real", "complex"):
                raise CdgaParseError(lineno, col, "missing header", "'cdga real' or 'cdga complex'")
            flavor = toks[1]
            continue
        if head == "generators":
            if gens is not None:
                raise CdgaParseError(lineno, col, "generators declared twice")
            gens = toks[1:]
            if not gens:
                raise CdgaParseError(lineno, col + len("generators"), "empty generator list", "generator names")
            for g in gens:
                c = line.index(g) + 1
                if not _NAME.match(g) or g == "i":
                    raise CdgaParseError(lineno, c, f"bad generator name {g!r}", "an identifier other than 'i'")
                if g in index:
                    raise CdgaParseError(lineno, c, f"duplicate generator {g!r}")
                index[g] = len(index)
            if flavor == "complex":
                n = len(gens)
                for g in gens:
                    cg = "c" + g
                    if cg in index:
                        raise CdgaParseError(lineno, col, f"conjugate name {cg!r} clashes with a generator")
                    index[cg] = index[g] + n
            continue
        if gens is None:
            raise CdgaParseError(lineno, col, f"{head!r} before generators", "'generators'")
        if head in ("d", "J"):
            m = re.match(r"\s*(d|J)\s+(\S+)\s*=(.*)$", line)
            if not m:
                raise CdgaParseError(lineno, col, f"malformed {head} line", f"'{head} <generator> = <expression>'")
            name = m.group(2)
            ncol = line.index(name, indent + 1) + 1
            if name not in gens:
                raise CdgaParseError(lineno, ncol, f"unknown generator {name!r}", "a declared generator")
            rhs_col = m.start(3) + 1
            if head == "d":
                if name in d_lines:
                    raise CdgaParseError(lineno, ncol, f"second d line for {name!r}")
                d_lines[name] = _parse_expr(m.group(3), index, 2, lineno, rhs_col)
            else:
                if flavor != "real":
                    raise CdgaParseError(lineno, col, "J lines are only allowed in the real flavor")
                if name in j_lines:
                    raise CdgaParseError(lineno, ncol, f"second J line for {name!r}")
                j_lines[name] = (_parse_expr(m.group(3), index, 1, lineno, rhs_col), lineno)
            continue
        raise CdgaParseError(lineno, col, f"unknown directive {head!r}", "'generators', 'd' or 'J'")
    if flavor is None:
        raise CdgaParseError(1, 1, "empty file", "'cdga real' or 'cdga complex'")
    if gens is None:
        raise CdgaParseError(1, 1, "no generators declared", "'generators'")
    J = _complete_J(gens, j_lines) if j_lines else None
    return CdgaPresentation(flavor, tuple(gens), d_lines, J)


def _complete_J(gens: list[str], j_lines: dict) -> Matrix:
    """Fill missing images using J^2 = -1 on single-term lines, then check J^2 = -1."""
    n = len(gens)
    last = max(ln for _, ln in j_lines.values())
    if n % 2:
        raise CdgaParseError(last, 1, f"J needs an even number of generators, got {n}")
    img: dict = {gens.index(g): dict(v) for g, (v, _) in j_lines.items()}
    changed = True
    while changed and len(img) < n:
        changed = False
        for g, v in list(img.items()):
            if len(v) == 1:
                (h, c), = v.items()
                if h not in img:
                    img[h] = {g: -(ONE / c)}
                    changed = True
    missing = [gens[i] for i in range(n) if i not in img]
    if missing:
        raise CdgaParseError(last, 1, f"J image of {', '.join(missing)} cannot be inferred", "more J lines")
    cols = [[img[j].get(i, ZERO) for i in range(n)] for j in range(n)]
    J = Matrix.from_columns(cols, n)
    if J @ J != -Matrix.identity(n):
        raise CdgaParseError(last, 1, "J does not square to -1")
    return J


def format_cdga(P: CdgaPresentation) -> str:
    lines = [f"cdga {P.flavor}", "generators " + " ".join(P.generators)]
    names = P.names
    for g in P.generators:
        f = P.d.get(g)
        if f:
            lines.append(f"d {g} = {_fmt_form(f, names)}")
    if P.J is not None:
        for j, g in enumerate(P.generators):
            col = {(i,): P.J.rows[i][j] for i in range(P.J.nrows) if P.J.rows[i][j]}
            lines.append(f"J {g} = {_fmt_form(col, names)}")
    return "\n".join(lines) + "\n"


# -- checks -------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    failures: dict = field(default_factory=dict)  # generator name -> d^2 as text

    def __str__(self) -> str:
        if self.ok:
            return "jacobi: ok (d^2 = 0 on every generator)"
        return "jacobi: FAILED\n" + "\n".join(f"  d^2 {g} = {v}" for g, v in self.failures.items())


def check_jacobi(P: CdgaPresentation) -> JacobiReport:
    dg = P.dgen()
    names = P.names
    bad = {}
    for i, g in enumerate(names):
        dd = exterior_d(dg[i], dg)
        if dd:
            bad[g] = _fmt_form(dd, names)
    return JacobiReport(not bad, bad)


@dataclass(frozen=True)
class IntegrabilityReport:
    ok: bool
    witness: tuple[str, str] | None = None  # ((1,0)-form, its (0,2) component)
    coframe: tuple[str, ...] = ()

    def __str__(self) -> str:
        head = "integrability: ok" if self.ok else "integrability: FAILED"
        lines = [head]
        lines.extend(f"  {c}" for c in self.coframe)
        if self.witness:
            lines.append(f"  witness: (0,2)-part of d{self.witness[0]} = {self.witness[1]}")
        return "\n".join(lines)


@dataclass(frozen=True)
class _Coframe:
    """Complex frame psi_0..psi_{2m-1} (phi then conjugates) and differentials in it."""

    m: int
    names: list
    dpsi: list  # Form per psi
    phi_in_gens: list  # each phi as coefficient vector over the real generators


def _coframe(P: CdgaPresentation) -> _Coframe:
    if P.flavor == "complex":
        m = len(P.generators)
        return _Coframe(m, P.names, P.dgen(), [])
    if P.J is None:
        raise PreconditionError("real presentation without J has no bigrading")
    n = len(P.generators)
    m = n // 2
    M = P.J - Matrix.identity(n).scale(I)
    phis = [_normalize(v) for v in kernel_basis(M)]
    if len(phis) != m:
        raise PreconditionError("J has an eigenspace of the wrong dimension")
    # columns: phi_1..phi_m, conj(phi_1)..conj(phi_m), in generator coordinates
    cols = [list(v) for v in phis] + [[x.conj() for x in v] for v in phis]
    Pm = Matrix.from_columns(cols, n)
    Pinv = inverse(Pm)
    # generator g_j = sum_k Pinv[k][j] psi_k
    gen_in_psi = [{(k,): Pinv.rows[k][j] for k in range(n) if Pinv.rows[k][j]} for j in range(n)]
    dg = P.dgen()
    # d psi_k = sum_j Pm[j][k] d g_j, with d g_j rewritten in psi
    dg_psi = []
    for j in range(n):
        f: Form = {}
        for (a, b), c in dg[j].items():
            for m2, x in wedge(gen_in_psi[a], gen_in_psi[b]).items():
                _add_into(f, m2, c * x)
        dg_psi.append(f)
    dpsi = []
    for k in range(n):
        f: Form = {}
        for j in range(n):
            c = Pm.rows[j][k]
            if c:
                for m2, x in dg_psi[j].items():
                    _add_into(f, m2, c * x)
        dpsi.append(f)
    names = [f"phi{i + 1}" for i in range(m)] + [f"cphi{i + 1}" for i in range(m)]
    return _Coframe(m, names, dpsi, [v for v in phis])


def _normalize(v: tuple) -> tuple:
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def _describe_coframe(P: CdgaPresentation, cf: _Coframe) -> tuple[str, ...]:
    if P.flavor == "complex":
        return ()
    out = []
    for i, v in enumerate(cf.phi_in_gens):
        f = {(j,): x for j, x in enumerate(v) if x}
        out.append(f"phi{i + 1} = {_fmt_form(f, list(P.generators))}")
    return tuple(out)


def check_integrability(P: CdgaPresentation) -> IntegrabilityReport:
    """The (0,2)-part of dφ vanishes for every (1,0)-form φ of the coframe."""
    if P.flavor == "real" and P.J is None:
        raise PreconditionError("integrability needs J (real flavor) or a complex coframe")
    cf = _coframe(P)
    m = cf.m
    desc = _describe_coframe(P, cf)
    for k in range(m):
        bad = {mono: c for mono, c in cf.dpsi[k].items() if all(i >= m for i in mono)}
        if bad:
            return IntegrabilityReport(False, (cf.names[k], _fmt_form(bad, cf.names)), desc)
    return IntegrabilityReport(True, None, desc)


# -- bicomplex of invariant forms ---------------------------------------------------------


def _bidegree(mono: tuple, m: int) -> tuple[int, int]:
    p = sum(1 for i in mono if i < m)
    return p, len(mono) - p


def invariant_bicomplex(P: CdgaPresentation, check: bool = True) -> Bicomplex:
    """Full exterior algebra on the (1,0)- and (0,1)-coframes with ∂, ∂̄, product and conjugation."""
    jac = check_jacobi(P)
    if not jac.ok:
        raise PreconditionError(str(jac))
    integ = check_integrability(P)
    if not integ.ok:
        raise PreconditionError(str(integ))
    cf = _coframe(P)
    m = cf.m
    n = 2 * m
    monos = [c for k in range(n + 1) for c in combinations(range(n), k)]
    cells: dict = {}
    for mono in monos:
        cells.setdefault(_bidegree(mono, m), []).append(mono)
    for pq in cells:
        cells[pq].sort()
    label = lambda mono: "*".join(cf.names[i] for i in mono) if mono else "1"
    pos = {mono: (pq, i) for pq, lst in cells.items() for i, mono in enumerate(lst)}
    dl_rows: dict = {}
    db_rows: dict = {}
    for pq, lst in cells.items():
        for j, mono in enumerate(lst):
            dx = exterior_d({mono: ONE}, cf.dpsi)
            for m2, c in dx.items():
                tpq, i = pos[m2]
                if tpq == (pq[0] + 1, pq[1]):
                    store = dl_rows
                elif tpq == (pq[0], pq[1] + 1):
                    store = db_rows
                else:
                    raise PreconditionError(f"d{label(mono)} has a component in bidegree {tpq}")
                store.setdefault(pq, {})[(i, j)] = c
    def build(store, step):
        out = {}
        for pq, entries in store.items():
            tgt = (pq[0] + step[0], pq[1] + step[1])
            nr, nc = len(cells[tgt]), len(cells[pq])
            rows = [[ZERO] * nc for _ in range(nr)]
            for (i, j), c in entries.items():
                rows[i][j] = c
            out[pq] = Matrix._raw(tuple(tuple(r) for r in rows), nr, nc)
        return out

    dl = build(dl_rows, (1, 0))
    db = build(db_rows, (0, 1))
    # real structure: conjugation swaps psi_i <-> psi_{i±m}
    swap = lambda i: i + m if i < m else i - m
    real = {}
    for pq, lst in cells.items():
        tq = (pq[1], pq[0])
        nr, nc = len(cells[tq]), len(lst)
        rows = [[ZERO] * nc for _ in range(nr)]
        for j, mono in enumerate(lst):
            s = _sort_sign(tuple(swap(i) for i in mono))
            _, i = pos[s[1]]
            rows[i][j] = Scalar(s[0])
        real[pq] = Matrix._raw(tuple(tuple(r) for r in rows), nr, nc)
    labels = {pq: tuple(label(x) for x in lst) for pq, lst in cells.items()}
    B0 = Bicomplex(labels, dl, db, None, real, m, ORIGIN)
    gidx = {mono: B0.offsets[pq] + i for mono, (pq, i) in pos.items()}
    mult = {}
    for a in monos:
        for b in monos:
            s = _sort_sign(a + b)
            if s is None:
                continue
            mult[(gidx[a], gidx[b])] = {gidx[s[1]]: Scalar(s[0])}
    B = Bicomplex(labels, dl, db, mult, real, m, ORIGIN)
    if check:
        bad = validate(B, check_mult=False)
        if bad:
            raise InvalidBicomplex(bad)
    return B


def de_rham_model(P: CdgaPresentation) -> Bicomplex:
    """Exterior algebra on the generators with forms of degree k placed at (k, 0).

    ∂ is the Chevalley-Eilenberg differential and ∂̄ = 0, so the total complex is
    the ordinary CE complex; no complex structure is involved.
    """
    jac = check_jacobi(P)
    if not jac.ok:
        raise PreconditionError(str(jac))
    names = P.names
    n = len(names)
    dg = P.dgen()
    monos = [c for k in range(n + 1) for c in combinations(range(n), k)]
    cells: dict = {}
    for mono in monos:
        cells.setdefault((len(mono), 0), []).append(mono)
    pos = {mono: (pq, i) for pq, lst in cells.items() for i, mono in enumerate(lst)}
    dl = {}
    for pq, lst in cells.items():
        tgt = (pq[0] + 1, 0)
        if tgt not in cells:
            continue
        rows = [[ZERO] * len(lst) for _ in cells[tgt]]
        for j, mono in enumerate(lst):
            for m2, c in exterior_d({mono: ONE}, dg).items():
                rows[pos[m2][1]][j] = c
        dl[pq] = Matrix._raw(tuple(tuple(r) for r in rows), len(cells[tgt]), len(lst))
    label = lambda mono: "*".join(names[i] for i in mono) if mono else "1"
    labels = {pq: tuple(label(x) for x in lst) for pq, lst in cells.items()}
    B0 = Bicomplex(labels, dl, {}, None, None, None, "ce-total")
    gidx = {mono: B0.offsets[pq] + i for mono, (pq, i) in pos.items()}
    mult = {}
    for a in monos:
        for b in monos:
            s = _sort_sign(a + b)
            if s is not None:
                mult[(gidx[a], gidx[b])] = {gidx[s[1]]: Scalar(s[0])}
    return Bicomplex(labels, dl, {}, mult, None, None, "ce-total")


@dataclass(frozen=True)
class VolumeFunctional:
    """Coefficient of the top form φ^1...φ^m φ̄^1...φ̄^m."""

    cell: tuple[int, int]
    index: int

    def __call__(self, v: dict) -> Scalar:
        return v.get(self.index, ZERO)


def volume_functional(B: Bicomplex) -> VolumeFunctional:
    if B.origin != ORIGIN or B.amb_dim is None:
        raise ValueError("volume functional needs a bicomplex of invariant forms")
    m = B.amb_dim
    if B.dim((m, m)) != 1:
        raise ValueError("top cell is not one-dimensional")
    return VolumeFunctional((m, m), B.offsets[(m, m)])


def to_real(P: CdgaPresentation) -> CdgaPresentation:
    """Real flavor with eta_{2j-1} = Re φ_j, eta_{2j} = Im φ_j and J eta_{2j} = eta_{2j-1}."""
    if P.flavor != "complex":
        raise ValueError("to_real expects a complex-coframe presentation")
    m = len(P.generators)
    n = 2 * m
    half = Scalar(1, 0) / 2
    # psi in eta: phi_j = eta_{2j-1} + i eta_{2j}, conj(phi_j) = eta_{2j-1} - i eta_{2j}
    psi_in_eta = []
    for j in range(m):
        psi_in_eta.append({(2 * j,): ONE, (2 * j + 1,): I})
    for j in range(m):
        psi_in_eta.append({(2 * j,): ONE, (2 * j + 1,): -I})
    dpsi = P.dgen()
    d_eta: dict = {}
    names = [f"eta{k + 1}" for k in range(n)]
    for j in range(m):
        # d eta_{2j-1} = (dphi + dconj)/2, d eta_{2j} = (dphi - dconj)/(2i)
        for which, coef_phi, coef_c in ((2 * j, half, half), (2 * j + 1, -I * half, I * half)):
            f: Form = {}
            for src, cc in ((j, coef_phi), (j + m, coef_c)):
                for (a, b), x in dpsi[src].items():
                    for m2, y in wedge(psi_in_eta[a], psi_in_eta[b]).items():
                        _add_into(f, m2, cc * x * y)
            if f:
                d_eta[names[which]] = f
    cols = []
    for k in range(n):
        col = [ZERO] * n
        if k % 2:  # J eta_{2j} = eta_{2j-1}
            col[k - 1] = ONE
        else:  # J eta_{2j-1} = -eta_{2j}
            col[k + 1] = -ONE
        cols.append(col)
    return CdgaPresentation("real", tuple(names), d_eta, Matrix.from_columns(cols, n))
