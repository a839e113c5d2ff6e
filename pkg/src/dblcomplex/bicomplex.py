"""Bounded double complexes and their constructors.

A :class:`Bicomplex` stores, per bidegree (p, q), an ordered list of basis
labels and the components of the two differentials as matrices:
``del_[(p, q)]`` maps A^{p,q} -> A^{p+1,q}, ``delbar[(p, q)]`` maps
A^{p,q} -> A^{p,q+1}.  Missing matrices are zero.

Optionally it carries a multiplication (sparse table over global basis
indices), a real structure (an antilinear involution sigma with
sigma(v) = S conj(v), S mapping A^{p,q} -> A^{q,p}) and an ambient
dimension n.

Global basis order: cells sorted by (p, q), labels in cell order.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, inverse, rank
from .scalars import ONE, ZERO, I, Scalar, as_scalar, format_scalar, parse_scalar
from .shapes import MultiplicityTable, ZigzagShape

__all__ = [
    "Bicomplex",
    "Violation",
    "InvalidBicomplex",
    "validate",
    "make_zigzag",
    "make_square",
    "direct_sum",
    "tensor",
    "conjugate",
    "dual",
    "shift",
    "blowup_model",
    "basis_change",
    "random_bicomplex",
    "RandomProfile",
    "read_bicomplex",
    "write_bicomplex",
]

Bidegree = tuple[int, int]
Sparse = dict  # global index -> Scalar


class InvalidBicomplex(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid bicomplex: {head}{more}")


@dataclass(frozen=True)
class Violation:
    identity: str
    where: tuple
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.identity} fails at {self.where}"
        return f"{s}: {self.detail}" if self.detail else s


def _mat_entries(m: Matrix) -> str:
    return "[" + " ; ".join(" ".join(format_scalar(x) for x in r) for r in m.rows) + "]"


@dataclass(frozen=True, eq=False)
class Bicomplex:
    cells: Mapping[Bidegree, tuple[str, ...]]
    del_: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    delbar: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    mult: Mapping[tuple[int, int], Mapping[int, Scalar]] | None = None
    real: Mapping[Bidegree, Matrix] | None = None
    amb_dim: int | None = None
    origin: str | None = None

    def __post_init__(self):
        cells = {}
        for pq, labels in self.cells.items():
            labels = tuple(str(x) for x in labels)
            if labels:
                cells[(int(pq[0]), int(pq[1]))] = labels
        cells = dict(sorted(cells.items()))
        object.__setattr__(self, "cells", cells)
        for name, step in (("del_", (1, 0)), ("delbar", (0, 1))):
            clean = {}
            for pq, m in getattr(self, name).items():
                pq = (int(pq[0]), int(pq[1]))
                src = len(cells.get(pq, ()))
                tgt = len(cells.get((pq[0] + step[0], pq[1] + step[1]), ()))
                if m.shape != (tgt, src):
                    raise ValueError(
                        f"{name.rstrip('_')} at {pq}: matrix is {m.nrows}x{m.ncols}, cells need {tgt}x{src}"
                    )
                if src and tgt and not m.is_zero():
                    clean[pq] = m
            object.__setattr__(self, name, clean)
        if self.real is not None:
            clean = {}
            for pq, m in self.real.items():
                pq = (int(pq[0]), int(pq[1]))
                src = len(cells.get(pq, ()))
                tgt = len(cells.get((pq[1], pq[0]), ()))
                if m.shape != (tgt, src):
                    raise ValueError(f"real structure at {pq}: matrix is {m.nrows}x{m.ncols}, needs {tgt}x{src}")
                if src:
                    clean[pq] = m
            for pq in cells:
                if pq not in clean:
                    raise ValueError(f"real structure missing on cell {pq}")
            object.__setattr__(self, "real", clean)
        if self.mult is not None:
            n = self.total_dim
            clean = {}
            for (i, j), vec in self.mult.items():
                if not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"multiplication entry ({i},{j}) out of range")
                v = {int(k): as_scalar(c) for k, c in vec.items() if c}
                for k in v:
                    if not 0 <= k < n:
                        raise ValueError(f"multiplication target index {k} out of range")
                if v:
                    clean[(int(i), int(j))] = v
            object.__setattr__(self, "mult", clean)

    # -- indexing ----------------------------------------------------------

    @cached_property
    def offsets(self) -> dict[Bidegree, int]:
        out, off = {}, 0
        for pq, labels in self.cells.items():
            out[pq] = off
            off += len(labels)
        return out

    @cached_property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.cells.values())

    @cached_property
    def index_bidegree(self) -> list[Bidegree]:
        out = []
        for pq, labels in self.cells.items():
            out.extend([pq] * len(labels))
        return out

    @cached_property
    def labels(self) -> list[str]:
        return [lab for labels in self.cells.values() for lab in labels]

    def dim(self, pq: Bidegree) -> int:
        return len(self.cells.get(tuple(pq), ()))

    def bidegrees(self) -> list[Bidegree]:
        return list(self.cells)

    @cached_property
    def degrees(self) -> list[int]:
        return sorted({p + q for p, q in self.cells})

    def cells_in_degree(self, k: int) -> list[Bidegree]:
        return [pq for pq in self.cells if pq[0] + pq[1] == k]

    def degree_dim(self, k: int) -> int:
        return sum(self.dim(pq) for pq in self.cells_in_degree(k))

    def degree_slices(self, k: int) -> list[tuple[Bidegree, int, int]]:
        out, off = [], 0
        for pq in self.cells_in_degree(k):
            d = self.dim(pq)
            out.append((pq, off, off + d))
            off += d
        return out

    @cached_property
    def support_box(self) -> tuple[int, int, int, int]:
        if not self.cells:
            return (0, -1, 0, -1)
        ps = [p for p, _ in self.cells]
        qs = [q for _, q in self.cells]
        return (min(ps), max(ps), min(qs), max(qs))

    # -- differentials ------------------------------------------------------

    def d1(self, pq: Bidegree) -> Matrix:
        """∂ out of A^{p,q}."""
        pq = tuple(pq)
        m = self.del_.get(pq)
        if m is not None:
            return m
        return Matrix.zeros(self.dim((pq[0] + 1, pq[1])), self.dim(pq))

    def d2(self, pq: Bidegree) -> Matrix:
        """∂̄ out of A^{p,q}."""
        pq = tuple(pq)
        m = self.delbar.get(pq)
        if m is not None:
            return m
        return Matrix.zeros(self.dim((pq[0], pq[1] + 1)), self.dim(pq))

    def sigma_matrix(self, pq: Bidegree) -> Matrix:
        if self.real is None:
            raise ValueError("bicomplex carries no real structure")
        return self.real[tuple(pq)]

    def _total_block(self, k: int, which: str) -> Matrix:
        src = self.degree_slices(k)
        tgt = self.degree_slices(k + 1)
        nt = sum(e - s for _, s, e in tgt)
        ns = sum(e - s for _, s, e in src)
        if nt == 0 or ns == 0:
            return Matrix.zeros(nt, ns)
        rows = [[ZERO] * ns for _ in range(nt)]
        tpos = {pq: s for pq, s, _ in tgt}
        for pq, s0, _ in src:
            for kind, step in (("del", (1, 0)), ("delbar", (0, 1))):
                if which not in ("d", kind):
                    continue
                m = (self.del_ if kind == "del" else self.delbar).get(pq)
                if m is None:
                    continue
                t0 = tpos[(pq[0] + step[0], pq[1] + step[1])]
                for i, r in enumerate(m.rows):
                    row = rows[t0 + i]
                    for j, x in enumerate(r):
                        if x:
                            row[s0 + j] = row[s0 + j] + x
        return Matrix._raw(tuple(tuple(r) for r in rows), nt, ns)

    def total_del(self, k: int) -> Matrix:
        return self._total_block(k, "del")

    def total_delbar(self, k: int) -> Matrix:
        return self._total_block(k, "delbar")

    def total_d(self, k: int) -> Matrix:
        """d = ∂ + ∂̄ from total degree k to k+1, blocks ordered by p."""
        return self._total_block(k, "d")

    # -- global sparse operators -------------------------------------------

    @cached_property
    def _sparse_ops(self) -> tuple[dict, dict]:
        """Column-sparse global ∂ and ∂̄: index -> {index: coef}."""
        out = []
        for maps, step in ((self.del_, (1, 0)), (self.delbar, (0, 1))):
            cols: dict[int, dict] = {}
            for pq, m in maps.items():
                s0 = self.offsets[pq]
                t0 = self.offsets[(pq[0] + step[0], pq[1] + step[1])]
                for j in range(m.ncols):
                    col = {t0 + i: m.rows[i][j] for i in range(m.nrows) if m.rows[i][j]}
                    if col:
                        cols[s0 + j] = col
            out.append(cols)
        return out[0], out[1]

    def apply_sparse(self, which: str, v: Sparse) -> Sparse:
        dl, db = self._sparse_ops
        ops = {"del": (dl,), "delbar": (db,), "d": (dl, db)}[which]
        out: dict = {}
        for op in ops:
            for j, c in v.items():
                col = op.get(j)
                if col:
                    for i, a in col.items():
                        x = out.get(i, ZERO) + a * c
                        if x:
                            out[i] = x
                        else:
                            out.pop(i, None)
        return out

    def product_sparse(self, u: Sparse, v: Sparse) -> Sparse:
        if self.mult is None:
            raise ValueError("bicomplex carries no multiplication")
        out: dict = {}
        mult = self.mult
        for i, a in u.items():
            for j, b in v.items():
                e = mult.get((i, j))
                if e:
                    ab = a * b
                    for k, c in e.items():
                        x = out.get(k, ZERO) + ab * c
                        if x:
                            out[k] = x
                        else:
                            out.pop(k, None)
        return out

    def sigma_sparse(self, v: Sparse) -> Sparse:
        cols = self._sigma_cols
        out: dict = {}
        for j, c in v.items():
            cc = c.conj()
            for i, a in cols.get(j, {}).items():
                x = out.get(i, ZERO) + a * cc
                if x:
                    out[i] = x
                else:
                    out.pop(i, None)
        return out

    @cached_property
    def _sigma_cols(self) -> dict:
        if self.real is None:
            raise ValueError("bicomplex carries no real structure")
        cols: dict = {}
        for pq, m in self.real.items():
            s0 = self.offsets[pq]
            t0 = self.offsets.get((pq[1], pq[0]), 0)
            for j in range(m.ncols):
                cols[s0 + j] = {t0 + i: m.rows[i][j] for i in range(m.nrows) if m.rows[i][j]}
        return cols

    # dense helpers on total-degree vectors

    def embed(self, k: int, v: Sequence) -> Sparse:
        """Global sparse vector from a dense vector in total degree k."""
        base = []
        for pq, s, e in self.degree_slices(k):
            o = self.offsets[pq]
            base.extend(range(o, o + (e - s)))
        if len(v) != len(base):
            raise ValueError(f"vector of length {len(v)} in degree {k} of dimension {len(base)}")
        return {g: as_scalar(x) for g, x in zip(base, v) if x}

    def restrict(self, k: int, v: Sparse) -> tuple:
        out = []
        for pq, s, e in self.degree_slices(k):
            o = self.offsets[pq]
            out.extend(v.get(g, ZERO) for g in range(o, o + (e - s)))
        for g in v:
            p, q = self.index_bidegree[g]
            if p + q != k:
                raise ValueError(f"vector has a component outside degree {k}")
        return tuple(out)

    def embed_cell(self, pq: Bidegree, v: Sequence) -> Sparse:
        o = self.offsets.get(tuple(pq), 0)
        if len(v) != self.dim(pq):
            raise ValueError(f"vector of length {len(v)} in cell {pq} of dimension {self.dim(pq)}")
        return {o + i: as_scalar(x) for i, x in enumerate(v) if x}

    def restrict_cell(self, pq: Bidegree, v: Sparse) -> tuple:
        o = self.offsets.get(tuple(pq), 0)
        d = self.dim(pq)
        for g in v:
            if not o <= g < o + d:
                raise ValueError(f"vector has a component outside cell {pq}")
        return tuple(v.get(o + i, ZERO) for i in range(d))

    def with_amb_dim(self, n: int | None) -> "Bicomplex":
        return Bicomplex(self.cells, self.del_, self.delbar, self.mult, self.real, n, self.origin)

    def strip(self) -> "Bicomplex":
        """Same differentials without multiplication and real structure."""
        return Bicomplex(self.cells, self.del_, self.delbar, None, None, self.amb_dim, None)

    def __repr__(self) -> str:
        dims = ", ".join(f"{pq}:{len(v)}" for pq, v in self.cells.items())
        extra = []
        if self.mult is not None:
            extra.append("mult")
        if self.real is not None:
            extra.append("real")
        tail = f" +{'+'.join(extra)}" if extra else ""
        return f"Bicomplex({{{dims}}}{tail})"


# -- validation ---------------------------------------------------------------


def _nonzero(m: Matrix) -> bool:
    return not m.is_zero()


def validate(A: Bicomplex, check_mult: bool = True) -> list[Violation]:
    """Every violated structural identity; an empty list means A is valid."""
    out: list[Violation] = []
    for pq in A.cells:
        p, q = pq
        dd = A.d1((p + 1, q)) @ A.d1(pq)
        if _nonzero(dd):
            out.append(Violation("del^2 = 0", pq, _mat_entries(dd)))
        bb = A.d2((p, q + 1)) @ A.d2(pq)
        if _nonzero(bb):
            out.append(Violation("delbar^2 = 0", pq, _mat_entries(bb)))
        ac = A.d1((p, q + 1)) @ A.d2(pq) + A.d2((p + 1, q)) @ A.d1(pq)
        if _nonzero(ac):
            out.append(Violation("del delbar + delbar del = 0", pq, _mat_entries(ac)))
    if A.real is not None:
        for pq in A.cells:
            p, q = pq
            S = A.real[pq]
            Sb = A.real[(q, p)]
            sq = Sb @ S.conj()
            if sq != Matrix.identity(A.dim(pq)):
                out.append(Violation("sigma^2 = id", pq))
            # sigma(del v) = delbar(sigma v)
            lhs = (A.real[(p + 1, q)] @ A.d1(pq).conj()) if A.dim((p + 1, q)) else None
            rhs = A.d2((q, p)) @ S
            if lhs is None:
                if _nonzero(rhs):
                    out.append(Violation("sigma del = delbar sigma", pq))
            elif lhs != rhs:
                out.append(Violation("sigma del = delbar sigma", pq, _mat_entries(lhs - rhs)))
    if A.mult is not None and check_mult:
        out.extend(_validate_mult(A))
    return out


def _sub(u: Sparse, v: Sparse) -> Sparse:
    out = dict(u)
    for k, c in v.items():
        x = out.get(k, ZERO) - c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def _scale(c, u: Sparse) -> Sparse:
    return {k: c * x for k, x in u.items()} if c != 1 else dict(u)


def _validate_mult(A: Bicomplex) -> list[Violation]:
    out: list[Violation] = []
    n = A.total_dim
    bideg = A.index_bidegree
    labels = A.labels
    for (i, j), vec in A.mult.items():
        a, b = bideg[i], bideg[j]
        want = (a[0] + b[0], a[1] + b[1])
        for k in vec:
            if bideg[k] != want:
                out.append(Violation("multiplication respects bidegree", (labels[i], labels[j])))
                break
    deg = [p + q for p, q in bideg]
    basis = [{i: ONE} for i in range(n)]
    # graded commutativity
    for i in range(n):
        for j in range(i, n):
            xy = A.mult.get((i, j), {})
            yx = A.mult.get((j, i), {})
            s = -1 if deg[i] * deg[j] % 2 else 1
            if _sub(xy, _scale(s, yx)):
                out.append(Violation("graded commutativity", (labels[i], labels[j])))
    # associativity on basis triples
    for i in range(n):
        for j in range(n):
            ij = A.mult.get((i, j))
            for k in range(n):
                left = A.product_sparse(ij, basis[k]) if ij else {}
                jk = A.mult.get((j, k))
                right = A.product_sparse(basis[i], jk) if jk else {}
                if _sub(left, right):
                    out.append(Violation("associativity", (labels[i], labels[j], labels[k])))
    # graded Leibniz for both differentials
    for which in ("del", "delbar"):
        dx = [A.apply_sparse(which, basis[i]) for i in range(n)]
        for i in range(n):
            for j in range(n):
                lhs = A.apply_sparse(which, A.mult.get((i, j), {}))
                rhs = A.product_sparse(dx[i], basis[j])
                t = A.product_sparse(basis[i], dx[j])
                rhs = _sub(rhs, t) if deg[i] % 2 else _sub(rhs, _scale(-1, t))
                if _sub(lhs, rhs):
                    out.append(Violation(f"Leibniz rule for {which}", (labels[i], labels[j])))
    if A.real is not None:
        sig = [A.sigma_sparse(basis[i]) for i in range(n)]
        for i in range(n):
            for j in range(n):
                lhs = A.sigma_sparse(A.mult.get((i, j), {}))
                rhs = A.product_sparse(sig[i], sig[j])
                if _sub(lhs, rhs):
                    out.append(Violation("sigma multiplicative", (labels[i], labels[j])))
    return out


def _checked(A: Bicomplex) -> Bicomplex:
    bad = validate(A)
    if bad:
        raise InvalidBicomplex(bad)
    return A


# -- constructors ---------------------------------------------------------


def make_zigzag(shape: ZigzagShape) -> Bicomplex:
    """One-dimensional cells joined by identity maps, as in the shape's structure."""
    if not isinstance(shape, ZigzagShape):
        raise TypeError("make_zigzag expects a ZigzagShape")
    cells, arrows = shape.structure()
    if len(set(cells)) != len(cells):
        raise ValueError(f"malformed shape {shape}")
    labs = {c: (f"z{i}",) for i, c in enumerate(cells)}
    one = Matrix._raw(((ONE,),), 1, 1)
    dl, db = {}, {}
    for which, s, t in arrows:
        (dl if which == "del" else db)[cells[s]] = one
    return Bicomplex(labs, dl, db)


def make_square(p: int, q: int) -> Bicomplex:
    """Square with bottom-left corner (p,q); the ∂̄ arrow out of (p,q) carries the sign."""
    one = Matrix._raw(((ONE,),), 1, 1)
    mone = Matrix._raw(((-ONE,),), 1, 1)
    cells = {(p, q): ("s0",), (p + 1, q): ("s1",), (p, q + 1): ("s2",), (p + 1, q + 1): ("s3",)}
    return Bicomplex(
        cells,
        {(p, q): one, (p, q + 1): one},
        {(p, q): mone, (p + 1, q): one},
    )


def _block_diag(mats: Sequence[Matrix]) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    rows = []
    c0 = 0
    for m in mats:
        left = (ZERO,) * c0
        right = (ZERO,) * (nc - c0 - m.ncols)
        for r in m.rows:
            rows.append(left + r + right)
        c0 += m.ncols
    return Matrix._raw(tuple(rows), nr, nc)


def _uniquify(cells_parts: list[dict]) -> list[dict]:
    seen: set = set()
    out = []
    for part in cells_parts:
        new = {}
        for pq, labels in part.items():
            labs = []
            for lab in labels:
                cand = lab
                k = 1
                while cand in seen:
                    cand = f"{lab}~{k}"
                    k += 1
                seen.add(cand)
                labs.append(cand)
            new[pq] = tuple(labs)
        out.append(new)
    return out


def direct_sum(*parts: Bicomplex) -> Bicomplex:
    """Block-diagonal sum. Multiplication and real structure survive when all parts carry them."""
    parts = [P for P in parts if P.total_dim]
    if not parts:
        return Bicomplex({})
    if len(parts) == 1:
        return parts[0]
    relabeled = _uniquify([dict(P.cells) for P in parts])
    keys = sorted({pq for P in parts for pq in P.cells})
    cells = {pq: tuple(l for R in relabeled for l in R.get(pq, ())) for pq in keys}
    dl, db = {}, {}
    for pq in keys:
        for store, step, getter in ((dl, (1, 0), "d1"), (db, (0, 1), "d2")):
            tgt = (pq[0] + step[0], pq[1] + step[1])
            if tgt not in cells:
                continue
            blocks = [getattr(P, getter)(pq) for P in parts]
            if any(not b.is_zero() for b in blocks):
                store[pq] = _block_diag(blocks)
    real = None
    if all(P.real is not None for P in parts):
        real = {}
        for pq in keys:
            real[pq] = _block_diag(
                [P.real[pq] if P.dim(pq) else Matrix.zeros(P.dim((pq[1], pq[0])), 0) for P in parts]
            )
    result = Bicomplex(cells, dl, db, None, real, _common_amb(parts))
    mult = None
    if all(P.mult is not None for P in parts):
        # index map from each part's global index into the sum
        mult = {}
        for idx, P in enumerate(parts):
            gmap = _part_index_map(result, parts, idx)
            for (i, j), vec in P.mult.items():
                mult[(gmap[i], gmap[j])] = {gmap[k]: c for k, c in vec.items()}
        result = Bicomplex(cells, dl, db, mult, real, _common_amb(parts))
    return result


def _common_amb(parts) -> int | None:
    ns = {P.amb_dim for P in parts}
    return ns.pop() if len(ns) == 1 else None


def _part_index_map(S: Bicomplex, parts: Sequence[Bicomplex], idx: int) -> list[int]:
    out = [0] * parts[idx].total_dim
    for pq, o in parts[idx].offsets.items():
        before = sum(P.dim(pq) for P in parts[:idx])
        base = S.offsets[pq] + before
        for a in range(parts[idx].dim(pq)):
            out[o + a] = base + a
    return out


def shift(A: Bicomplex, i: int) -> Bicomplex:
    """Move every cell by (+i, +i)."""
    if i == 0:
        return A
    mv = lambda pq: (pq[0] + i, pq[1] + i)
    real = None if A.real is None else {mv(pq): m for pq, m in A.real.items()}
    amb = None if A.amb_dim is None else A.amb_dim
    return Bicomplex(
        {mv(pq): l for pq, l in A.cells.items()},
        {mv(pq): m for pq, m in A.del_.items()},
        {mv(pq): m for pq, m in A.delbar.items()},
        A.mult,  # global order is preserved by a diagonal shift
        real,
        amb,
    )


def blowup_model(AX: Bicomplex, AZ: Bicomplex, r: int) -> Bicomplex:
    """AX ⊕ AZ[1] ⊕ ... ⊕ AZ[r-1], with [i] the diagonal shift by (i, i)."""
    if r < 2:
        raise ValueError("blow-up codimension must be at least 2")
    return direct_sum(AX, *[shift(AZ, i) for i in range(1, r)])


def conjugate(A: Bicomplex) -> Bicomplex:
    """Transpose bidegrees, exchange ∂ and ∂̄, conjugate all scalars."""
    tr = lambda pq: (pq[1], pq[0])
    cells = {tr(pq): l for pq, l in A.cells.items()}
    dl = {tr(pq): m.conj() for pq, m in A.delbar.items()}
    db = {tr(pq): m.conj() for pq, m in A.del_.items()}
    real = None if A.real is None else {tr(pq): m.conj() for pq, m in A.real.items()}
    B = Bicomplex(cells, dl, db, None, real, A.amb_dim)
    mult = None
    if A.mult is not None:
        # global index permutation induced by transposing the cell order
        perm = [0] * A.total_dim
        for pq, o in A.offsets.items():
            o2 = B.offsets[tr(pq)]
            for a in range(A.dim(pq)):
                perm[o + a] = o2 + a
        mult = {
            (perm[i], perm[j]): {perm[k]: c.conj() for k, c in v.items()} for (i, j), v in A.mult.items()
        }
        B = Bicomplex(cells, dl, db, mult, real, A.amb_dim)
    return B


def dual(A: Bicomplex, n: int) -> Bicomplex:
    """(DA[n])^{p,q} = Hom(A^{n-p,n-q}, C); differentials are transposes.

    The multiplication is not carried (the dual is a module, not an algebra).
    """
    ref = lambda pq: (n - pq[0], n - pq[1])
    cells = {ref(pq): tuple(f"{lab}^" if not lab.endswith("^") else lab[:-1] for lab in l) for pq, l in A.cells.items()}
    # ∂_D out of (p,q) = transpose of ∂ from A^{n-p-1,n-q} into A^{n-p,n-q}
    dl = {}
    for pq, m in A.del_.items():
        # m : A^{a,b} -> A^{a+1,b}; dual map goes from D^{n-a-1,n-b} to D^{n-a,n-b}
        dl[(n - pq[0] - 1, n - pq[1])] = m.T
    db = {}
    for pq, m in A.delbar.items():
        db[(n - pq[0], n - pq[1] - 1)] = m.T
    real = None
    if A.real is not None:
        real = {}
        for pq in A.cells:
            # sigma_D on D^{p,q} = dual of A^{n-p,n-q}; uses S from A^{n-q,n-p} -> A^{n-p,n-q}
            p, q = ref(pq)
            S = A.real[(n - q, n - p)]
            real[(p, q)] = S.T.conj()
    return Bicomplex(cells, dl, db, None, real, n)


def tensor(A: Bicomplex, B: Bicomplex) -> Bicomplex:
    """Tensor product with ∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y, same for ∂̄."""
    blocks: dict[Bidegree, list] = {}
    for a in A.cells:
        for b in B.cells:
            pq = (a[0] + b[0], a[1] + b[1])
            blocks.setdefault(pq, []).append((a, b))
    for pq in blocks:
        blocks[pq].sort()
    cells = {
        pq: tuple(f"{x}@{y}" for a, b in pairs for x in A.cells[a] for y in B.cells[b])
        for pq, pairs in blocks.items()
    }
    pos: dict[tuple, tuple[Bidegree, int]] = {}
    for pq, pairs in blocks.items():
        off = 0
        for a, b in pairs:
            pos[(a, b)] = (pq, off)
            off += A.dim(a) * B.dim(b)

    def build(getter: str, step):
        out: dict[Bidegree, list] = {}
        for pq, pairs in blocks.items():
            tgt = (pq[0] + step[0], pq[1] + step[1])
            if tgt not in blocks:
                continue
            nt = sum(A.dim(x) * B.dim(y) for x, y in blocks[tgt])
            ns = sum(A.dim(x) * B.dim(y) for x, y in pairs)
            rows = [[ZERO] * ns for _ in range(nt)]
            for a, b in pairs:
                _, s0 = pos[(a, b)]
                da, db_ = A.dim(a), B.dim(b)
                # left factor differential
                ta = (a[0] + step[0], a[1] + step[1])
                if (ta, b) in pos:
                    M = getattr(A, getter)(a)
                    _, t0 = pos[(ta, b)]
                    K = M.kron(Matrix.identity(db_))
                    _add_block(rows, K, t0, s0)
                tb = (b[0] + step[0], b[1] + step[1])
                if (a, tb) in pos:
                    M = getattr(B, getter)(b)
                    sign = -1 if (a[0] + a[1]) % 2 else 1
                    _, t0 = pos[(a, tb)]
                    K = Matrix.identity(da).kron(M)
                    if sign < 0:
                        K = -K
                    _add_block(rows, K, t0, s0)
            out[pq] = Matrix._raw(tuple(tuple(r) for r in rows), nt, ns)
        return out

    dl = build("d1", (1, 0))
    db = build("d2", (0, 1))
    real = None
    if A.real is not None and B.real is not None:
        real = {}
        for pq, pairs in blocks.items():
            tq = (pq[1], pq[0])
            nt = sum(A.dim(x) * B.dim(y) for x, y in blocks[tq])
            ns = sum(A.dim(x) * B.dim(y) for x, y in pairs)
            rows = [[ZERO] * ns for _ in range(nt)]
            for a, b in pairs:
                _, s0 = pos[(a, b)]
                _, t0 = pos[((a[1], a[0]), (b[1], b[0]))]
                _add_block(rows, A.real[a].kron(B.real[b]), t0, s0)
            real[pq] = Matrix._raw(tuple(tuple(r) for r in rows), nt, ns)
    T = Bicomplex(cells, dl, db, None, real, None)
    if A.mult is not None and B.mult is not None:
        gidx = {}
        for (a, b), (pq, off) in pos.items():
            base = T.offsets[pq] + off
            db_ = B.dim(b)
            for i in range(A.dim(a)):
                for j in range(db_):
                    gidx[(A.offsets[a] + i, B.offsets[b] + j)] = base + i * db_ + j
        dA = [p + q for p, q in A.index_bidegree]
        dB = [p + q for p, q in B.index_bidegree]
        mult = {}
        for (x1, y1), g1 in gidx.items():
            for (x2, y2), g2 in gidx.items():
                ex = A.mult.get((x1, x2))
                ey = B.mult.get((y1, y2))
                if not ex or not ey:
                    continue
                s = -1 if dB[y1] * dA[x2] % 2 else 1
                vec = {}
                for k1, c1 in ex.items():
                    for k2, c2 in ey.items():
                        vec[gidx[(k1, k2)]] = c1 * c2 * s
                mult[(g1, g2)] = vec
        T = Bicomplex(cells, dl, db, mult, real, None)
    return T


def _add_block(rows: list[list], K: Matrix, t0: int, s0: int) -> None:
    for i, r in enumerate(K.rows):
        row = rows[t0 + i]
        for j, x in enumerate(r):
            if x:
                row[s0 + j] = row[s0 + j] + x


def basis_change(A: Bicomplex, g: Mapping[Bidegree, Matrix]) -> Bicomplex:
    """Transport the structure along new coordinates v' = g v; ∂' = g ∂ g^{-1}."""
    gs, ginv = {}, {}
    for pq in A.cells:
        m = g.get(pq)
        if m is None:
            m = Matrix.identity(A.dim(pq))
        if m.shape != (A.dim(pq), A.dim(pq)):
            raise ValueError(f"basis change at {pq} has shape {m.shape}, cell has dimension {A.dim(pq)}")
        try:
            gi = inverse(m)
        except ValueError:
            raise ValueError(f"basis change at {pq} is singular") from None
        gs[pq], ginv[pq] = m, gi
    for pq in g:
        if tuple(pq) not in A.cells and g[pq].nrows:
            raise ValueError(f"basis change given for empty cell {pq}")
    dl = {pq: gs[(pq[0] + 1, pq[1])] @ m @ ginv[pq] for pq, m in A.del_.items()}
    db = {pq: gs[(pq[0], pq[1] + 1)] @ m @ ginv[pq] for pq, m in A.delbar.items()}
    real = None
    if A.real is not None:
        real = {pq: gs[(pq[1], pq[0])] @ S @ ginv[pq].conj() for pq, S in A.real.items()}
    B = Bicomplex(A.cells, dl, db, None, real, A.amb_dim, A.origin)
    if A.mult is not None:
        n = A.total_dim
        # old coordinates of new basis vectors: columns of g^{-1}
        newbasis = []
        for pq in A.cells:
            gi = ginv[pq]
            o = A.offsets[pq]
            for j in range(gi.ncols):
                newbasis.append({o + i: gi.rows[i][j] for i in range(gi.nrows) if gi.rows[i][j]})
        gcols = {}
        for pq in A.cells:
            o = A.offsets[pq]
            gm = gs[pq]
            for j in range(gm.ncols):
                gcols[o + j] = {o + i: gm.rows[i][j] for i in range(gm.nrows) if gm.rows[i][j]}
        mult = {}
        for i in range(n):
            for j in range(n):
                prod = A.product_sparse(newbasis[i], newbasis[j])
                if not prod:
                    continue
                vec: dict = {}
                for k, c in prod.items():
                    for t, a in gcols[k].items():
                        vec[t] = vec.get(t, ZERO) + a * c
                mult[(i, j)] = vec
        B = Bicomplex(A.cells, dl, db, mult, real, A.amb_dim, A.origin)
    return B


# -- random generator ----------------------------------------------------------


@dataclass(frozen=True)
class RandomProfile:
    """Bounds for :func:`random_bicomplex`."""

    box: int = 3
    max_summands: int = 6
    kinds: tuple[str, ...] = ("dot", "oddtop", "oddbot", "evenh", "evenv", "square")
    max_size: int = 3
    gaussian: bool = True
    entry_bound: int = 2

    @classmethod
    def named(cls, name: str) -> "RandomProfile":
        table = {
            "mixed": cls(),
            "squares": cls(kinds=("square",)),
            "dots": cls(kinds=("dot",)),
            "ddbar": cls(kinds=("dot", "square")),
            "odd": cls(kinds=("dot", "oddtop", "oddbot")),
            "even": cls(kinds=("evenh", "evenv", "square")),
            "small": cls(box=2, max_summands=4, max_size=2),
            "large": cls(box=4, max_summands=10, max_size=4),
        }
        if name not in table:
            raise ValueError(f"unknown profile {name!r}; choose from {sorted(table)}")
        return table[name]


def _random_shape(rng: random.Random, kind: str, box: int, max_size: int):
    if kind == "square":
        return (rng.randint(0, box - 1), rng.randint(0, box - 1))
    if kind == "dot":
        return ZigzagShape.dot(rng.randint(0, box), rng.randint(0, box))
    s = rng.randint(1, max(1, min(max_size, box)))
    for _ in range(100):
        z = ZigzagShape(kind, rng.randint(-s, box + s), rng.randint(-s, box + s), s)
        if all(0 <= a <= box and 0 <= b <= box for a, b in z.cells()):
            return z
    return None


def _random_invertible(rng: random.Random, d: int, bound: int, gaussian: bool) -> Matrix:
    while True:
        rows = []
        for _ in range(d):
            row = []
            for _ in range(d):
                re_ = rng.randint(-bound, bound)
                im_ = rng.randint(-1, 1) if gaussian and rng.random() < 0.3 else 0
                row.append(Scalar(re_, im_))
            rows.append(tuple(row))
        m = Matrix._raw(tuple(rows), d, d)
        if rank(m) == d:
            return m


def random_bicomplex(seed, profile: RandomProfile | None = None) -> tuple[Bicomplex, MultiplicityTable]:
    """A random zigzag/square sum in a random basis, with its true multiplicity table."""
    profile = profile or RandomProfile()
    if profile.box < 1:
        raise ValueError("profile box must be at least 1")
    rng = random.Random(seed)
    k = rng.randint(1, profile.max_summands)
    zig: Counter = Counter()
    sq: Counter = Counter()
    for _ in range(k):
        kind = rng.choice(profile.kinds)
        z = _random_shape(rng, kind, profile.box, profile.max_size)
        if z is None:
            continue
        if kind == "square":
            sq[z] += 1
        else:
            zig[z] += 1
    table = MultiplicityTable(dict(zig), dict(sq))
    A = _assemble(table)
    g = {pq: _random_invertible(rng, A.dim(pq), profile.entry_bound, profile.gaussian) for pq in A.cells}
    return basis_change(A, g), table


def _assemble(table: MultiplicityTable) -> Bicomplex:
    parts = []
    for kind, params, m in table.sorted_items():
        if kind == "square":
            parts.extend(make_square(*params) for _ in range(m))
        else:
            z = ZigzagShape(kind, *params) if kind != "dot" else ZigzagShape.dot(*params)
            parts.extend(make_zigzag(z) for _ in range(m))
    return direct_sum(*parts)


# -- text format ----------------------------------------------------------------


def write_bicomplex(A: Bicomplex) -> str:
    lines = ["bicomplex"]
    if A.amb_dim is not None:
        lines.append(f"ambient {A.amb_dim}")
    if A.origin:
        lines.append(f"origin {A.origin}")
    for (p, q), labels in A.cells.items():
        lines.append(f"cell {p} {q} {len(labels)} {' '.join(labels)}")
    for name, maps in (("del", A.del_), ("delbar", A.delbar)):
        for (p, q), m in maps.items():
            lines.append(f"{name} {p} {q} {_mat_entries(m)}")
    if A.real is not None or A.mult is not None:
        labs = A.labels
        if len(set(labs)) != len(labs):
            raise ValueError("labels must be globally unique to write mult/conj lines")
    if A.real is not None:
        cols = A._sigma_cols
        for j, lab in enumerate(A.labels):
            terms = " ; ".join(f"{format_scalar(c)} {A.labels[i]}" for i, c in sorted(cols.get(j, {}).items()))
            lines.append(f"conj {lab} = {terms}")
    if A.mult is not None:
        for (i, j), vec in sorted(A.mult.items()):
            terms = " ; ".join(f"{format_scalar(c)} {A.labels[k]}" for k, c in sorted(vec.items()))
            lines.append(f"mult {A.labels[i]} {A.labels[j]} = {terms}")
    return "\n".join(lines) + "\n"


class FormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


def _parse_matrix(text: str, lineno: int) -> list[list[Scalar]]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise FormatError(lineno, "matrix must be enclosed in [ ]")
    body = text[1:-1].strip()
    if not body:
        return []
    rows = []
    for r in body.split(";"):
        toks = r.split()
        try:
            rows.append([parse_scalar(t) for t in toks])
        except ValueError as e:
            raise FormatError(lineno, str(e)) from None
    return rows


def _parse_terms(text: str, lineno: int) -> list[tuple[Scalar, str]]:
    out = []
    for part in text.split(";"):
        toks = part.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise FormatError(lineno, f"expected '<scalar> <label>', got {part.strip()!r}")
        try:
            out.append((parse_scalar(toks[0]), toks[1]))
        except ValueError as e:
            raise FormatError(lineno, str(e)) from None
    return out


def read_bicomplex(text: str, check: bool = True) -> Bicomplex:
    """Parse the line-oriented bicomplex format; rejects structurally invalid input."""
    cells: dict = {}
    mats: dict = {"del": {}, "delbar": {}}
    conj_lines, mult_lines = [], []
    amb = None
    origin = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if not seen_header:
            if head != "bicomplex" or len(toks) != 1:
                raise FormatError(lineno, "file must start with 'bicomplex'")
            seen_header = True
            continue
        if head == "ambient":
            if len(toks) != 2:
                raise FormatError(lineno, "ambient takes one integer")
            try:
                amb = int(toks[1])
            except ValueError:
                raise FormatError(lineno, "ambient takes one integer") from None
        elif head == "origin":
            origin = " ".join(toks[1:]) or None
        elif head == "cell":
            try:
                p, q, d = int(toks[1]), int(toks[2]), int(toks[3])
            except (IndexError, ValueError):
                raise FormatError(lineno, "cell takes p q dim labels...") from None
            labels = toks[4:]
            if not labels:
                labels = [f"e{p}_{q}_{i}" for i in range(d)]
            if len(labels) != d:
                raise FormatError(lineno, f"cell ({p},{q}) declares dim {d} but lists {len(labels)} labels")
            if (p, q) in cells:
                raise FormatError(lineno, f"duplicate cell ({p},{q})")
            cells[(p, q)] = tuple(labels)
        elif head in ("del", "delbar"):
            try:
                p, q = int(toks[1]), int(toks[2])
            except (IndexError, ValueError):
                raise FormatError(lineno, f"{head} takes p q [matrix]") from None
            rest = line.split(None, 3)[3] if len(line.split(None, 3)) > 3 else ""
            mats[head][(p, q)] = (_parse_matrix(rest, lineno), lineno)
        elif head == "conj":
            conj_lines.append((lineno, line))
        elif head == "mult":
            mult_lines.append((lineno, line))
        else:
            raise FormatError(lineno, f"unknown directive {head!r}")
    if not seen_header:
        raise FormatError(1, "empty file")
    built = {}
    for name, step in (("del", (1, 0)), ("delbar", (0, 1))):
        built[name] = {}
        for (p, q), (rows, lineno) in mats[name].items():
            src = len(cells.get((p, q), ()))
            tgt = len(cells.get((p + step[0], q + step[1]), ()))
            if len(rows) != tgt or any(len(r) != src for r in rows):
                shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
                raise FormatError(lineno, f"{name} at ({p},{q}) is {shape}, cells need {tgt}x{src}")
            built[name][(p, q)] = Matrix(rows, src)
    A = Bicomplex(cells, built["del"], built["delbar"], None, None, amb, origin)
    index = {}
    for g, lab in enumerate(A.labels):
        if lab in index and (conj_lines or mult_lines):
            raise FormatError(0, f"duplicate label {lab!r} with conj/mult data")
        index[lab] = g
    real = None
    if conj_lines:
        cols: dict = {}
        for lineno, line in conj_lines:
            lhs, _, rhs = line.partition("=")
            lt = lhs.split()
            if len(lt) != 2 or lt[1] not in index:
                raise FormatError(lineno, "conj takes a known label")
            cols[index[lt[1]]] = [(c, lab, lineno) for c, lab in _parse_terms(rhs, lineno)]
        real = {}
        bideg = A.index_bidegree
        for pq in A.cells:
            tq = (pq[1], pq[0])
            nt, ns = A.dim(tq), A.dim(pq)
            rows = [[ZERO] * ns for _ in range(nt)]
            for j in range(ns):
                g = A.offsets[pq] + j
                if g not in cols:
                    raise FormatError(0, f"conj line missing for {A.labels[g]!r}")
                for c, lab, lineno in cols[g]:
                    if lab not in index or bideg[index[lab]] != tq:
                        raise FormatError(lineno, f"conj image {lab!r} not in bidegree {tq}")
                    i = index[lab] - A.offsets[tq]
                    rows[i][j] = rows[i][j] + c
            real[pq] = Matrix(rows, ns)
    mult = None
    if mult_lines:
        mult = {}
        for lineno, line in mult_lines:
            lhs, _, rhs = line.partition("=")
            lt = lhs.split()
            if len(lt) != 3 or lt[1] not in index or lt[2] not in index:
                raise FormatError(lineno, "mult takes two known labels")
            vec = {}
            for c, lab in _parse_terms(rhs, lineno):
                if lab not in index:
                    raise FormatError(lineno, f"unknown label {lab!r}")
                vec[index[lab]] = vec.get(index[lab], ZERO) + c
            mult[(index[lt[1]], index[lt[2]])] = vec
    if real is not None or mult is not None:
        A = Bicomplex(A.cells, A.del_, A.delbar, mult, real, amb, origin)
    if check:
        bad = validate(A)
        if bad:
            raise InvalidBicomplex(bad)
    return A
