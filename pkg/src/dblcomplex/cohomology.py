"""Cohomological functors of a bounded double complex.

Everything is computed from ranks of exact matrices: column and row
cohomology, Bott-Chern, Aeppli, de Rham with its two filtrations, the refined
Betti numbers, both Frolicher spectral sequences and the two d^c complexes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bicomplex import Bicomplex, InvalidBicomplex, conjugate, validate
from .linalg import Matrix, kernel_basis, quotient_basis, rank, span_rank
from .scalars import ZERO

__all__ = [
    "CohomologyTable",
    "SpectralSequence",
    "Report",
    "column_cohomology",
    "row_cohomology",
    "bott_chern",
    "aeppli",
    "de_rham",
    "refined_betti",
    "frolicher",
    "dc_cohomologies",
    "cohomology_report",
    "bidegree_key",
]

FUNCTORS = ("delbar", "del", "BC", "A", "dR", "kerdc", "AmodImdc")


def bidegree_key(pq) -> str:
    return f"{pq[0]},{pq[1]}"


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions keyed by bidegree (p, q) or, for total-degree functors, by k."""

    functor: str
    dims: dict
    reps: dict | None = None

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __getitem__(self, key) -> int:
        return self.dims.get(key, 0)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.dims.items()) if v}


def _require_valid(A: Bicomplex, check: bool) -> None:
    if check:
        bad = validate(A, check_mult=False)
        if bad:
            raise InvalidBicomplex(bad)


def _cols(M: Matrix) -> list[tuple]:
    return M.columns() if M.ncols and M.nrows else []


def _stack(*ms: Matrix) -> Matrix:
    """Vertical stack of matrices with a common column count."""
    ncols = ms[0].ncols
    rows = tuple(r for m in ms for r in m.rows)
    return Matrix._raw(rows, len(rows), ncols)


def _side(*ms: Matrix) -> Matrix:
    nrows = ms[0].nrows
    rows = tuple(tuple(x for m in ms for x in m.rows[i]) for i in range(nrows))
    return Matrix._raw(rows, nrows, sum(m.ncols for m in ms))


def _quotient_dims(A: Bicomplex, ker_mat, im_mats, reps: bool, name: str) -> CohomologyTable:
    dims, rep = {}, {} if reps else None
    for pq in A.cells:
        d = A.dim(pq)
        K = ker_mat(pq)
        ims = [m for m in im_mats(pq) if m.ncols and m.nrows]
        rk_im = span_rank([c for m in ims for c in m.columns()], d) if ims else 0
        dk = d - rank(K) if K.nrows else d
        dims[pq] = dk - rk_im
        if reps and dims[pq]:
            kb = kernel_basis(K) if K.nrows else _unit_basis(d)
            rep[pq] = quotient_basis(kb, [c for m in ims for c in m.columns()], d)
    return CohomologyTable(name, {k: v for k, v in dims.items() if v}, rep)


def column_cohomology(A: Bicomplex, reps: bool = False, check: bool = True) -> CohomologyTable:
    """H_∂̄ = ker ∂̄ / im ∂̄ per bidegree."""
    _require_valid(A, check)
    return _quotient_dims(A, A.d2, lambda pq: [A.d2((pq[0], pq[1] - 1))], reps, "delbar")


def row_cohomology(A: Bicomplex, reps: bool = False, check: bool = True) -> CohomologyTable:
    """H_∂ = ker ∂ / im ∂ per bidegree."""
    _require_valid(A, check)
    return _quotient_dims(A, A.d1, lambda pq: [A.d1((pq[0] - 1, pq[1]))], reps, "del")


def _ddbar_into(A: Bicomplex, pq) -> Matrix:
    """∂∂̄ : A^{p-1,q-1} -> A^{p,q}."""
    p, q = pq
    return A.d1((p - 1, q)) @ A.d2((p - 1, q - 1))


def bott_chern(A: Bicomplex, reps: bool = False, check: bool = True) -> CohomologyTable:
    """(ker ∂ ∩ ker ∂̄) / im ∂∂̄ per bidegree."""
    _require_valid(A, check)
    return _quotient_dims(
        A, lambda pq: _stack(A.d1(pq), A.d2(pq)), lambda pq: [_ddbar_into(A, pq)], reps, "BC"
    )


def aeppli(A: Bicomplex, reps: bool = False, check: bool = True) -> CohomologyTable:
    """ker ∂∂̄ / (im ∂ + im ∂̄) per bidegree."""
    _require_valid(A, check)
    return _quotient_dims(
        A,
        lambda pq: _ddbar_into(A, (pq[0] + 1, pq[1] + 1)),
        lambda pq: [A.d1((pq[0] - 1, pq[1])), A.d2((pq[0], pq[1] - 1))],
        reps,
        "A",
    )


def _degree_range(A: Bicomplex) -> range:
    if not A.cells:
        return range(0)
    return range(min(A.degrees), max(A.degrees) + 1)


def de_rham(A: Bicomplex, reps: bool = False, check: bool = True) -> CohomologyTable:
    """Cohomology of the total complex with d = ∂ + ∂̄, graded by total degree."""
    _require_valid(A, check)
    dims, rep = {}, {} if reps else None
    for k in _degree_range(A):
        n = A.degree_dim(k)
        if not n:
            continue
        Dk = A.total_d(k)
        Dp = A.total_d(k - 1)
        dims[k] = n - rank(Dk) - rank(Dp)
        if reps and dims[k]:
            rep[k] = quotient_basis(kernel_basis(Dk) if Dk.nrows else _unit_basis(n), _cols(Dp), n)
    return CohomologyTable("dR", {k: v for k, v in dims.items() if v}, rep)


def _unit_basis(n: int) -> list[tuple]:
    from .scalars import ONE

    return [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]


# -- filtrations and refined Betti numbers ----------------------------------------


def _filtered_cocycles(A: Bicomplex, k: int, keep) -> list[tuple]:
    """Cocycles of degree k supported on the cells (p,q) with keep(p,q)."""
    n = A.degree_dim(k)
    slices = A.degree_slices(k)
    idx = [i for pq, s, e in slices if keep(*pq) for i in range(s, e)]
    if not idx:
        return []
    D = A.total_d(k)
    if D.nrows == 0:
        ker = _unit_basis(len(idx))
    else:
        sub = Matrix._raw(tuple(tuple(r[i] for i in idx) for r in D.rows), D.nrows, len(idx))
        ker = kernel_basis(sub)
    out = []
    for v in ker:
        full = [ZERO] * n
        for i, x in zip(idx, v):
            full[i] = x
        out.append(tuple(full))
    return out


def refined_betti(A: Bicomplex, check: bool = True) -> dict[tuple[int, int, int], int]:
    """b_k^{p,q} = dim gr_F^p gr_F̄^q H^k, keyed by (k, p, q); zeros dropped.

    F^p H^k is spanned by classes with a cocycle representative in
    ⊕_{a ≥ p} A^{a,k-a}; F̄^q likewise with the second index.  Intersections
    are taken inside H^k (as subspaces of cocycles containing the coboundaries).
    """
    _require_valid(A, check)
    out: dict = {}
    for k in _degree_range(A):
        n = A.degree_dim(k)
        if not n:
            continue
        B = _cols(A.total_d(k - 1))
        rb = span_rank(B, n) if B else 0
        slices = A.degree_slices(k)
        ps = sorted({pq[0] for pq, _, _ in slices})
        qs = sorted({pq[1] for pq, _, _ in slices})
        # every level from the lowest cell up to one past the highest (which is zero)
        plev = list(range(ps[0], ps[-1] + 2))
        qlev = list(range(qs[0], qs[-1] + 2))
        Fp = {p: _filtered_cocycles(A, k, lambda a, b, p=p: a >= p) + B for p in plev}
        Fq = {q: _filtered_cocycles(A, k, lambda a, b, q=q: b >= q) + B for q in qlev}
        rFp = {p: span_rank(v, n) if v else 0 for p, v in Fp.items()}
        rFq = {q: span_rank(v, n) if v else 0 for q, v in Fq.items()}
        if rFp[ps[0]] == rb:
            continue  # H^k = 0
        inter: dict = {}

        def cap(p, q):
            key = (p, q)
            if key not in inter:
                U, W = Fp[p], Fq[q]
                if rFp[p] == rb or rFq[q] == rb:
                    inter[key] = 0
                else:
                    s = span_rank(U + W, n)
                    inter[key] = rFp[p] + rFq[q] - s - rb
            return inter[key]

        for p in ps:
            for q in qs:
                g = cap(p, q) - cap(p + 1, q) - cap(p, q + 1) + cap(p + 1, q + 1)
                if g:
                    out[(k, p, q)] = g
    return out


# -- Frolicher spectral sequences ----------------------------------------------


@dataclass(frozen=True)
class SpectralSequence:
    """Pages r = 1, 2, ...: dims of E_r and ranks of d_r out of each bidegree."""

    orientation: str
    pages: list  # list of (dims dict, dranks dict)
    stabilized_at: int | None

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    def e(self, r: int) -> int:
        """Total dimension of page r (pages past the last computed one repeat it)."""
        if r < 1:
            raise ValueError("pages start at r = 1")
        dims, _ = self.pages[min(r, len(self.pages)) - 1]
        return sum(dims.values())

    def nonzero_differentials(self) -> list[tuple[int, tuple[int, int], int]]:
        """(page, source bidegree, rank) for every nonzero d_r."""
        out = []
        for r, (_, dr) in enumerate(self.pages, 1):
            for pq, k in sorted(dr.items()):
                if k:
                    out.append((r, pq, k))
        return out

    def degenerates_at(self) -> int:
        """Smallest r with all d_s = 0 for s >= r."""
        last = 0
        for r, (_, dr) in enumerate(self.pages, 1):
            if any(dr.values()):
                last = r
        return last + 1


def _ladder_projection_rank(A: Bicomplex, start, length: int, closed_first: bool, project: str) -> int | list:
    """Solve the alternating ladder x_0..x_{length-1}, x_i in A^{p+i, q-i}.

    Equations: ∂̄x_0 = 0 (if closed_first); ∂x_{i-1} + ∂̄x_i = 0 for 1 <= i < length.
    ``project="first"`` returns dim of the projection onto x_0;
    ``project="last_del"`` returns the list of vectors ∂x_{length-1}.
    """
    p, q = start
    cells = [(p + i, q - i) for i in range(length)]
    dims = [A.dim(c) for c in cells]
    offs = [0]
    for d in dims:
        offs.append(offs[-1] + d)
    nvar = offs[-1]
    if nvar == 0:
        return 0 if project == "first" else []
    blocks = []  # rows of the system
    # equation rows live in cells (p+i, q-i+1) for i = 0..length-1
    for i in range(length):
        tgt = (p + i, q - i + 1)
        nt = A.dim(tgt)
        if not nt:
            continue
        if i == 0 and not closed_first:
            continue
        row_blocks = [None] * length
        row_blocks[i] = A.d2(cells[i])
        if i >= 1:
            row_blocks[i - 1] = A.d1(cells[i - 1])
        for r in range(nt):
            row = []
            for j in range(length):
                m = row_blocks[j]
                if m is None:
                    row.extend([ZERO] * dims[j])
                else:
                    row.extend(m.rows[r])
            blocks.append(tuple(row))
    if blocks:
        M = Matrix._raw(tuple(blocks), len(blocks), nvar)
        ker = kernel_basis(M)
    else:
        ker = _unit_basis(nvar)
    if project == "first":
        if not dims[0]:
            return 0
        return span_rank([v[: dims[0]] for v in ker], dims[0]) if ker else 0
    last = cells[-1]
    D = A.d1(last)
    if not D.nrows or not dims[-1]:
        return []
    return [D.apply(v[offs[-2] : offs[-1]]) for v in ker]


def _column_pages(A: Bicomplex, einf: dict, max_page: int) -> SpectralSequence:
    pages = []
    zcache: dict = {}

    def zdim(pq, r):
        key = (pq, r)
        if key not in zcache:
            zcache[key] = _ladder_projection_rank(A, pq, r, True, "first")
        return zcache[key]

    stabilized = None
    for r in range(1, max_page + 1):
        dims, dranks = {}, {}
        for pq in A.cells:
            p, q = pq
            d = A.dim(pq)
            bvecs = _cols(A.d2((p, q - 1)))
            if r >= 2:
                bvecs = bvecs + _ladder_projection_rank(A, (p - r + 1, q + r - 2), r - 1, True, "last_del")
            rb = span_rank(bvecs, d) if bvecs else 0
            zr = zdim(pq, r)
            e = zr - rb
            if e:
                dims[pq] = e
                out = zr - zdim(pq, r + 1)
                if out:
                    dranks[pq] = out
        pages.append((dims, dranks))
        if dims == einf:
            stabilized = r
            break
    return SpectralSequence("column", pages, stabilized)


def _einf_column(rb: dict) -> dict:
    out: dict = {}
    for (k, p, q), m in rb.items():
        out[(p, k - p)] = out.get((p, k - p), 0) + m
    return out


def _einf_row(rb: dict) -> dict:
    out: dict = {}
    for (k, p, q), m in rb.items():
        out[(k - q, q)] = out.get((k - q, q), 0) + m
    return out


def frolicher(
    A: Bicomplex,
    orientation: str = "column",
    max_page: int | None = None,
    check: bool = True,
    rb: dict | None = None,
) -> SpectralSequence:
    """Column (E_1 = H_∂̄, d_r of bidegree (r, 1-r)) or row (E_1 = H_∂) spectral sequence."""
    _require_valid(A, check)
    if orientation not in ("column", "row"):
        raise ValueError("orientation must be 'column' or 'row'")
    if max_page is None:
        p0, p1, q0, q1 = A.support_box
        max_page = max(p1 - p0, q1 - q0) + 2
    if max_page < 1:
        raise ValueError("max_page must be at least 1")
    if rb is None:
        rb = refined_betti(A, check=False)
    if orientation == "column":
        return _column_pages(A, _einf_column(rb), max_page)
    # row spectral sequence of A = column spectral sequence of the conjugate, transposed
    B = conjugate(A.strip())
    ss = _column_pages(B, _einf_column({(k, q, p): m for (k, p, q), m in rb.items()}), max_page)
    tr = lambda d: {(q, p): v for (p, q), v in d.items()}
    return SpectralSequence("row", [(tr(a), tr(b)) for a, b in ss.pages], ss.stabilized_at)


# -- d^c complexes ------------------------------------------------------------------


def dc_cohomologies(A: Bicomplex, check: bool = True) -> tuple[CohomologyTable, CohomologyTable]:
    """H(ker d^c, d) and H(A / im d^c, d) by total degree, d^c = i(∂̄ - ∂).

    The unit i does not change kernels or images, so ∂̄ - ∂ is used.
    """
    _require_valid(A, check)
    ker_dims, quot_dims = {}, {}
    for k in _degree_range(A):
        n = A.degree_dim(k)
        if not n:
            continue
        # ker d^c cocycles are exactly ker ∂ ∩ ker ∂̄
        Dk, Bk = A.total_del(k), A.total_delbar(k)
        both = _stack(Dk, Bk) if Dk.nrows else Dk
        z = n - (rank(both) if both.nrows else 0)
        m = A.degree_dim(k - 1)
        if m:
            dc_prev = A.total_delbar(k - 1) - A.total_del(k - 1)
            kdc = kernel_basis(dc_prev) if dc_prev.nrows else _unit_basis(m)
            D = A.total_d(k - 1)
            b = span_rank([D.apply(v) for v in kdc], n) if kdc and D.nrows else 0
            im_sum = span_rank(_cols(D) + _cols(dc_prev), n) if D.nrows else 0
        else:
            b = 0
            im_sum = 0
        if z - b:
            ker_dims[k] = z - b
        # x with dx in im d^c_k, modulo im d_{k-1} + im d^c_{k-1}
        mk1 = A.degree_dim(k + 1)
        if mk1:
            Dk_tot = A.total_d(k)
            dck = A.total_delbar(k) - A.total_del(k)
            M = _side(Dk_tot, -dck)
            pre = (M.ncols - rank(M)) - (n - rank(dck))
        else:
            pre = n
        if pre - im_sum:
            quot_dims[k] = pre - im_sum
    return CohomologyTable("kerdc", ker_dims), CohomologyTable("AmodImdc", quot_dims)


# -- induced maps --------------------------------------------------------------------


def _cell_basis_kernel(M: Matrix, d: int) -> list[tuple]:
    return kernel_basis(M) if M.nrows else _unit_basis(d)


def _map_rank(source: list, target_rel: list, dim: int) -> int:
    """Rank of the induced map sending ``source`` vectors into V / span(target_rel)."""
    if not source:
        return 0
    rb = span_rank(target_rel, dim) if target_rel else 0
    return span_rank(source + target_rel, dim) - rb


def induced_map_ranks(A: Bicomplex) -> dict:
    """Ranks of BC -> delbar, BC -> del, BC -> dR, delbar -> A, del -> A, dR -> A."""
    out = {name: {} for name in ("bc_delbar", "bc_del", "bc_dr", "delbar_a", "del_a", "dr_a")}
    for pq in A.cells:
        p, q = pq
        d = A.dim(pq)
        kbc = _cell_basis_kernel(_stack(A.d1(pq), A.d2(pq)), d)
        im_b = _cols(A.d2((p, q - 1)))
        im_d = _cols(A.d1((p - 1, q)))
        r = _map_rank(kbc, im_b, d)
        if r:
            out["bc_delbar"][pq] = r
        r = _map_rank(kbc, im_d, d)
        if r:
            out["bc_del"][pq] = r
        kb = _cell_basis_kernel(A.d2(pq), d)
        kd = _cell_basis_kernel(A.d1(pq), d)
        r = _map_rank(kb, im_b + im_d, d)
        if r:
            out["delbar_a"][pq] = r
        r = _map_rank(kd, im_b + im_d, d)
        if r:
            out["del_a"][pq] = r
    for k in _degree_range(A):
        n = A.degree_dim(k)
        if not n:
            continue
        Dk, Bk = A.total_del(k), A.total_delbar(k)
        both = _stack(Dk, Bk) if Dk.nrows else Dk
        kbc = kernel_basis(both) if both.nrows else _unit_basis(n)
        Dprev = _cols(A.total_d(k - 1))
        r = _map_rank(kbc, Dprev, n)
        if r:
            out["bc_dr"][k] = r
        z = kernel_basis(A.total_d(k)) if A.total_d(k).nrows else _unit_basis(n)
        ia = _cols(A.total_del(k - 1)) + _cols(A.total_delbar(k - 1))
        r = _map_rank(z, ia, n)
        if r:
            out["dr_a"][k] = r
    return out


# -- report ----------------------------------------------------------------------------


@dataclass
class Report:
    h_delbar: CohomologyTable
    h_del: CohomologyTable
    h_bc: CohomologyTable
    h_a: CohomologyTable
    b: CohomologyTable
    b_refined: dict
    column_ss: SpectralSequence
    row_ss: SpectralSequence
    kerdc: CohomologyTable
    amodimdc: CohomologyTable
    maps: dict
    origin: str | None = None
    reps: dict = field(default_factory=dict)

    @property
    def totals(self) -> dict:
        t = {
            "b": self.b.total,
            "h_delbar": self.h_delbar.total,
            "h_del": self.h_del.total,
            "h_bc": self.h_bc.total,
            "h_a": self.h_a.total,
            "h_kerdc": self.kerdc.total,
            "h_amodimdc": self.amodimdc.total,
        }
        for r in range(1, len(self.column_ss.pages) + 1):
            t[f"e_{r}"] = self.column_ss.e(r)
        return t

    def e(self, r: int, orientation: str = "column") -> int:
        ss = self.column_ss if orientation == "column" else self.row_ss
        return ss.e(r)

    def table(self, name: str) -> CohomologyTable:
        return {
            "delbar": self.h_delbar,
            "del": self.h_del,
            "BC": self.h_bc,
            "A": self.h_a,
            "dR": self.b,
            "kerdc": self.kerdc,
            "AmodImdc": self.amodimdc,
        }[name]

    def to_json(self) -> dict:
        bd = lambda t: {bidegree_key(k): v for k, v in sorted(t.dims.items())}
        kd = lambda t: {str(k): v for k, v in sorted(t.dims.items())}
        rb: dict = {}
        for (k, p, q), m in sorted(self.b_refined.items()):
            rb.setdefault(str(k), {})[bidegree_key((p, q))] = m

        def pages(ss):
            return {
                "pages": [
                    {
                        "r": r,
                        "dims": {bidegree_key(k): v for k, v in sorted(dims.items())},
                        "d_ranks": {bidegree_key(k): v for k, v in sorted(dr.items())},
                    }
                    for r, (dims, dr) in enumerate(ss.pages, 1)
                ],
                "stabilized_at": ss.stabilized_at,
            }

        maps = {}
        for name, m in self.maps.items():
            maps[name] = {(bidegree_key(k) if isinstance(k, tuple) else str(k)): v for k, v in sorted(m.items())}
        doc = {
            "origin": self.origin,
            "h_delbar": bd(self.h_delbar),
            "h_del": bd(self.h_del),
            "h_bc": bd(self.h_bc),
            "h_a": bd(self.h_a),
            "b": kd(self.b),
            "b_refined": rb,
            "e_pages": {"column": pages(self.column_ss), "row": pages(self.row_ss)},
            "dc": {"kerdc": kd(self.kerdc), "a_mod_imdc": kd(self.amodimdc)},
            "maps": maps,
            "totals": self.totals,
        }
        if self.reps:
            from .scalars import format_scalar

            doc["reps"] = {
                fname: {
                    (bidegree_key(k) if isinstance(k, tuple) else str(k)): [[format_scalar(x) for x in v] for v in vs]
                    for k, vs in sorted(tab.items())
                }
                for fname, tab in self.reps.items()
            }
        return doc

    def to_text(self) -> str:
        lines = []
        if self.origin:
            lines.append(f"# {self.origin}")
        for title, t in (
            ("h_delbar", self.h_delbar),
            ("h_del", self.h_del),
            ("h_bc", self.h_bc),
            ("h_a", self.h_a),
        ):
            lines.append(f"{title} (total {t.total})")
            lines.extend(f"  {p},{q}: {v}" for (p, q), v in sorted(t.dims.items()))
        for title, t in (("b", self.b), ("h_kerdc", self.kerdc), ("h_amodimdc", self.amodimdc)):
            lines.append(f"{title} (total {t.total})")
            lines.extend(f"  {k}: {v}" for k, v in sorted(t.dims.items()))
        lines.append("b_refined")
        lines.extend(f"  b_{k}^{{{p},{q}}} = {m}" for (k, p, q), m in sorted(self.b_refined.items()))
        for ss in (self.column_ss, self.row_ss):
            st = ss.stabilized_at if ss.stabilized else "not stabilized"
            lines.append(f"{ss.orientation} spectral sequence (stable at page {st})")
            for r, (dims, dr) in enumerate(ss.pages, 1):
                lines.append(f"  e_{r} = {sum(dims.values())}")
                lines.extend(f"    d_{r} out of {p},{q}: rank {v}" for (p, q), v in sorted(dr.items()))
        lines.append("induced maps")
        for name, m in self.maps.items():
            items = ", ".join(
                f"{bidegree_key(k) if isinstance(k, tuple) else k}:{v}" for k, v in sorted(m.items())
            )
            lines.append(f"  {name}: {items or '0'}")
        lines.append("totals")
        lines.extend(f"  {k} = {v}" for k, v in self.totals.items())
        return "\n".join(lines) + "\n"


def cohomology_report(A: Bicomplex, reps: bool = False, check: bool = True) -> Report:
    _require_valid(A, check)
    rb = refined_betti(A, check=False)
    kerdc, amod = dc_cohomologies(A, check=False)
    tabs = {
        "delbar": column_cohomology(A, reps, False),
        "del": row_cohomology(A, reps, False),
        "BC": bott_chern(A, reps, False),
        "A": aeppli(A, reps, False),
        "dR": de_rham(A, reps, False),
    }
    rep = {k: t.reps for k, t in tabs.items()} if reps else {}
    return Report(
        h_delbar=tabs["delbar"],
        h_del=tabs["del"],
        h_bc=tabs["BC"],
        h_a=tabs["A"],
        b=tabs["dR"],
        b_refined=rb,
        column_ss=frolicher(A, "column", check=False, rb=rb),
        row_ss=frolicher(A, "row", check=False, rb=rb),
        kerdc=kerdc,
        amodimdc=amod,
        maps=induced_map_ranks(A),
        origin=A.origin,
        reps=rep,
    )
