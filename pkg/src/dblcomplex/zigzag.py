"""Multiplicity tables of bicomplexes, per-shape functor profiles, reassembly and boards.

Odd zigzags are counted by refined Betti numbers, even zigzags by ranks of
Frolicher differentials, and squares by subtracting the zigzag contributions
from the cell dimensions.  The square count at a corner is cross-checked
against rank(∂∂̄) out of that corner, since zigzags carry no composable pair
of arrows and every square carries exactly one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .bicomplex import Bicomplex, InvalidBicomplex, direct_sum, make_square, make_zigzag, validate
from .cohomology import (
    FUNCTORS,
    aeppli,
    bott_chern,
    column_cohomology,
    dc_cohomologies,
    de_rham,
    frolicher,
    refined_betti,
    row_cohomology,
)
from .linalg import rank
from .shapes import MultiplicityTable, ZigzagShape, mirror_sigma, mirror_tau

__all__ = [
    "BookkeepingError",
    "ShapeFunctorProfile",
    "multiplicities",
    "shape_profile",
    "reassemble",
    "reconstruct",
    "functor_dims",
    "render_checkerboard",
    "orbits",
]


class BookkeepingError(RuntimeError):
    """Square counts inconsistent with the cell dimensions; always a bug."""


def _odd_shape(k: int, p: int, q: int) -> ZigzagShape:
    s = k - p - q
    if s == 0:
        return ZigzagShape.dot(p, q)
    if s > 0:
        return ZigzagShape.oddtop(p, q, s)
    return ZigzagShape.oddbot(p, q, -s)


def multiplicities(A: Bicomplex, check: bool = True) -> MultiplicityTable:
    if check:
        bad = validate(A, check_mult=False)
        if bad:
            raise InvalidBicomplex(bad)
    zig: Counter = Counter()
    rb = refined_betti(A, check=False)
    for (k, p, q), m in rb.items():
        zig[_odd_shape(k, p, q)] += m
    for orient, kind in (("column", "evenh"), ("row", "evenv")):
        ss = frolicher(A, orient, check=False, rb=rb)
        if not ss.stabilized:
            raise BookkeepingError(f"{orient} spectral sequence did not stabilize")
        for r, pq, m in ss.nonzero_differentials():
            zig[ZigzagShape(kind, pq[0], pq[1], r)] += m
    resid: Counter = Counter({pq: A.dim(pq) for pq in A.cells})
    for z, m in zig.items():
        for c in z.cells():
            resid[c] -= m
    squares = _solve_squares(resid)
    for pq, m in squares.items():
        p, q = pq
        r = rank(A.d1((p, q + 1)) @ A.d2(pq))
        if r != m:
            raise BookkeepingError(f"square count {m} at {pq} but rank of ∂∂̄ there is {r}")
    for pq in A.cells:
        p, q = pq
        if pq not in squares and A.dim((p + 1, q + 1)) and A.dim((p, q + 1)):
            if rank(A.d1((p, q + 1)) @ A.d2(pq)):
                raise BookkeepingError(f"∂∂̄ nonzero at {pq} but no square counted there")
    return MultiplicityTable(dict(zig), squares)


def _solve_squares(resid: Counter) -> dict:
    """Greedy solve from the minimal corner; squares at (p,q) cover p..p+1 x q..q+1."""
    sq: dict = {}
    for pq in sorted(resid):
        p, q = pq
        m = resid[pq] - sq.get((p - 1, q), 0) - sq.get((p, q - 1), 0) - sq.get((p - 1, q - 1), 0)
        if m < 0:
            raise BookkeepingError(f"negative square count at {pq}")
        if m:
            sq[pq] = m
    # every cell must be covered exactly
    cover: Counter = Counter()
    for (p, q), m in sq.items():
        for c in ((p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)):
            cover[c] += m
    for c in set(cover) | set(resid):
        if cover[c] != resid[c]:
            raise BookkeepingError(f"cell {c}: squares cover {cover[c]}, residual dimension {resid[c]}")
    return sq


@dataclass(frozen=True)
class ShapeFunctorProfile:
    shape: ZigzagShape
    dims: dict  # functor name -> {bidegree or degree: dim}


@lru_cache(maxsize=None)
def shape_profile(z: ZigzagShape) -> ShapeFunctorProfile:
    A = make_zigzag(z)
    kd, qd = dc_cohomologies(A, check=False)
    tabs = {
        "delbar": column_cohomology(A, check=False),
        "del": row_cohomology(A, check=False),
        "BC": bott_chern(A, check=False),
        "A": aeppli(A, check=False),
        "dR": de_rham(A, check=False),
        "kerdc": kd,
        "AmodImdc": qd,
    }
    return ShapeFunctorProfile(z, {k: dict(t.dims) for k, t in tabs.items()})


def functor_dims(A: Bicomplex, functor: str) -> dict:
    """Dimensions of one functor computed directly on A."""
    if functor in ("kerdc", "AmodImdc"):
        kd, qd = dc_cohomologies(A, check=False)
        return dict((kd if functor == "kerdc" else qd).dims)
    f = {
        "delbar": column_cohomology,
        "del": row_cohomology,
        "BC": bott_chern,
        "A": aeppli,
        "dR": de_rham,
    }[functor]
    return dict(f(A, check=False).dims)


def reconstruct(T: MultiplicityTable, functor: str) -> dict:
    """Σ_Z mult_Z · dims H(Z); squares contribute nothing."""
    if functor not in FUNCTORS:
        raise ValueError(f"unknown functor {functor!r}")
    out: Counter = Counter()
    for z, m in T.zig.items():
        for key, d in shape_profile(z).dims[functor].items():
            out[key] += m * d
    return {k: v for k, v in out.items() if v}


def reassemble(T: MultiplicityTable) -> Bicomplex:
    parts = []
    for kind, params, m in T.sorted_items():
        if kind == "square":
            parts.extend(make_square(*params) for _ in range(m))
        else:
            z = ZigzagShape.dot(*params) if kind == "dot" else ZigzagShape(kind, *params)
            parts.extend(make_zigzag(z) for _ in range(m))
    return direct_sum(*parts)


# -- checkerboards ----------------------------------------------------------------


def orbits(shapes, n: int) -> list[list[ZigzagShape]]:
    """Partition shapes (closed under nothing in particular) into <σ, τ> orbits, each sorted."""
    seen: set = set()
    out = []
    for z in sorted(shapes, key=_order):
        if z in seen:
            continue
        orb = {z, mirror_sigma(z), mirror_tau(z, n), mirror_sigma(mirror_tau(z, n))}
        seen |= orb
        out.append(sorted(orb, key=_order))
    return out


def _order(z: ZigzagShape):
    from .shapes import _shape_key

    return _shape_key(z)


def _board(shapes_with_weight, n: int) -> list[str]:
    size = 2 * n + 1
    grid = [["."] * size if r % 2 == 0 else [" "] * size for r in range(size)]
    for r in range(0, size, 2):
        for c in range(1, size, 2):
            grid[r][c] = " "
    count: Counter = Counter()
    for z, w in shapes_with_weight:
        cells, arrows = z.structure()
        for c in cells:
            count[c] += w
        for which, s, t in arrows:
            a, b = cells[s], cells[t]
            if which == "del":
                col, row = 2 * min(a[0], b[0]) + 1, 2 * (n - a[1])
                grid[row][col] = "-"
            else:
                col, row = 2 * a[0], 2 * (n - max(a[1], b[1])) + 1
                grid[row][col] = "|"
    for (p, q), m in count.items():
        grid[2 * (n - q)][2 * p] = str(m) if m < 10 else "*"
    return ["".join(r).rstrip() for r in grid]


def render_checkerboard(T: MultiplicityTable, n: int, mode: str = "plain") -> str:
    """ASCII board(s): digits count summands through a cell, '-' is ∂, '|' is ∂̄.

    ``plain`` overlays every zigzag (with multiplicity) on one board and lists
    the table; ``orbit`` draws one board per <σ, τ>-orbit, each member once.
    Squares are not drawn (they carry no cohomology); they appear in the legend.
    """
    if n < 0:
        raise ValueError("board size must be nonnegative")
    for z in T.zig:
        for p, q in z.cells():
            if not (0 <= p <= n and 0 <= q <= n):
                raise ValueError(f"{z} leaves the board [0,{n}]^2")
    for p, q in T.squares:
        if not (0 <= p < n and 0 <= q < n):
            raise ValueError(f"square at ({p},{q}) leaves the board [0,{n}]^2")
    if mode == "plain":
        lines = _board([(z, m) for z, m in sorted(T.zig.items(), key=lambda t: _order(t[0]))], n)
        legend = T.to_text().rstrip("\n")
        return "\n".join(lines + ([""] + legend.split("\n") if legend else [])) + "\n"
    if mode != "orbit":
        raise ValueError("mode must be 'plain' or 'orbit'")
    blocks = []
    for orb in orbits(T.zig, n):
        counts = [T[z] for z in orb]
        if len(set(counts)) == 1:
            head = f"orbit of {orb[0]} x {counts[0]}"
        else:
            head = f"orbit of {orb[0]} (asymmetric: " + ", ".join(f"{z}:{T[z]}" for z in orb) + ")"
        blocks.append("\n".join([head] + _board([(z, 1) for z in orb], n)))
    if T.squares:
        blocks.append("squares\n" + "\n".join(f"square {p} {q} : {m}" for (p, q), m in sorted(T.squares.items())))
    return "\n\n".join(blocks) + "\n"
