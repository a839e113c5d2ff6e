"""Zigzag shapes, their cell sets, the two mirror involutions, and multiplicity tables."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

__all__ = ["ZigzagShape", "MultiplicityTable", "KINDS", "mirror_sigma", "mirror_tau", "shapes_in_box"]

KINDS = ("dot", "oddtop", "oddbot", "evenh", "evenv")

Bidegree = tuple[int, int]


@dataclass(frozen=True, order=True)
class ZigzagShape:
    """Isomorphism type of a bounded zigzag.

    ``size`` is ``s`` for the odd kinds, ``r`` for the even kinds and 0 for dots.

    dot(p,q)        single cell (p,q)
    oddtop(p,q,s)   lower cells (p+j, q+s-j), j=0..s, joined through upper cells
                    (p+j+1, q+s-j), j<s; de Rham class in degree p+q+s
    oddbot(p,q,s)   upper cells (p-s+j, q-j), j=0..s, fed from lower cells
                    (p-s+j, q-j-1), j<s; de Rham class in degree p+q-s
    evenh(p,q,r)    starts at (p,q) with a horizontal arrow; 2r cells; carries a
                    d_r of the column Frolicher spectral sequence out of (p,q)
    evenv(p,q,r)    transpose of evenh(q,p,r); d_r of the row spectral sequence
    """

    kind: str
    p: int
    q: int
    size: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown zigzag kind {self.kind!r}")
        if self.kind == "dot":
            if self.size != 0:
                raise ValueError("dots carry no size parameter")
        elif self.size < 1:
            raise ValueError(f"{self.kind} needs size >= 1, got {self.size}")

    # convenience constructors
    @classmethod
    def dot(cls, p: int, q: int) -> "ZigzagShape":
        return cls("dot", p, q, 0)

    @classmethod
    def oddtop(cls, p: int, q: int, s: int) -> "ZigzagShape":
        return cls("oddtop", p, q, s)

    @classmethod
    def oddbot(cls, p: int, q: int, s: int) -> "ZigzagShape":
        return cls("oddbot", p, q, s)

    @classmethod
    def evenh(cls, p: int, q: int, r: int) -> "ZigzagShape":
        return cls("evenh", p, q, r)

    @classmethod
    def evenv(cls, p: int, q: int, r: int) -> "ZigzagShape":
        return cls("evenv", p, q, r)

    @property
    def length(self) -> int:
        if self.kind == "dot":
            return 1
        if self.kind in ("oddtop", "oddbot"):
            return 2 * self.size + 1
        return 2 * self.size

    @property
    def is_odd(self) -> bool:
        return self.kind in ("dot", "oddtop", "oddbot")

    def structure(self) -> tuple[list[Bidegree], list[tuple[str, int, int]]]:
        """Cells in a fixed order and arrows ``(which, source_idx, target_idx)``.

        ``which`` is ``"del"`` (bidegree (1,0)) or ``"delbar"`` (bidegree (0,1)).
        """
        p, q, n = self.p, self.q, self.size
        if self.kind == "dot":
            return [(p, q)], []
        if self.kind == "oddtop":
            lower = [(p + j, q + n - j) for j in range(n + 1)]
            upper = [(p + j + 1, q + n - j) for j in range(n)]
            cells = lower + upper
            arrows = []
            for j in range(n):
                arrows.append(("del", j, n + 1 + j))
                arrows.append(("delbar", j + 1, n + 1 + j))
            return cells, arrows
        if self.kind == "oddbot":
            top = [(p - n + j, q - j) for j in range(n + 1)]
            src = [(p - n + j, q - j - 1) for j in range(n)]
            cells = top + src
            arrows = []
            for j in range(n):
                arrows.append(("delbar", n + 1 + j, j))
                arrows.append(("del", n + 1 + j, j + 1))
            return cells, arrows
        if self.kind == "evenh":
            cells = []
            for j in range(n):
                cells.append((p + j, q - j))
                cells.append((p + j + 1, q - j))
            arrows = []
            for j in range(n):
                arrows.append(("del", 2 * j, 2 * j + 1))
                if j + 1 < n:
                    arrows.append(("delbar", 2 * j + 2, 2 * j + 1))
            return cells, arrows
        # evenv: transpose of evenh(q, p, r)
        cells_t, arrows_t = ZigzagShape("evenh", q, p, n).structure()
        cells = [(b, a) for a, b in cells_t]
        swap = {"del": "delbar", "delbar": "del"}
        return cells, [(swap[w], s, t) for w, s, t in arrows_t]

    def cells(self) -> list[Bidegree]:
        return self.structure()[0]

    def cell_counts(self) -> Counter:
        return Counter(self.cells())

    def shifted(self, i: int, j: int | None = None) -> "ZigzagShape":
        j = i if j is None else j
        return ZigzagShape(self.kind, self.p + i, self.q + j, self.size)

    def to_text(self) -> str:
        if self.kind == "dot":
            return f"dot {self.p} {self.q}"
        return f"{self.kind} {self.p} {self.q} {self.size}"

    def __str__(self) -> str:
        if self.kind == "dot":
            return f"dot({self.p},{self.q})"
        return f"{self.kind}({self.p},{self.q},{self.size})"


def mirror_sigma(z: ZigzagShape) -> ZigzagShape:
    """Reflection across the diagonal p = q."""
    if z.kind == "evenh":
        return ZigzagShape("evenv", z.q, z.p, z.size)
    if z.kind == "evenv":
        return ZigzagShape("evenh", z.q, z.p, z.size)
    return ZigzagShape(z.kind, z.q, z.p, z.size)


def mirror_tau(z: ZigzagShape, n: int) -> ZigzagShape:
    """Reflection across the antidiagonal p + q = n, (a,b) -> (n-b, n-a), arrows reversed."""
    p, q, s = z.p, z.q, z.size
    if z.kind == "dot":
        return ZigzagShape("dot", n - q, n - p)
    if z.kind == "oddtop":
        return ZigzagShape("oddbot", n - q, n - p, s)
    if z.kind == "oddbot":
        return ZigzagShape("oddtop", n - q, n - p, s)
    if z.kind == "evenh":
        return ZigzagShape("evenv", n - q + s - 1, n - p - s, s)
    return ZigzagShape("evenh", n - q - s, n - p + s - 1, s)


def shapes_in_box(n: int, max_size: int | None = None) -> Iterator[ZigzagShape]:
    """Every zigzag shape whose cells all lie in [0, n]^2."""
    top = n + 1 if max_size is None else max_size
    for kind in KINDS:
        sizes = [0] if kind == "dot" else range(1, top + 1)
        for s in sizes:
            for p in range(-top - 1, n + top + 2):
                for q in range(-top - 1, n + top + 2):
                    z = ZigzagShape(kind, p, q, s)
                    if all(0 <= a <= n and 0 <= b <= n for a, b in z.cells()):
                        yield z


_KIND_ORDER = {"dot": 0, "evenh": 1, "evenv": 2, "oddbot": 3, "oddtop": 4}


def _shape_key(z: ZigzagShape):
    return (_KIND_ORDER[z.kind], z.p, z.q, z.size)


@dataclass(frozen=True)
class MultiplicityTable:
    """Counts of zigzag summands and of squares (keyed by bottom-left corner)."""

    zig: dict = field(default_factory=dict)
    squares: dict = field(default_factory=dict)

    def __post_init__(self):
        zig = {}
        for z, m in self.zig.items():
            if not isinstance(z, ZigzagShape):
                raise TypeError(f"table key {z!r} is not a ZigzagShape")
            if m < 0:
                raise ValueError(f"negative multiplicity for {z}")
            if m:
                zig[z] = int(m)
        sq = {}
        for pq, m in self.squares.items():
            if m < 0:
                raise ValueError(f"negative square count at {pq}")
            if m:
                sq[tuple(pq)] = int(m)
        object.__setattr__(self, "zig", zig)
        object.__setattr__(self, "squares", sq)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiplicityTable):
            return NotImplemented
        return self.zig == other.zig and self.squares == other.squares

    def __hash__(self):
        return hash((frozenset(self.zig.items()), frozenset(self.squares.items())))

    def __add__(self, other: "MultiplicityTable") -> "MultiplicityTable":
        zig = Counter(self.zig)
        zig.update(other.zig)
        sq = Counter(self.squares)
        sq.update(other.squares)
        return MultiplicityTable(dict(zig), dict(sq))

    def __getitem__(self, z: ZigzagShape) -> int:
        return self.zig.get(z, 0)

    def is_empty(self) -> bool:
        return not self.zig and not self.squares

    def shifted(self, i: int) -> "MultiplicityTable":
        return MultiplicityTable(
            {z.shifted(i): m for z, m in self.zig.items()},
            {(p + i, q + i): m for (p, q), m in self.squares.items()},
        )

    def sigma(self) -> "MultiplicityTable":
        return MultiplicityTable(
            {mirror_sigma(z): m for z, m in self.zig.items()},
            {(q, p): m for (p, q), m in self.squares.items()},
        )

    def tau(self, n: int) -> "MultiplicityTable":
        # square with corner (p,q) covers p..p+1, q..q+1; its reflection has corner (n-q-1, n-p-1)
        return MultiplicityTable(
            {mirror_tau(z, n): m for z, m in self.zig.items()},
            {(n - q - 1, n - p - 1): m for (p, q), m in self.squares.items()},
        )

    def cell_dims(self) -> Counter:
        """Dimension of each bidegree in a bicomplex with this table."""
        dims: Counter = Counter()
        for z, m in self.zig.items():
            for c in z.cells():
                dims[c] += m
        for (p, q), m in self.squares.items():
            for c in ((p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)):
                dims[c] += m
        return dims

    def zig_only(self) -> "MultiplicityTable":
        return MultiplicityTable(dict(self.zig), {})

    def sorted_items(self) -> list[tuple[str, tuple, int]]:
        out = []
        for z in sorted(self.zig, key=_shape_key):
            out.append((z.kind, (z.p, z.q) if z.kind == "dot" else (z.p, z.q, z.size), self.zig[z]))
        for pq in sorted(self.squares):
            out.append(("square", pq, self.squares[pq]))
        return out

    def to_text(self) -> str:
        lines = []
        for kind, params, m in self.sorted_items():
            lines.append(f"{kind} {' '.join(str(x) for x in params)} : {m}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> list[dict]:
        out = []
        for kind, params, m in self.sorted_items():
            out.append({"kind": kind, "params": list(params), "mult": m})
        return out

    @classmethod
    def from_text(cls, text: str) -> "MultiplicityTable":
        zig: Counter = Counter()
        sq: Counter = Counter()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise ValueError(f"line {lineno}: expected '<shape> : <count>'")
            lhs, rhs = line.split(":", 1)
            toks = lhs.split()
            try:
                m = int(rhs.strip())
                nums = [int(t) for t in toks[1:]]
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer field") from None
            kind = toks[0].lower() if toks else ""
            if kind == "square":
                if len(nums) != 2:
                    raise ValueError(f"line {lineno}: square takes p q")
                sq[tuple(nums)] += m
            elif kind == "dot":
                if len(nums) != 2:
                    raise ValueError(f"line {lineno}: dot takes p q")
                zig[ZigzagShape.dot(*nums)] += m
            elif kind in KINDS:
                if len(nums) != 3:
                    raise ValueError(f"line {lineno}: {kind} takes p q size")
                zig[ZigzagShape(kind, *nums)] += m
            else:
                raise ValueError(f"line {lineno}: unknown shape kind {toks[0] if toks else ''!r}")
        return cls(dict(zig), dict(sq))

    def __str__(self) -> str:
        return self.to_text()
