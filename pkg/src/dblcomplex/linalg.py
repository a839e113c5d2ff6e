"""Dense exact linear algebra over Q(i).

Vectors are tuples of :class:`Scalar`. Matrices are immutable row tuples with an
explicit shape so that 0 x n and n x 0 matrices behave.  Elimination runs on
plain ``mpq`` entries whenever a system is real, and on :class:`Scalar`
otherwise; results always come back as Scalars.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Rational, Scalar, as_scalar

Vector = tuple

__all__ = [
    "Matrix",
    "rank",
    "rref",
    "kernel_basis",
    "solve",
    "quotient_basis",
    "span_basis",
    "span_rank",
    "in_span",
    "intersect",
    "inverse",
    "column_space",
    "zero_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "is_zero_vector",
    "NotASubspace",
]


class NotASubspace(ValueError):
    pass


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rs = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rs[0])
        for r in rs:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", nrows)
        object.__setattr__(m, "ncols", ncols)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        row = (ZERO,) * ncols
        return cls._raw((row,) * nrows, nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(as_scalar(x) for x in c) for c in cols]
        return cls._raw(
            tuple(tuple(c[i] for c in cols) for i in range(nrows)), nrows, len(cols)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols} [{body}])"

    def columns(self) -> list[Vector]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)),
            self.ncols,
            self.nrows,
        )

    def conj(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(x.conj() for x in r) for r in self.rows), self.nrows, self.ncols
        )

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.nrows, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.nrows, self.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            acc = ZERO
            for j, x in nz:
                a = r[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            if not cols:
                return Matrix.zeros(self.nrows, 0)
            return Matrix.from_columns([self.apply(c) for c in cols], self.nrows)
        return self.apply(other)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix._raw(
            tuple(r + s for r, s in zip(self.rows, other.rows)),
            self.nrows,
            self.ncols + other.ncols,
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix._raw(self.rows + other.rows, self.nrows + other.nrows, self.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(tuple(rows), self.nrows * other.nrows, self.ncols * other.ncols)

    @staticmethod
    def block(blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; all blocks in a block row share ``nrows``."""
        rows: list = []
        ncols = None
        for brow in blocks:
            h = brow[0].nrows
            w = sum(b.ncols for b in brow)
            if ncols is None:
                ncols = w
            elif ncols != w:
                raise ValueError("inconsistent block widths")
            for b in brow:
                if b.nrows != h:
                    raise ValueError("inconsistent block heights")
            for i in range(h):
                rows.append(tuple(x for b in brow for x in b.rows[i]))
        return Matrix._raw(tuple(rows), len(rows), ncols or 0)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Sequence) -> Vector:
    c = as_scalar(c)
    return tuple(c * x for x in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


# -- elimination core ------------------------------------------------------


def _to_field(rows: Sequence[Sequence[Scalar]]):
    """Return rows as mutable lists over mpq when possible, else over Scalar."""
    if not all(isinstance(x, Scalar) for r in rows for x in r):
        rows = [[as_scalar(x) for x in r] for r in rows]
    real = all(x.im == 0 for r in rows for x in r)
    if real:
        return [[x.re for x in r] for r in rows], True
    return [list(r) for r in rows], False


def _from_field(x, real: bool) -> Scalar:
    return Scalar._make(x, Rational(0)) if real else x


def _rref_inplace(m: list[list], ncols: int, nlead: int | None = None) -> list[int]:
    """Reduced row echelon form in place; pivots searched in the first ``nlead`` columns."""
    if nlead is None:
        nlead = ncols
    pivots: list[int] = []
    nrows = len(m)
    r = 0
    for c in range(nlead):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            m[r] = prow
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                row = m[i]
                f = row[c]
                if f:
                    for j in nzc:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    m, real = _to_field(M.rows)
    piv = _rref_inplace(m, M.ncols)
    rows = tuple(tuple(_from_field(x, real) for x in row) for row in m[: len(piv)])
    return Matrix._raw(rows, len(piv), M.ncols), piv


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    m, _ = _to_field(M.rows)
    return len(_rref_inplace(m, M.ncols))


def kernel_basis(M: Matrix) -> list[Vector]:
    """Canonical basis of ker M: one vector per free column of the RREF."""
    n = M.ncols
    if n == 0:
        return []
    if M.nrows == 0:
        return [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    m, real = _to_field(M.rows)
    piv = _rref_inplace(m, n)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(piv):
            x = m[r][f]
            if x:
                v[c] = -_from_field(x, real)
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b: Sequence) -> Vector | None:
    """Return x with Mx = b (free variables set to zero), or None if inconsistent."""
    if len(b) != M.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.nrows} equations")
    b = tuple(as_scalar(x) for x in b)
    n = M.ncols
    aug = [r + (x,) for r, x in zip(M.rows, b)]
    if not aug:
        return zero_vector(n)
    m, real = _to_field(aug)
    piv = _rref_inplace(m, n + 1, nlead=n)
    for row in m[len(piv):]:
        if row[n]:
            return None
    x = [ZERO] * n
    for r, c in enumerate(piv):
        x[c] = _from_field(m[r][n], real)
    return tuple(x)


def span_basis(vectors: Sequence[Sequence], dim: int | None = None) -> list[Vector]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return []
    if dim is None:
        dim = len(vectors[0])
    if dim == 0:
        return []
    m, real = _to_field([tuple(v) for v in vectors])
    piv = _rref_inplace(m, dim)
    return [tuple(_from_field(x, real) for x in row) for row in m[: len(piv)]]


def span_rank(vectors: Sequence[Sequence], dim: int | None = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    if dim is None:
        dim = len(vectors[0])
    if dim == 0:
        return 0
    m, _ = _to_field([tuple(v) for v in vectors])
    return len(_rref_inplace(m, dim))


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    vectors = list(vectors)
    if not vectors:
        return False
    return span_rank(vectors + [tuple(v)]) == span_rank(vectors)


def column_space(M: Matrix) -> list[Vector]:
    return span_basis(M.columns(), M.nrows)


def _reduce(v: list, basis_rows: list[list], pivots: list[int]) -> list:
    for row, c in zip(basis_rows, pivots):
        f = v[c]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def quotient_basis(V: Sequence[Sequence], W: Sequence[Sequence], dim: int | None = None) -> list[Vector]:
    """Representatives of a basis of V/W, canonical for the pair of subspaces.

    Raises :class:`NotASubspace` when W is not contained in V.
    """
    V = [tuple(v) for v in V]
    W = [tuple(w) for w in W]
    if dim is None:
        if V:
            dim = len(V[0])
        elif W:
            dim = len(W[0])
        else:
            return []
    if dim == 0:
        return []
    rv = span_rank(V, dim) if V else 0
    if W:
        if span_rank(V + W, dim) != rv:
            raise NotASubspace("W is not contained in V")
    if not V:
        return []
    wm, wreal = _to_field(W) if W else ([], True)
    vm, vreal = _to_field(V)
    real = wreal and vreal
    if not real:
        wm = [[x if isinstance(x, Scalar) else Scalar._make(x, Rational(0)) for x in r] for r in wm]
        vm = [[x if isinstance(x, Scalar) else Scalar._make(x, Rational(0)) for x in r] for r in vm]
    wpiv = _rref_inplace(wm, dim) if wm else []
    wm = wm[: len(wpiv)]
    vpiv = _rref_inplace(vm, dim)
    vm = vm[: len(vpiv)]
    reduced = [_reduce(list(r), wm, wpiv) for r in vm]
    piv = _rref_inplace(reduced, dim)
    return [tuple(_from_field(x, real) for x in row) for row in reduced[: len(piv)]]


def intersect(V: Sequence[Sequence], W: Sequence[Sequence], dim: int) -> list[Vector]:
    """Canonical basis of span(V) ∩ span(W)."""
    V = span_basis(V, dim) if V else []
    W = span_basis(W, dim) if W else []
    if not V or not W:
        return []
    # solve sum a_i V_i - sum b_j W_j = 0
    cols = [v for v in V] + [tuple(-x for x in w) for w in W]
    M = Matrix.from_columns(cols, dim)
    ker = kernel_basis(M)
    out = []
    for k in ker:
        acc = [ZERO] * dim
        for a, v in zip(k[: len(V)], V):
            if a:
                acc = [x + a * y for x, y in zip(acc, v)]
        out.append(tuple(acc))
    return span_basis(out, dim) if out else []


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if n != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return M
    aug = [r + tuple(ONE if i == j else ZERO for j in range(n)) for i, r in enumerate(M.rows)]
    m, real = _to_field(aug)
    piv = _rref_inplace(m, 2 * n, nlead=n)
    if len(piv) != n:
        raise ValueError("matrix is singular")
    return Matrix._raw(
        tuple(tuple(_from_field(x, real) for x in row[n:]) for row in m), n, n
    )
