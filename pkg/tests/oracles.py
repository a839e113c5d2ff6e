"""Independent references: sympy linear algebra and characteristic classes of
products of projective spaces.  Nothing here calls the package's own solvers."""
from __future__ import annotations


import sympy as sp

from dblcomplex.linalg import Matrix


def to_sympy(M: Matrix) -> sp.Matrix:
    if M.nrows == 0 or M.ncols == 0:
        return sp.zeros(M.nrows, M.ncols)
    return sp.Matrix(
        [[sp.Rational(int(x.re.numerator), int(x.re.denominator)) + sp.I * sp.Rational(int(x.im.numerator), int(x.im.denominator)) for x in r] for r in M.rows]
    )


def srank(M: Matrix) -> int:
    S = to_sympy(M)
    return 0 if 0 in S.shape else S.rank()


def _stack_rank(*ms: Matrix) -> int:
    ms = [to_sympy(m) for m in ms if m.nrows and m.ncols]
    if not ms:
        return 0
    return sp.Matrix.vstack(*ms).rank()


def _side_rank(*ms: Matrix) -> int:
    ms = [to_sympy(m) for m in ms if m.nrows and m.ncols]
    if not ms:
        return 0
    return sp.Matrix.hstack(*ms).rank()


def dolbeault_dims(A) -> dict:
    out = {}
    for p, q in A.cells:
        d = A.dim((p, q)) - srank(A.d2((p, q))) - srank(A.d2((p, q - 1)))
        if d:
            out[(p, q)] = d
    return out


def bott_chern_dims(A) -> dict:
    out = {}
    for p, q in A.cells:
        dd = A.d1((p - 1, q)) @ A.d2((p - 1, q - 1))
        d = A.dim((p, q)) - _stack_rank(A.d1((p, q)), A.d2((p, q))) - srank(dd)
        if d:
            out[(p, q)] = d
    return out


def aeppli_dims(A) -> dict:
    out = {}
    for p, q in A.cells:
        dd = A.d1((p, q + 1)) @ A.d2((p, q))
        d = A.dim((p, q)) - srank(dd) - _side_rank(A.d1((p - 1, q)), A.d2((p, q - 1)))
        if d:
            out[(p, q)] = d
    return out


def betti(A) -> dict:
    out = {}
    for k in sorted(set(A.degrees)):
        d = A.degree_dim(k) - srank(A.total_d(k)) - srank(A.total_d(k - 1))
        if d:
            out[k] = d
    return out


# -- characteristic numbers of products of complex projective spaces ------------


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def projective_product_numbers(dims: tuple[int, ...]):
    """Chern and Pontryagin numbers of CP^{n_1} x ... x CP^{n_k}.

    Total Chern class Π (1+h_i)^{n_i+1}, total Pontryagin class Π (1+h_i^2)^{n_i+1},
    evaluated on the fundamental class (coefficient of Π h_i^{n_i}).
    """
    hs = sp.symbols(f"h0:{len(dims)}")
    ideal = dict(zip(hs, dims))

    def trunc(expr):
        poly = sp.Poly(sp.expand(expr), *hs)
        return sum(
            (c * sp.Mul(*[h**e for h, e in zip(hs, mon)]) for mon, c in poly.terms() if all(e <= n for e, n in zip(mon, dims))),
            sp.Integer(0),
        )

    def evaluate(expr):
        poly = sp.Poly(sp.expand(trunc(expr)), *hs)
        return int(sum(c for mon, c in poly.terms() if tuple(mon) == tuple(dims)))

    def graded(total, weight):
        poly = sp.Poly(sp.expand(total), *hs)
        parts: dict = {}
        for mon, c in poly.terms():
            if any(e > n for e, n in zip(mon, dims)):
                continue
            deg = sum(mon)
            if deg % weight:
                continue
            parts[deg // weight] = parts.get(deg // weight, 0) + c * sp.Mul(*[h**e for h, e in zip(hs, mon)])
        return parts

    n = sum(dims)
    c = graded(sp.Mul(*[(1 + h) ** (m + 1) for h, m in ideal.items()]), 1)
    p = graded(sp.Mul(*[(1 + h**2) ** (m + 1) for h, m in ideal.items()]), 2)
    chern = {pt: evaluate(sp.Mul(*[c.get(k, 0) for k in pt])) for pt in _partitions(n)}
    pont = None
    if n % 2 == 0:
        pont = {pt: evaluate(sp.Mul(*[p.get(k, 0) for k in pt])) for pt in _partitions(n // 2)}
    return chern, pont


def projective_products(total_complex_dim: int):
    """All multisets of positive dimensions summing to the given complex dimension."""
    return list(_partitions(total_complex_dim))
