import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblcomplex.linalg import (
    Matrix,
    NotASubspace,
    in_span,
    intersect,
    inverse,
    kernel_basis,
    quotient_basis,
    rank,
    rref,
    solve,
    span_basis,
    span_rank,
)
from dblcomplex.scalars import ONE, ZERO, Scalar
from oracles import srank

entries = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2) | st.just(0))
real_entries = st.builds(Scalar, st.integers(-3, 3))


@st.composite
def matrices(draw, max_dim=5, elements=entries):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return Matrix([[draw(elements) for _ in range(c)] for _ in range(r)])


@given(matrices() | matrices(elements=real_entries))
def test_rank_matches_sympy(M):
    assert rank(M) == srank(M)


@given(matrices())
def test_kernel_is_kernel_and_has_right_size(M):
    K = kernel_basis(M)
    assert len(K) == M.ncols - rank(M)
    for v in K:
        assert all(x == ZERO for x in M.apply(v))
    assert span_rank(K, M.ncols) == len(K) if K else True


@given(matrices())
def test_rref_is_idempotent(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert len(piv) == rank(M)


@given(matrices(), st.data())
def test_solve_consistent_systems(M, data):
    x = [data.draw(entries) for _ in range(M.ncols)]
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None
    assert tuple(M.apply(y)) == tuple(b)


def test_solve_inconsistent():
    M = Matrix([[1, 0], [0, 0]])
    assert solve(M, (0, 1)) is None


@given(matrices(max_dim=4), matrices(max_dim=4))
def test_intersection_dimension(A, B):
    n = 4
    V = [tuple(list(c) + [ZERO] * (n - len(c))) for c in A.columns()]
    W = [tuple(list(c) + [ZERO] * (n - len(c))) for c in B.columns()]
    dv, dw = span_rank(V, n), span_rank(W, n)
    dsum = span_rank(V + W, n)
    assert len(intersect(V, W, n)) == dv + dw - dsum
    for u in intersect(V, W, n):
        assert in_span(V, u) and in_span(W, u)


@given(matrices(max_dim=4))
def test_quotient_basis_complements(M):
    n = M.nrows
    cols = M.columns()
    W = cols[: len(cols) // 2]
    Q = quotient_basis(cols, W, n)
    assert len(Q) == span_rank(cols, n) - (span_rank(W, n) if W else 0)
    assert span_rank(list(Q) + W, n) == span_rank(cols, n)


def test_quotient_requires_subspace():
    with pytest.raises(NotASubspace):
        quotient_basis([(ONE, ZERO)], [(ZERO, ONE)], 2)


@given(matrices(max_dim=4))
def test_inverse(M):
    if M.nrows != M.ncols:
        return
    if rank(M) < M.nrows:
        with pytest.raises(ValueError):
            inverse(M)
    else:
        assert inverse(M) @ M == Matrix.identity(M.nrows)


def test_span_basis_canonical():
    # two different spanning sets of the same subspace give the same basis
    a = [(1, 1, 0), (0, 1, 1)]
    b = [(1, 2, 1), (1, 0, -1)]
    assert span_basis(a, 3) == span_basis(b, 3)
