from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblcomplex.bicomplex import (
    Bicomplex,
    FormatError,
    InvalidBicomplex,
    RandomProfile,
    basis_change,
    blowup_model,
    conjugate,
    direct_sum,
    dual,
    make_square,
    make_zigzag,
    random_bicomplex,
    read_bicomplex,
    shift,
    tensor,
    validate,
    write_bicomplex,
)
from dblcomplex.cohomology import column_cohomology, de_rham
from dblcomplex.linalg import Matrix
from dblcomplex.shapes import MultiplicityTable, ZigzagShape
from dblcomplex.zigzag import multiplicities
from conftest import model

seeds = st.integers(0, 10**6)
small = RandomProfile.named("small")


def test_square_is_valid_and_anticommutes():
    S = make_square(1, 2)
    assert validate(S) == []
    assert S.total_dim == 4
    # ∂∂̄ + ∂̄∂ = 0 around the square
    lhs = S.d1((1, 3)) @ S.d2((1, 2))
    rhs = S.d2((2, 2)) @ S.d1((1, 2))
    assert (lhs + rhs).is_zero() and not lhs.is_zero()


def test_validate_reports_broken_identity():
    one = Matrix([[1]])
    cells = {(0, 0): ("a",), (1, 0): ("b",), (0, 1): ("c",), (1, 1): ("d",)}
    # commuting square instead of anticommuting
    B = Bicomplex(cells, {(0, 0): one, (0, 1): one}, {(0, 0): one, (1, 0): one})
    bad = validate(B)
    assert bad and any("(0, 0)" in str(v) for v in bad)
    with pytest.raises(InvalidBicomplex):
        read_bicomplex(write_bicomplex(B))


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        Bicomplex({(0, 0): ("a",), (1, 0): ("b", "c")}, {(0, 0): Matrix([[1]])})


@given(seeds)
def test_text_roundtrip_random(seed):
    A, _ = random_bicomplex(seed, small)
    B = read_bicomplex(write_bicomplex(A))
    assert B.cells == A.cells and B.del_ == A.del_ and B.delbar == A.delbar


def test_text_roundtrip_with_structure(iwasawa):
    B = read_bicomplex(write_bicomplex(iwasawa))
    assert B.mult == iwasawa.mult
    assert B.real == iwasawa.real
    assert B.amb_dim == 3 and B.origin == iwasawa.origin
    assert validate(B) == []


@pytest.mark.parametrize(
    "text,line",
    [
        ("cell 0 0 1 a\n", 1),
        ("bicomplex\ncell 0 0 2 a\n", 2),
        ("bicomplex\ncell 0 0 1 a\ncell 1 0 1 b\ndel 0 0 [1 2]\n", 4),
        ("bicomplex\ncell 0 0 1 a\nfrobnicate\n", 3),
    ],
)
def test_format_errors_carry_line(text, line):
    with pytest.raises(FormatError) as e:
        read_bicomplex(text)
    assert e.value.lineno == line


@given(seeds, seeds)
def test_direct_sum_adds_tables(s1, s2):
    A, TA = random_bicomplex(s1, small)
    B, TB = random_bicomplex(s2, small)
    S = direct_sum(A, B)
    assert validate(S) == []
    assert multiplicities(S) == TA + TB


@given(seeds)
def test_conjugate_and_dual_are_involutions(seed):
    A, T = random_bicomplex(seed, small)
    assert multiplicities(conjugate(conjugate(A))) == T
    assert multiplicities(conjugate(A)) == T.sigma()
    assert multiplicities(dual(dual(A, 3), 3)) == T
    assert validate(dual(A, 3)) == []


def test_dual_of_dot_and_square():
    D = dual(make_zigzag(ZigzagShape.dot(0, 1)), 2)
    assert list(D.cells) == [(2, 1)]
    assert multiplicities(dual(make_square(0, 0), 2)) == MultiplicityTable({}, {(1, 1): 1})


@given(seeds, st.integers(-2, 2))
def test_shift_moves_table(seed, i):
    A, T = random_bicomplex(seed, small)
    assert multiplicities(shift(A, i)) == T.shifted(i)


def _convolve(a: dict, b: dict) -> dict:
    out: Counter = Counter()
    for k1, x in a.items():
        for k2, y in b.items():
            key = (k1[0] + k2[0], k1[1] + k2[1]) if isinstance(k1, tuple) else k1 + k2
            out[key] += x * y
    return {k: v for k, v in out.items() if v}


@given(seeds, seeds)
def test_tensor_kunneth(s1, s2):
    # Künneth over a field for column and total cohomology
    A, _ = random_bicomplex(s1, small)
    B, _ = random_bicomplex(s2, small)
    P = tensor(A, B)
    assert validate(P) == []
    assert column_cohomology(P).dims == _convolve(column_cohomology(A).dims, column_cohomology(B).dims)
    assert de_rham(P).dims == _convolve(de_rham(A).dims, de_rham(B).dims)


def test_tensor_of_models_is_multiplicative():
    T1 = model("torus1")
    P = tensor(T1, T1)
    assert validate(P) == []
    assert P.total_dim == 16


def test_basis_change_rejects_singular():
    A = make_zigzag(ZigzagShape.dot(0, 0))
    with pytest.raises(ValueError):
        basis_change(A, {(0, 0): Matrix([[0]])})
    with pytest.raises(ValueError):
        basis_change(A, {(0, 0): Matrix([[1, 0], [0, 1]])})


def test_basis_change_transports_structure(iwasawa):
    g = {pq: Matrix.identity(iwasawa.dim(pq)).scale(2) for pq in iwasawa.cells}
    B = basis_change(iwasawa, g)
    assert validate(B) == []
    assert multiplicities(B) == multiplicities(iwasawa)


def test_blowup_requires_codimension_two():
    A = make_zigzag(ZigzagShape.dot(0, 0))
    with pytest.raises(ValueError):
        blowup_model(A, A, 1)


@given(seeds)
def test_random_generator_is_deterministic(seed):
    A1, T1 = random_bicomplex(seed)
    A2, T2 = random_bicomplex(seed)
    assert T1 == T2 and A1.del_ == A2.del_ and A1.delbar == A2.delbar


def test_multiplicative_validation(iwasawa):
    assert validate(iwasawa) == []
    # break graded commutativity of one product
    mult = dict(iwasawa.mult)
    key = next(k for k in mult if k[0] != k[1])
    mult[key] = {i: -c for i, c in mult[key].items()} if mult[key] else mult[key]
    broken = Bicomplex(iwasawa.cells, iwasawa.del_, iwasawa.delbar, mult, iwasawa.real, iwasawa.amb_dim)
    assert validate(broken)
