import pytest

from dblcomplex.ce import (
    CdgaParseError,
    PreconditionError,
    check_integrability,
    check_jacobi,
    de_rham_model,
    exterior_d,
    format_cdga,
    invariant_bicomplex,
    parse_cdga,
    to_real,
    volume_functional,
    wedge,
)
from dblcomplex.cohomology import column_cohomology, de_rham
from dblcomplex.scalars import Scalar
from dblcomplex.zigzag import multiplicities
from conftest import load_cdga, model

ONE = Scalar(1, 0)


def test_wedge_sign_and_square():
    a, b = {(0,): ONE}, {(1,): ONE}
    assert wedge(a, b) == {(0, 1): ONE}
    assert wedge(b, a) == {(0, 1): -ONE}
    assert wedge(a, a) == {}


def test_exterior_d_leibniz():
    P = load_cdga("heisenberg")
    dg = P.dgen()
    e1, e3 = {(0,): ONE}, {(2,): ONE}
    # d(e1 e3) = -e1 d(e3) = -e1 e1 e2 = 0
    assert exterior_d(wedge(e1, e3), dg) == {}
    assert exterior_d(e3, dg) == {(0, 1): ONE}


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", 1, 1),
        ("cdga quaternionic\n", 1, 1),
        ("cdga real\nd x = y\n", 2, 1),
        ("cdga real\ngenerators x y\nd z = x*y\n", 3, 3),
        ("cdga real\ngenerators x y\nd y = x*\n", 3, None),
        ("cdga real\ngenerators x x\n", 2, None),
        ("cdga real\ngenerators x y\nfoo\n", 3, 1),
        ("cdga complex\ngenerators x y\nJ x = y\n", 3, 1),
    ],
)
def test_parse_errors_locate(text, line, col):
    with pytest.raises(CdgaParseError) as e:
        parse_cdga(text)
    assert e.value.line == line
    if col is not None:
        assert e.value.col == col
    assert f"line {line}" in str(e.value)


@pytest.mark.parametrize("name", ["iwasawa", "filiform", "nil_n", "kodaira_thurston", "torus2"])
def test_format_roundtrip(name):
    P = load_cdga(name)
    Q = parse_cdga(format_cdga(P))
    assert Q.generators == P.generators and Q.d == P.d and Q.flavor == P.flavor
    assert (Q.J is None) == (P.J is None)


def test_jacobi_detects_failure():
    P = parse_cdga("cdga real\ngenerators x y z w\nd z = x*y\nd w = z*x + z*y\n")
    assert check_jacobi(P).ok
    Q = parse_cdga("cdga real\ngenerators x y z w\nd z = x*y\nd w = x*z + y*w\n")
    rep = check_jacobi(Q)
    assert not rep.ok and "w" in rep.failures


def test_filiform_integrability_witness():
    P = load_cdga("filiform")
    assert check_jacobi(P).ok
    rep = check_integrability(P)
    assert not rep.ok and rep.witness is not None
    assert "witness" in str(rep)
    with pytest.raises(PreconditionError):
        invariant_bicomplex(P)


def test_missing_structure_is_a_precondition_error():
    with pytest.raises(PreconditionError):
        invariant_bicomplex(load_cdga("nil_n"))


def test_heisenberg_de_rham():
    A = de_rham_model(load_cdga("heisenberg"))
    assert de_rham(A).nonzero() == {0: 1, 1: 2, 2: 2, 3: 1}


def test_tori_are_exterior_algebras():
    for m in (1, 2, 3):
        A = model(f"torus{m}")
        assert A.total_dim == 4**m
        T = multiplicities(A)
        assert all(z.length == 1 for z in T.zig) and not T.squares
        assert de_rham(A).total == 4**m


def test_iwasawa_dolbeault_low_degree(iwasawa):
    d = column_cohomology(iwasawa)
    assert (d[(1, 0)], d[(0, 1)]) == (3, 2)


def test_real_flavor_gives_same_table(kodaira_thurston):
    R = to_real(load_cdga("kodaira_thurston"))
    assert R.flavor == "real" and R.J is not None
    assert check_integrability(R).ok
    B = invariant_bicomplex(R)
    assert multiplicities(B) == multiplicities(kodaira_thurston)


def test_volume_functional(iwasawa):
    vol = volume_functional(iwasawa)
    assert vol.cell == (3, 3)
    top = iwasawa.embed_cell((3, 3), [ONE])
    assert vol(top) == ONE
    with pytest.raises(ValueError):
        volume_functional(de_rham_model(load_cdga("heisenberg")))
