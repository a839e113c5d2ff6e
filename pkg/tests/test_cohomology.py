import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblcomplex.bicomplex import RandomProfile, make_square, make_zigzag, random_bicomplex
from dblcomplex.cohomology import (
    aeppli,
    bott_chern,
    cohomology_report,
    column_cohomology,
    de_rham,
    frolicher,
    induced_map_ranks,
    refined_betti,
    row_cohomology,
)
from dblcomplex.shapes import ZigzagShape, shapes_in_box
from oracles import aeppli_dims, betti, bott_chern_dims, dolbeault_dims
from conftest import model

seeds = st.integers(0, 10**6)
mixed = RandomProfile.named("mixed")


@given(seeds)
def test_dims_match_sympy_oracle(seed):
    A, _ = random_bicomplex(seed, mixed)
    assert column_cohomology(A).nonzero() == dolbeault_dims(A)
    assert bott_chern(A).nonzero() == bott_chern_dims(A)
    assert aeppli(A).nonzero() == aeppli_dims(A)
    assert de_rham(A).nonzero() == betti(A)


@pytest.mark.parametrize("name", ["torus1", "torus2", "kodaira_thurston"])
def test_fixture_dims_match_oracle(name):
    A = model(name)
    assert column_cohomology(A).nonzero() == dolbeault_dims(A)
    assert bott_chern(A).nonzero() == bott_chern_dims(A)
    assert de_rham(A).nonzero() == betti(A)


def test_square_is_invisible():
    S = make_square(0, 0)
    for f in (column_cohomology, row_cohomology, bott_chern, aeppli, de_rham):
        assert f(S).total == 0
    assert refined_betti(S) == {}


def test_dot_is_seen_by_everything():
    D = make_zigzag(ZigzagShape.dot(1, 2))
    for f in (column_cohomology, row_cohomology, bott_chern, aeppli):
        assert f(D).nonzero() == {(1, 2): 1}
    assert de_rham(D).nonzero() == {3: 1}
    assert refined_betti(D) == {(3, 1, 2): 1}


def test_line_shapes():
    # horizontal line (0,0) -> (1,0): only BC at the target and A at the source survive
    L = make_zigzag(ZigzagShape.evenh(0, 0, 1))
    assert L.cells.keys() == {(0, 0), (1, 0)}
    assert bott_chern(L).nonzero() == {(1, 0): 1}
    assert aeppli(L).nonzero() == {(0, 0): 1}
    assert column_cohomology(L).nonzero() == {(0, 0): 1, (1, 0): 1}
    assert row_cohomology(L).total == 0
    assert de_rham(L).total == 0


@pytest.mark.parametrize("z", [z for z in shapes_in_box(3) if z.is_odd and z.length > 1])
def test_odd_shapes_have_one_de_rham_class(z):
    A = make_zigzag(z)
    k = z.cells()[0][0] + z.cells()[0][1]
    assert de_rham(A).nonzero() == {k: 1}
    assert sum(refined_betti(A).values()) == 1


def test_iwasawa_literature_numbers(iwasawa):
    assert de_rham(iwasawa).nonzero() == {0: 1, 1: 4, 2: 8, 3: 10, 4: 8, 5: 4, 6: 1}
    d = column_cohomology(iwasawa)
    assert d[(1, 0)] == 3 and d[(0, 1)] == 2 and d.total == 48
    bc = bott_chern(iwasawa)
    assert (bc[(1, 0)], bc[(0, 1)], bc[(1, 1)], bc[(2, 0)], bc[(2, 2)]) == (2, 2, 4, 3, 8)
    assert bc.total == 48


def test_iwasawa_matches_oracle(iwasawa):
    assert column_cohomology(iwasawa).nonzero() == dolbeault_dims(iwasawa)
    assert bott_chern(iwasawa).nonzero() == bott_chern_dims(iwasawa)
    assert aeppli(iwasawa).nonzero() == aeppli_dims(iwasawa)


def test_iwasawa_frolicher_does_not_degenerate_at_e1(iwasawa):
    ss = frolicher(iwasawa)
    assert ss.degenerates_at() == 2
    assert any(r == 1 for r, _, _ in ss.nonzero_differentials())
    assert ss.e(1) > ss.e(2) == de_rham(iwasawa).total


@given(seeds)
def test_frolicher_abuts_to_de_rham(seed):
    A, _ = random_bicomplex(seed, mixed)
    b = de_rham(A).total
    for orientation in ("column", "row"):
        ss = frolicher(A, orientation)
        assert ss.e(1) == (column_cohomology(A) if orientation == "column" else row_cohomology(A)).total
        assert ss.e(len(ss.pages) + 3) == b
        es = [ss.e(r) for r in range(1, len(ss.pages) + 1)]
        assert es == sorted(es, reverse=True)


@given(seeds)
def test_refined_betti_sums_to_betti(seed):
    A, _ = random_bicomplex(seed, mixed)
    rb = refined_betti(A)
    per_k: dict = {}
    for (k, _, _), m in rb.items():
        per_k[k] = per_k.get(k, 0) + m
    assert per_k == de_rham(A).nonzero()


def test_frolicher_argument_checks():
    D = make_zigzag(ZigzagShape.dot(0, 0))
    with pytest.raises(ValueError):
        frolicher(D, "diagonal")
    with pytest.raises(ValueError):
        frolicher(D, max_page=0)


def test_report_totals_and_json(iwasawa):
    rep = cohomology_report(iwasawa)
    t = rep.totals
    assert t["b"] == 36 and t["h_bc"] == 48 and t["h_delbar"] == 48
    assert t["h_a"] == t["h_bc"]
    doc = rep.to_json()
    assert doc["totals"]["b"] == 36
    assert doc["h_delbar"]["1,0"] == 3 and doc["h_delbar"]["0,1"] == 2
    assert "h_bc (total 48)" in rep.to_text()


def test_map_ranks_on_dot_and_line():
    D = make_zigzag(ZigzagShape.dot(0, 0))
    m = induced_map_ranks(D)
    assert all(m[k] for k in m)
    L = make_zigzag(ZigzagShape.evenh(0, 0, 1))
    m = induced_map_ranks(L)
    assert m["bc_delbar"] == {(1, 0): 1}
    assert m["bc_del"] == {}


@given(seeds)
def test_dc_cohomologies_are_dual(seed):
    # H(ker d^c) of A matches H(A/im d^c) of the dual complex, degree k <-> 2n - k
    from dblcomplex.bicomplex import dual
    from dblcomplex.cohomology import dc_cohomologies

    A, _ = random_bicomplex(seed, mixed)
    n = 3
    kd, _ = dc_cohomologies(A)
    _, qd = dc_cohomologies(dual(A, n))
    assert {2 * n - k: v for k, v in kd.nonzero().items()} == qd.nonzero()


def test_dc_on_small_shapes():
    from dblcomplex.cohomology import dc_cohomologies

    kd, qd = dc_cohomologies(make_zigzag(ZigzagShape.dot(1, 0)))
    assert kd.nonzero() == qd.nonzero() == {1: 1}
    kd, qd = dc_cohomologies(make_square(0, 0))
    assert kd.total == qd.total == 0
    # three-cell hook: ker d^c = <a + c, u> with d(a + c) = 2u, A/im d^c = <a, c> closed
    kd, qd = dc_cohomologies(make_zigzag(ZigzagShape.oddtop(0, 0, 1)))
    assert kd.total == 0 and qd.nonzero() == {1: 2}
