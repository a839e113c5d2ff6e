import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dblcomplex.bicomplex import make_zigzag
from dblcomplex.ce import de_rham_model
from dblcomplex.massey import (
    ABCMassey,
    ClassicalMassey,
    MasseyError,
    NotClosed,
    ProductObstruction,
    abc_massey,
    element,
    random_defined_triples,
    triple_massey,
)
from dblcomplex.shapes import ZigzagShape
from conftest import load_cdga, model


@pytest.fixture(scope="module")
def heis():
    return de_rham_model(load_cdga("heisenberg"))


def test_heisenberg_triple_is_nontrivial(heis):
    # by hand: e1e1 = 0 so x = 0; e1e2 = d e3 so y = e3; the product is [e1 e3],
    # a nonzero class, and e1·H^1 + H^1·e2 = span(e1e2) is exact
    e1, e2 = element(heis, {"e1": 1}), element(heis, {"e2": 1})
    res = triple_massey(heis, e1, e1, e2)
    assert res.degree == 2
    assert res.indeterminacy == ()
    assert not res.is_trivial
    assert res.representative == element(heis, {"e1*e3": 1})
    assert "NONTRIVIAL" in res.summary()


def test_heisenberg_second_triple(heis):
    # x = e3, y = 0: the product is -(-1) e3 e2 = -[e2 e3]
    e1, e2 = element(heis, {"e1": 1}), element(heis, {"e2": 1})
    res = triple_massey(heis, e1, e2, e2)
    assert not res.is_trivial
    assert res.representative == element(heis, {"e2*e3": -1})


def test_linearity_in_first_slot(heis):
    e1, e2 = element(heis, {"e1": 1}), element(heis, {"e2": 1})
    one = triple_massey(heis, e1, e1, e2)
    three = triple_massey(heis, element(heis, {"e1": 3}), e1, e2)
    assert three.coords == tuple(3 * c for c in one.coords)


def test_exact_middle_class_is_trivial(heis):
    # b = d e3 is exact: ab and bc vanish in degree 3 and the product is zero
    e1, e2 = element(heis, {"e1": 1}), element(heis, {"e2": 1})
    b = element(heis, {"e1*e2": 1})
    res = triple_massey(heis, e1, b, e2)
    assert res.is_trivial


def test_errors(heis):
    e1, e3 = element(heis, {"e1": 1}), element(heis, {"e3": 1})
    with pytest.raises(NotClosed):
        ClassicalMassey(heis, e1, e3, e1)
    with pytest.raises(MasseyError):
        ClassicalMassey(heis, {}, e1, e1)
    with pytest.raises(KeyError):
        element(heis, {"e9": 1})
    with pytest.raises(MasseyError):
        ClassicalMassey(make_zigzag(ZigzagShape.dot(0, 0)), {}, {}, {})
    T = model("torus2")
    p1, p2 = element(T, {"phi1": 1}), element(T, {"phi2": 1})
    with pytest.raises(ProductObstruction) as e:
        ClassicalMassey(T, p1, p2, p1)
    assert e.value.witness


def test_supplied_primitive_is_checked(heis):
    e1, e2 = element(heis, {"e1": 1}), element(heis, {"e2": 1})
    prob = ClassicalMassey(heis, e1, e1, e2)
    with pytest.raises(MasseyError):
        prob.evaluate(y=element(heis, {"e2": 1}))
    # y = e3 + e1 is another valid primitive
    other = prob.evaluate(y=element(heis, {"e3": 1, "e1": 1}))
    assert other.coords == prob.evaluate().coords


@pytest.mark.parametrize("name,kind", [("iwasawa", "classical"), ("kodaira_thurston", "classical"), ("iwasawa", "abc")])
def test_resampling_never_changes_triviality(name, kind):
    A = model(name)
    probs = random_defined_triples(A, kind, seed=7, count=6)
    assert probs
    rng = random.Random(1)
    for prob in probs:
        base = prob.evaluate()
        for _ in range(15):
            x, y = prob.resample(rng)
            assert prob.evaluate(x, y).is_trivial == base.is_trivial


def test_abc_products_on_iwasawa_include_nontrivial(iwasawa):
    probs = random_defined_triples(iwasawa, "abc", seed=0, count=20)
    results = [p.evaluate() for p in probs]
    assert any(not r.is_trivial for r in results)
    assert all(r.kind == "abc" for r in results)


def test_abc_representative_is_ddbar_closed(iwasawa):
    for prob in random_defined_triples(iwasawa, "abc", seed=3, count=5):
        rep = prob.evaluate().representative
        assert not iwasawa.apply_sparse("del", iwasawa.apply_sparse("delbar", rep))


def test_abc_rejects_non_bc_closed(iwasawa):
    p3 = element(iwasawa, {"phi3": 1})
    p1 = element(iwasawa, {"phi1": 1})
    with pytest.raises(NotClosed):
        abc_massey(iwasawa, p1, p3, p1)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_resampled_primitives_are_valid(seed):
    A = model("iwasawa")
    probs = random_defined_triples(A, "classical", seed=seed, count=1)
    if not probs:
        return
    prob = probs[0]
    x, y = prob.resample(random.Random(seed))
    assert prob.check_primitive(x, prob.ab) and prob.check_primitive(y, prob.bc)


def test_sampler_rejects_unknown_kind(iwasawa):
    with pytest.raises(ValueError):
        random_defined_triples(iwasawa, "quadruple", 0, 1)


def test_abc_class_type(iwasawa):
    probs = random_defined_triples(iwasawa, "abc", seed=0, count=1)
    assert isinstance(probs[0], ABCMassey)
