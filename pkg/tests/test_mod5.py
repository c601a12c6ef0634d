import itertools

import pytest

from chronorefine.mod5 import (
    GROUP,
    abstract_coincident,
    abstract_generators,
    abstract_precedes,
    concrete_coincident,
    concrete_generators,
    concrete_precedes,
    euclid,
    mod5_document,
)
from chronorefine.order import check_spo, structure
from chronorefine.refinement import check_refinement


def extension(n, coincident, precedes):
    pairs = list(itertools.product(range(n), repeat=2))
    return {p for p in pairs if coincident(*p)}, {p for p in pairs if precedes(*p)}


def test_euclid():
    assert euclid(0) == (0, 0)
    assert euclid(13) == (2, 3)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_closure_equals_formula_extension(k):
    n = GROUP * k
    for gens, coin, prec in (
        (abstract_generators(k), abstract_coincident, abstract_precedes),
        (concrete_generators(k), concrete_coincident, concrete_precedes),
    ):
        s = structure(n, *gens)
        eq, pr = extension(n, coin, prec)
        assert set(s.coincidence.pairs()) == eq
        assert set(s.precedence.pairs()) == pr
        assert check_spo(s).holds


def test_k1_concrete_order():
    s = structure(5, *concrete_generators(1))
    assert s.classes == (frozenset({0, 1}), frozenset({2}), frozenset({3}), frozenset({4}))
    assert set(s.precedence.pairs()) == {
        (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)
    }


def test_k2_generators():
    a_coin, a_prec = abstract_generators(2)
    assert a_prec == {(0, 5)}
    assert a_coin == {(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (5, 7), (5, 8), (5, 9)}
    c_coin, c_prec = concrete_generators(2)
    assert c_coin == {(0, 1), (5, 6)}
    assert c_prec == {(1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9)}


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_concrete_refines_abstract(k):
    doc = mod5_document(k)
    assert check_refinement(doc.structure("concrete"), doc.structure("abstract")).holds


def test_document_shape():
    doc = mod5_document(2)
    assert doc.universe == 10
    assert doc.clocks["abs_stack"].ticks == frozenset({2, 7})
    assert doc.level_of("conc_store") == "concrete"
    assert len(doc.claims) == 9


def test_rejects_empty_generator():
    for bad in (0, -1, True):
        with pytest.raises(ValueError):
            mod5_document(bad)
